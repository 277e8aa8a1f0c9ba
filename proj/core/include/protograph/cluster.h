// Copyright 2026 The Protograph Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PROTOGRAPH_CLUSTER_H_
#define PROTOGRAPH_CLUSTER_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace protograph {

// Full-covariance Gaussian mixture over R^b.
struct GmmModel {
  std::vector<double> weights;             // pi_l, sums to 1
  std::vector<Eigen::VectorXd> means;      // mu_l
  std::vector<Eigen::MatrixXd> covariances;  // Sigma_l, SPD after ridge

  int num_clusters() const { return static_cast<int>(weights.size()); }
  int dim() const { return means.empty() ? 0 : static_cast<int>(means[0].size()); }
};

struct EmOptions {
  int num_clusters = 2;
  std::uint64_t seed = 0;
  double tol = 1e-6;      // relative log-likelihood change
  int max_iter = 200;
  double ridge = 1e-6;    // added to every covariance diagonal
};

struct EmResult {
  GmmModel gmm;
  Eigen::MatrixXd responsibilities;   // |points| x L, rows sum to 1
  std::vector<double> log_likelihood;  // one entry per E-step
  int iterations = 0;
  bool converged = false;
};

// Expectation-maximization with seeded k-means++ initialization followed by
// one M-step on the hard assignment. Throws std::invalid_argument when there
// are fewer points than clusters or the points have inconsistent dimension.
EmResult EmFit(std::span<const Eigen::VectorXd> points, const EmOptions& options);

// Posterior cluster probabilities for each point under `gmm`. Clusters with
// zero weight get zero responsibility.
Eigen::MatrixXd Responsibilities(const GmmModel& gmm,
                                 std::span<const Eigen::VectorXd> points);

double LogLikelihood(const GmmModel& gmm, std::span<const Eigen::VectorXd> points);

// Row-wise argmax; ties go to the lowest cluster index.
std::vector<int> Assign(const Eigen::MatrixXd& responsibilities);

// sqrt((x - mu)^T Sigma^-1 (x - mu)). Throws std::domain_error if Sigma is
// not positive definite.
double Mahalanobis(const Eigen::VectorXd& x, const Eigen::VectorXd& mean,
                   const Eigen::MatrixXd& covariance);

struct ClusterSelection {
  // members[l]: indices into the point list, ascending Mahalanobis distance to
  // mu_l under Sigma_l, ties by index; at most k entries.
  std::vector<std::vector<int>> members;
  std::vector<std::vector<double>> distances;
  std::vector<int> cluster_sizes;

  bool empty_cluster(int l) const { return members[l].empty(); }
};

ClusterSelection SelectKnn(std::span<const Eigen::VectorXd> points,
                           const GmmModel& gmm, std::span<const int> assignments,
                           int k);

std::string GmmToJson(const GmmModel& gmm);

}  // namespace protograph

#endif  // PROTOGRAPH_CLUSTER_H_
