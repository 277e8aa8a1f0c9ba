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

#include "protograph/cluster.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "json.hpp"
#include "protograph/seed.h"

namespace protograph {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
// Clusters whose soft count falls below this are treated as empty.
constexpr double kMinClusterMass = 1e-10;

// Cholesky factor of `cov`; when the factorization fails a growing multiple
// of the mean diagonal is added until it succeeds, and `cov` is updated to
// the matrix actually factored.
Eigen::LLT<MatrixXd> FactorizeWithJitter(MatrixXd* cov) {
  Eigen::LLT<MatrixXd> llt(*cov);
  if (llt.info() == Eigen::Success) return llt;
  const double scale = std::max(1.0, cov->diagonal().mean());
  for (double jitter = 1e-12 * scale; jitter < 1e6 * scale; jitter *= 10.0) {
    MatrixXd candidate = *cov;
    candidate.diagonal().array() += jitter;
    llt.compute(candidate);
    if (llt.info() == Eigen::Success) {
      *cov = std::move(candidate);
      return llt;
    }
  }
  throw std::domain_error("covariance cannot be regularized");
}

// log N(x | mu, Sigma) for every point, with Sigma given by its factor.
VectorXd LogGaussian(std::span<const VectorXd> points, const VectorXd& mean,
                     const Eigen::LLT<MatrixXd>& llt) {
  const int b = static_cast<int>(mean.size());
  const MatrixXd& l = llt.matrixLLT();
  double log_det = 0.0;
  for (int i = 0; i < b; ++i) log_det += 2.0 * std::log(l(i, i));
  const double constant = -0.5 * (b * std::log(2.0 * std::numbers::pi) + log_det);
  VectorXd out(points.size());
  for (size_t n = 0; n < points.size(); ++n) {
    VectorXd z = llt.matrixL().solve(points[n] - mean);
    out(n) = constant - 0.5 * z.squaredNorm();
  }
  return out;
}

// Per-point log(pi_l N(x | l)) matrix.
MatrixXd WeightedLogDensities(const GmmModel& gmm,
                              std::span<const VectorXd> points) {
  const int num = static_cast<int>(points.size());
  MatrixXd logp(num, gmm.num_clusters());
  for (int l = 0; l < gmm.num_clusters(); ++l) {
    if (gmm.weights[l] <= 0.0) {
      logp.col(l).setConstant(kNegInf);
      continue;
    }
    MatrixXd cov = gmm.covariances[l];
    Eigen::LLT<MatrixXd> llt = FactorizeWithJitter(&cov);
    logp.col(l) = LogGaussian(points, gmm.means[l], llt).array() +
                  std::log(gmm.weights[l]);
  }
  return logp;
}

// Normalizes rows of log densities in place into responsibilities and returns
// the total log-likelihood.
double NormalizeRows(MatrixXd* logp) {
  double total = 0.0;
  for (int n = 0; n < logp->rows(); ++n) {
    const double peak = logp->row(n).maxCoeff();
    double sum = 0.0;
    for (int l = 0; l < logp->cols(); ++l) {
      double e = std::isinf((*logp)(n, l)) ? 0.0 : std::exp((*logp)(n, l) - peak);
      (*logp)(n, l) = e;
      sum += e;
    }
    logp->row(n) /= sum;
    total += peak + std::log(sum);
  }
  return total;
}

void MStep(std::span<const VectorXd> points, const MatrixXd& gamma,
           double ridge, GmmModel* gmm) {
  const int num = static_cast<int>(points.size());
  const int b = static_cast<int>(points[0].size());
  for (int l = 0; l < gmm->num_clusters(); ++l) {
    const double mass = gamma.col(l).sum();
    if (mass < kMinClusterMass) {
      gmm->weights[l] = 0.0;
      continue;
    }
    VectorXd mean = VectorXd::Zero(b);
    for (int n = 0; n < num; ++n) mean += gamma(n, l) * points[n];
    mean /= mass;
    MatrixXd cov = MatrixXd::Zero(b, b);
    for (int n = 0; n < num; ++n) {
      VectorXd d = points[n] - mean;
      cov.noalias() += gamma(n, l) * d * d.transpose();
    }
    cov /= mass;
    cov.diagonal().array() += ridge;
    gmm->weights[l] = mass / num;
    gmm->means[l] = std::move(mean);
    gmm->covariances[l] = std::move(cov);
  }
}

// Seeded k-means++ centres, returned as point indices.
std::vector<int> KMeansPlusPlus(std::span<const VectorXd> points, int k,
                                Rng& rng) {
  const int num = static_cast<int>(points.size());
  std::vector<int> centres;
  std::uniform_int_distribution<int> uniform(0, num - 1);
  centres.push_back(uniform(rng));
  std::vector<double> d2(num, std::numeric_limits<double>::infinity());
  while (static_cast<int>(centres.size()) < k) {
    const VectorXd& last = points[centres.back()];
    double total = 0.0;
    for (int n = 0; n < num; ++n) {
      d2[n] = std::min(d2[n], (points[n] - last).squaredNorm());
      total += d2[n];
    }
    if (total <= 0.0) {
      centres.push_back(uniform(rng));
    } else {
      std::discrete_distribution<int> pick(d2.begin(), d2.end());
      centres.push_back(pick(rng));
    }
  }
  return centres;
}

}  // namespace

MatrixXd Responsibilities(const GmmModel& gmm, std::span<const VectorXd> points) {
  MatrixXd logp = WeightedLogDensities(gmm, points);
  NormalizeRows(&logp);
  return logp;
}

double LogLikelihood(const GmmModel& gmm, std::span<const VectorXd> points) {
  MatrixXd logp = WeightedLogDensities(gmm, points);
  return NormalizeRows(&logp);
}

EmResult EmFit(std::span<const VectorXd> points, const EmOptions& options) {
  const int num = static_cast<int>(points.size());
  const int num_clusters = options.num_clusters;
  if (num_clusters < 1) throw std::invalid_argument("need at least one cluster");
  if (num < num_clusters) {
    throw std::invalid_argument("EM needs at least as many points (" +
                                std::to_string(num) + ") as clusters (" +
                                std::to_string(num_clusters) + ")");
  }
  const int b = static_cast<int>(points[0].size());
  if (b < 1) throw std::invalid_argument("points must have dimension >= 1");
  for (const auto& p : points) {
    if (p.size() != b) throw std::invalid_argument("inconsistent point dimension");
  }

  Rng rng = MakeRng(options.seed, "em-init");
  std::vector<int> centres = KMeansPlusPlus(points, num_clusters, rng);
  MatrixXd gamma = MatrixXd::Zero(num, num_clusters);
  for (int n = 0; n < num; ++n) {
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (int l = 0; l < num_clusters; ++l) {
      double d = (points[n] - points[centres[l]]).squaredNorm();
      if (d < best_d) {
        best_d = d;
        best = l;
      }
    }
    gamma(n, best) = 1.0;
  }

  EmResult result;
  GmmModel& gmm = result.gmm;
  gmm.weights.assign(num_clusters, 0.0);
  gmm.means.assign(num_clusters, VectorXd::Zero(b));
  gmm.covariances.assign(num_clusters, MatrixXd::Identity(b, b));
  for (int l = 0; l < num_clusters; ++l) gmm.means[l] = points[centres[l]];
  MStep(points, gamma, options.ridge, &gmm);

  for (int iter = 0;; ++iter) {
    MatrixXd logp = WeightedLogDensities(gmm, points);
    const double ll = NormalizeRows(&logp);
    gamma = std::move(logp);
    result.log_likelihood.push_back(ll);
    const size_t t = result.log_likelihood.size();
    if (t >= 2) {
      const double prev = result.log_likelihood[t - 2];
      if (std::abs(ll - prev) <= options.tol * std::max(1.0, std::abs(prev))) {
        result.converged = true;
        break;
      }
    }
    if (iter >= options.max_iter) break;
    MStep(points, gamma, options.ridge, &gmm);
    ++result.iterations;
  }
  result.responsibilities = std::move(gamma);
  return result;
}

std::vector<int> Assign(const MatrixXd& responsibilities) {
  std::vector<int> out(responsibilities.rows(), 0);
  for (int n = 0; n < responsibilities.rows(); ++n) {
    int best = 0;
    for (int l = 1; l < responsibilities.cols(); ++l) {
      if (responsibilities(n, l) > responsibilities(n, best)) best = l;
    }
    out[n] = best;
  }
  return out;
}

double Mahalanobis(const VectorXd& x, const VectorXd& mean,
                   const MatrixXd& covariance) {
  if (x.size() != mean.size() || covariance.rows() != x.size() ||
      covariance.cols() != x.size()) {
    throw std::invalid_argument("Mahalanobis: dimension mismatch");
  }
  Eigen::LLT<MatrixXd> llt(covariance);
  if (llt.info() != Eigen::Success) {
    throw std::domain_error("Mahalanobis: covariance is not positive definite");
  }
  return llt.matrixL().solve(x - mean).norm();
}

ClusterSelection SelectKnn(std::span<const VectorXd> points, const GmmModel& gmm,
                           std::span<const int> assignments, int k) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (assignments.size() != points.size()) {
    throw std::invalid_argument("one assignment per point required");
  }
  const int num_clusters = gmm.num_clusters();
  ClusterSelection out;
  out.members.resize(num_clusters);
  out.distances.resize(num_clusters);
  out.cluster_sizes.assign(num_clusters, 0);
  for (int l = 0; l < num_clusters; ++l) {
    std::vector<std::pair<double, int>> ranked;
    MatrixXd cov = gmm.covariances[l];
    Eigen::LLT<MatrixXd> llt = FactorizeWithJitter(&cov);
    for (int n = 0; n < static_cast<int>(points.size()); ++n) {
      if (assignments[n] != l) continue;
      ranked.emplace_back(llt.matrixL().solve(points[n] - gmm.means[l]).norm(), n);
    }
    out.cluster_sizes[l] = static_cast<int>(ranked.size());
    std::sort(ranked.begin(), ranked.end());
    const int take = std::min<int>(k, static_cast<int>(ranked.size()));
    for (int i = 0; i < take; ++i) {
      out.distances[l].push_back(ranked[i].first);
      out.members[l].push_back(ranked[i].second);
    }
  }
  return out;
}

std::string GmmToJson(const GmmModel& gmm) {
  nlohmann::json j;
  j["weights"] = gmm.weights;
  nlohmann::json means = nlohmann::json::array();
  nlohmann::json covs = nlohmann::json::array();
  for (int l = 0; l < gmm.num_clusters(); ++l) {
    means.push_back(std::vector<double>(gmm.means[l].data(),
                                        gmm.means[l].data() + gmm.means[l].size()));
    nlohmann::json rows = nlohmann::json::array();
    for (int r = 0; r < gmm.covariances[l].rows(); ++r) {
      std::vector<double> row(gmm.covariances[l].cols());
      for (int c = 0; c < gmm.covariances[l].cols(); ++c) {
        row[c] = gmm.covariances[l](r, c);
      }
      rows.push_back(std::move(row));
    }
    covs.push_back(std::move(rows));
  }
  j["means"] = std::move(means);
  j["covariances"] = std::move(covs);
  return j.dump(1) + "\n";
}

}  // namespace protograph
