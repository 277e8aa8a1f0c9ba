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

#include <gtest/gtest.h>

#include <random>

#include "protograph/seed.h"

namespace protograph {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

struct Clouds {
  std::vector<VectorXd> points;
  std::vector<int> truth;
};

// Two unit-covariance Gaussian clouds centred at +10*1 and -10*1.
Clouds TwoClouds(int dim, int per_cloud, std::uint64_t seed) {
  Rng rng = MakeRng(seed, "clouds");
  std::normal_distribution<double> normal;
  Clouds c;
  for (int label = 0; label < 2; ++label) {
    const double centre = label == 0 ? 10.0 : -10.0;
    for (int i = 0; i < per_cloud; ++i) {
      VectorXd p(dim);
      for (int j = 0; j < dim; ++j) p[j] = centre + normal(rng);
      c.points.push_back(p);
      c.truth.push_back(label);
    }
  }
  return c;
}

std::vector<VectorXd> RandomPoints(Rng& rng, int n, int dim) {
  std::normal_distribution<double> normal;
  std::vector<VectorXd> out(n, VectorXd(dim));
  for (auto& p : out) {
    for (int j = 0; j < dim; ++j) p[j] = normal(rng) * (1 + j);
  }
  return out;
}

TEST(EmFitTest, SeparatedCloudsRecovered) {
  Clouds c = TwoClouds(3, 100, 1);
  EmOptions opt;
  opt.seed = 4;
  EmResult r = EmFit(c.points, opt);
  std::vector<int> a = Assign(r.responsibilities);
  // Map each fitted cluster to the majority true label.
  int agree = 0;
  for (size_t i = 0; i < a.size(); ++i) agree += a[i] == c.truth[i];
  const double purity =
      std::max(agree, static_cast<int>(a.size()) - agree) / static_cast<double>(a.size());
  EXPECT_GE(purity, 0.99);
  for (int l = 0; l < 2; ++l) {
    const double target = r.gmm.means[l][0] > 0 ? 10.0 : -10.0;
    EXPECT_LE((r.gmm.means[l] - VectorXd::Constant(3, target)).norm(), 0.5);
  }
  EXPECT_TRUE(r.converged);
}

TEST(EmFitTest, SingleClusterIsSampleMoments) {
  Rng rng = MakeRng(2, "em");
  std::vector<VectorXd> pts = RandomPoints(rng, 50, 3);
  EmOptions opt;
  opt.num_clusters = 1;
  opt.ridge = 0.0;
  EmResult r = EmFit(pts, opt);
  VectorXd mean = VectorXd::Zero(3);
  for (const auto& p : pts) mean += p;
  mean /= pts.size();
  MatrixXd cov = MatrixXd::Zero(3, 3);
  for (const auto& p : pts) cov += (p - mean) * (p - mean).transpose();
  cov /= pts.size();
  EXPECT_LT((r.gmm.means[0] - mean).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT((r.gmm.covariances[0] - cov).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_DOUBLE_EQ(r.gmm.weights[0], 1.0);
}

TEST(EmFitTest, RejectsTooFewPoints) {
  std::vector<VectorXd> pts(2, VectorXd::Zero(2));
  EmOptions opt;
  opt.num_clusters = 3;
  EXPECT_THROW(EmFit(pts, opt), std::invalid_argument);
}

TEST(EmFitTest, CollapsedCovarianceHandledByRidge) {
  // Rank-deficient cloud: every point on one line.
  std::vector<VectorXd> pts;
  for (int i = 0; i < 20; ++i) pts.push_back(VectorXd::Constant(4, i % 5));
  EmOptions opt;
  EmResult r = EmFit(pts, opt);
  for (int l = 0; l < r.gmm.num_clusters(); ++l) {
    if (r.gmm.weights[l] == 0.0) continue;
    Eigen::SelfAdjointEigenSolver<MatrixXd> eig(r.gmm.covariances[l]);
    EXPECT_GE(eig.eigenvalues().minCoeff(), opt.ridge * (1 - 1e-6));
  }
}

// Trace monotone, responsibilities and weights on the simplex, fit
// deterministic under a fixed seed.
TEST(EmFitTest, InvariantsOnRandomData) {
  Rng rng = MakeRng(3, "em");
  for (int trial = 0; trial < 25; ++trial) {
    const int dim = 1 + trial % 4;
    const int n = 10 + trial * 3;
    std::vector<VectorXd> pts = RandomPoints(rng, n, dim);
    EmOptions opt;
    opt.num_clusters = 1 + trial % 3;
    opt.seed = trial;
    EmResult r = EmFit(pts, opt);
    for (size_t t = 1; t < r.log_likelihood.size(); ++t) {
      EXPECT_GE(r.log_likelihood[t] - r.log_likelihood[t - 1], -1e-9) << trial;
    }
    double wsum = 0.0;
    for (double w : r.gmm.weights) wsum += w;
    EXPECT_NEAR(wsum, 1.0, 1e-9);
    for (int i = 0; i < n; ++i) {
      EXPECT_NEAR(r.responsibilities.row(i).sum(), 1.0, 1e-9);
      EXPECT_GE(r.responsibilities.row(i).minCoeff(), 0.0);
      EXPECT_LE(r.responsibilities.row(i).maxCoeff(), 1.0);
    }
    for (const auto& cov : r.gmm.covariances) {
      EXPECT_LT((cov - cov.transpose()).cwiseAbs().maxCoeff(), 1e-12);
    }
    EmResult again = EmFit(pts, opt);
    EXPECT_EQ(again.log_likelihood, r.log_likelihood);
    EXPECT_EQ(again.responsibilities, r.responsibilities);
  }
}

TEST(ResponsibilitiesTest, EquidistantPointSplitsEvenly) {
  GmmModel gmm;
  gmm.weights = {0.5, 0.5};
  gmm.means = {VectorXd::Constant(2, 1.0), VectorXd::Constant(2, -1.0)};
  gmm.covariances = {MatrixXd::Identity(2, 2), MatrixXd::Identity(2, 2)};
  std::vector<VectorXd> pts{VectorXd::Zero(2)};
  MatrixXd g = Responsibilities(gmm, pts);
  EXPECT_DOUBLE_EQ(g(0, 0), 0.5);
  EXPECT_DOUBLE_EQ(g(0, 1), 0.5);
  EXPECT_EQ(Assign(g), std::vector<int>{0});
}

TEST(AssignTest, ArgmaxWithLowestIndexTieBreak) {
  MatrixXd g(3, 3);
  g << 0.9, 0.1, 0.0,
       0.2, 0.4, 0.4,
       0.1, 0.2, 0.7;
  EXPECT_EQ(Assign(g), (std::vector<int>{0, 1, 2}));
}

TEST(MahalanobisTest, ClosedForms) {
  Rng rng = MakeRng(4, "m");
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<VectorXd> p = RandomPoints(rng, 2, 4);
    EXPECT_EQ(Mahalanobis(p[0], p[1], MatrixXd::Identity(4, 4)), (p[0] - p[1]).norm());
    EXPECT_EQ(Mahalanobis(p[0], p[0], MatrixXd::Identity(4, 4)), 0.0);
  }
  MatrixXd cov = Eigen::Vector2d(4.0, 1.0).asDiagonal();
  EXPECT_DOUBLE_EQ(Mahalanobis(Eigen::Vector2d(3.0, 1.0), Eigen::Vector2d(1.0, 1.0), cov),
                   1.0);
  EXPECT_THROW(Mahalanobis(VectorXd::Zero(2), VectorXd::Zero(2), MatrixXd::Zero(2, 2)),
               std::domain_error);
  EXPECT_THROW(Mahalanobis(VectorXd::Zero(2), VectorXd::Zero(3), MatrixXd::Identity(2, 2)),
               std::invalid_argument);
}

TEST(SelectKnnTest, WholeClusterSingleAndOracle) {
  Clouds c = TwoClouds(2, 30, 5);
  EmOptions opt;
  opt.seed = 1;
  EmResult r = EmFit(c.points, opt);
  std::vector<int> a = Assign(r.responsibilities);

  ClusterSelection all = SelectKnn(c.points, r.gmm, a, 1000);
  for (int l = 0; l < 2; ++l) {
    EXPECT_EQ(static_cast<int>(all.members[l].size()), all.cluster_sizes[l]);
    EXPECT_TRUE(std::is_sorted(all.distances[l].begin(), all.distances[l].end()));
  }

  ClusterSelection one = SelectKnn(c.points, r.gmm, a, 1);
  for (int l = 0; l < 2; ++l) {
    double best = 1e300;
    int arg = -1;
    for (size_t i = 0; i < c.points.size(); ++i) {
      if (a[i] != l) continue;
      double d = Mahalanobis(c.points[i], r.gmm.means[l], r.gmm.covariances[l]);
      if (d < best) {
        best = d;
        arg = static_cast<int>(i);
      }
    }
    ASSERT_EQ(one.members[l].size(), 1u);
    EXPECT_EQ(one.members[l][0], arg);
  }

  ClusterSelection three = SelectKnn(c.points, r.gmm, a, 3);
  for (int l = 0; l < 2; ++l) {
    ASSERT_EQ(three.members[l].size(), 3u);
    const int label = c.truth[three.members[l][0]];
    for (int m : three.members[l]) EXPECT_EQ(c.truth[m], label);
  }
}

TEST(SelectKnnTest, EmptyClusterYieldsEmptySelection) {
  GmmModel gmm;
  gmm.weights = {1.0, 0.0};
  gmm.means = {VectorXd::Zero(1), VectorXd::Zero(1)};
  gmm.covariances = {MatrixXd::Identity(1, 1), MatrixXd::Identity(1, 1)};
  std::vector<VectorXd> pts{VectorXd::Constant(1, 1.0), VectorXd::Constant(1, 2.0)};
  std::vector<int> a{0, 0};
  ClusterSelection s = SelectKnn(pts, gmm, a, 3);
  EXPECT_EQ(s.members[0], (std::vector<int>{0, 1}));
  EXPECT_TRUE(s.members[1].empty());
  EXPECT_EQ(s.cluster_sizes[1], 0);
  EXPECT_THROW(SelectKnn(pts, gmm, a, 0), std::invalid_argument);
}

TEST(GmmJsonTest, ContainsAllParameters) {
  GmmModel gmm;
  gmm.weights = {0.25, 0.75};
  gmm.means = {VectorXd::Constant(2, 1.0), VectorXd::Constant(2, -1.0)};
  gmm.covariances = {MatrixXd::Identity(2, 2), 2 * MatrixXd::Identity(2, 2)};
  std::string json = GmmToJson(gmm);
  for (const char* key : {"\"weights\"", "\"means\"", "\"covariances\"", "0.75"}) {
    EXPECT_NE(json.find(key), std::string::npos) << key;
  }
}

}  // namespace
}  // namespace protograph
