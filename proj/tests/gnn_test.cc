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

#include "protograph/gnn.h"

#include <gtest/gtest.h>

#include <cmath>

#include "protograph/synth.h"
#include "oracles.h"
#include "test_util.h"

namespace protograph {
namespace {

using Eigen::MatrixXd;
using Eigen::RowVectorXd;
using ::protograph::testing::OneHot;
using ::protograph::testing::OracleProbs;
using ::protograph::testing::RandomConnectedGraph;
using ::protograph::testing::RandomPermutation;

ModelConfig SmallConfig(std::uint64_t seed) {
  ModelConfig cfg;
  cfg.hidden_dims = {8, 6};
  cfg.seed = seed;
  return cfg;
}

Dataset SmallDataset(int n, std::uint64_t seed) {
  GenConfig g;
  g.n_graphs = n;
  g.seed = seed;
  g.train_fraction = 0.6;
  g.val_fraction = 0.2;
  return GenerateDataset(DatasetKind::kBaHouse, g);
}

TEST(ForwardTest, SingleNodeIdentityLayer) {
  ModelConfig cfg;
  cfg.hidden_dims = {3};
  Model m = InitModel(cfg);
  m.layer_weights[0] = MatrixXd::Identity(3, 3);
  m.layer_weights[0](1, 1) = -2.0;
  for (int f = 0; f < 3; ++f) {
    Graph g(3, {f}, {});
    RowVectorXd expected = RowVectorXd::Zero(3);
    expected[f] = std::max(0.0, m.layer_weights[0](f, f));
    const RowVectorXd got = Forward(m, g).embeddings.nodes.row(0);
    EXPECT_EQ(got, expected);
  }
}

TEST(ForwardTest, MatchesScalarOracle) {
  Rng rng = MakeRng(1, "gnn-test");
  for (int trial = 0; trial < 30; ++trial) {
    ModelConfig cfg = SmallConfig(trial);
    cfg.readout = trial % 2 ? Readout::kMean : Readout::kSum;
    cfg.conv_bias = trial % 3 == 0;
    cfg.self_loops = trial % 5 != 0;
    Model m = InitModel(cfg);
    if (cfg.conv_bias) {
      for (auto& b : m.layer_biases) b.setConstant(0.05);
    }
    Graph g = RandomConnectedGraph(rng, 1 + trial % 9, 3);
    ForwardResult fr = Forward(m, g);
    RowVectorXd oracle = OracleProbs(m, g, OneHot(g));
    EXPECT_LT((fr.probs - oracle).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_NEAR(fr.probs.sum(), 1.0, 1e-9);
    RowVectorXd readout = fr.embeddings.nodes.colwise().sum();
    if (cfg.readout == Readout::kMean) readout /= g.num_nodes();
    EXPECT_EQ(readout, fr.embeddings.graph);
    EXPECT_GE(fr.embeddings.nodes.minCoeff(), 0.0);
  }
}

TEST(ForwardTest, PermutationInvariance) {
  Rng rng = MakeRng(2, "gnn-test");
  Model m = InitModel(SmallConfig(7));
  for (int trial = 0; trial < 50; ++trial) {
    Graph g = RandomConnectedGraph(rng, 2 + trial % 12, 3);
    Graph p = PermuteNodes(g, RandomPermutation(rng, g.num_nodes()));
    ForwardResult a = Forward(m, g), b = Forward(m, p);
    EXPECT_LT((a.embeddings.graph - b.embeddings.graph).cwiseAbs().maxCoeff(), 1e-9);
    EXPECT_LT((a.probs - b.probs).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(ForwardTest, Errors) {
  Model m = InitModel(SmallConfig(0));
  EXPECT_THROW(Forward(m, Graph()), std::invalid_argument);
  EXPECT_THROW(Forward(m, Graph(4, {3}, {})), std::invalid_argument);
  EXPECT_THROW(PGnn(m, Graph(), 0), std::invalid_argument);
  EXPECT_THROW(PGnn(m, Graph(3, {0}, {}), 2), std::invalid_argument);
}

TEST(PGnnTest, ClassProbabilitiesSumToOne) {
  Rng rng = MakeRng(3, "gnn-test");
  Model m = InitModel(SmallConfig(3));
  for (int trial = 0; trial < 20; ++trial) {
    Graph g = RandomConnectedGraph(rng, 1 + trial % 8, 3);
    EXPECT_NEAR(PGnn(m, g, 0) + PGnn(m, g, 1), 1.0, 1e-12);
  }
}

TEST(PGnnTest, ZeroClassifierIsUniform) {
  ModelConfig cfg = SmallConfig(4);
  cfg.num_classes = 4;
  Model m = InitModel(cfg);
  m.classifier_weight.setZero();
  m.classifier_bias.setZero();
  Graph g = testing::Path(5, 3);
  for (int c = 0; c < 4; ++c) EXPECT_EQ(PGnn(m, g, c), 0.25);
}

TEST(InputGradientsTest, MatchesCentralDifferences) {
  Rng rng = MakeRng(5, "gnn-test");
  const double eps = 1e-4;
  for (int trial = 0; trial < 20; ++trial) {
    Model m = InitModel(SmallConfig(100 + trial));
    Graph g = RandomConnectedGraph(rng, 5, 3, 0.3);
    const int c = trial % 2;
    MatrixXd analytic = InputGradients(m, g, c);
    MatrixXd x = OneHot(g);
    MatrixXd fd(x.rows(), x.cols());
    for (int v = 0; v < x.rows(); ++v) {
      for (int f = 0; f < x.cols(); ++f) {
        MatrixXd up = x, down = x;
        up(v, f) += eps;
        down(v, f) -= eps;
        fd(v, f) = (OracleProbs(m, g, up)[c] - OracleProbs(m, g, down)[c]) / (2 * eps);
      }
    }
    const double scale = std::max(analytic.norm(), fd.norm());
    ASSERT_GT(scale, 0.0);
    EXPECT_LE((analytic - fd).norm() / scale, 1e-4) << "trial " << trial;
  }
}

TEST(InputGradientsTest, ZeroClassifierGivesZero) {
  Model m = InitModel(SmallConfig(6));
  m.classifier_weight.setZero();
  EXPECT_EQ(InputGradients(m, testing::Path(4, 3), 0).cwiseAbs().maxCoeff(), 0.0);
}

TEST(InputGradientsTest, ProbabilitySumHasZeroGradient) {
  Rng rng = MakeRng(7, "gnn-test");
  Model m = InitModel(SmallConfig(8));
  for (int trial = 0; trial < 10; ++trial) {
    Graph g = RandomConnectedGraph(rng, 6, 3);
    MatrixXd total = InputGradients(m, g, 0) + InputGradients(m, g, 1);
    EXPECT_LT(total.cwiseAbs().maxCoeff(), 1e-8);
  }
}

TEST(TrainTest, DeterministicAndLossDecreases) {
  Dataset d = SmallDataset(200, 1);
  ModelConfig cfg = SmallConfig(9);
  cfg.max_epochs = 6;
  TrainResult a = Train(cfg, d);
  TrainResult b = Train(cfg, d);
  EXPECT_EQ(ModelToJson(a.model), ModelToJson(b.model));
  ASSERT_GE(a.history.size(), 3u);
  EXPECT_LT(a.history[1].train_loss, a.history[0].train_loss);
  EXPECT_LT(a.history[2].train_loss, a.history[1].train_loss);
}

TEST(TrainTest, EarlyStoppingKeepsBestValidationWeights) {
  Dataset d = SmallDataset(200, 2);
  ModelConfig cfg = SmallConfig(10);
  cfg.max_epochs = 40;
  cfg.patience = 2;
  TrainResult r = Train(cfg, d);
  double best = 1e300;
  int best_epoch = 0;
  for (const auto& e : r.history) {
    if (e.val_loss < best) {
      best = e.val_loss;
      best_epoch = e.epoch;
    }
  }
  EXPECT_EQ(r.best_epoch, best_epoch);
  EXPECT_NEAR(MeanCrossEntropy(r.model, d, d.Indices(Split::kVal)), best, 1e-12);
  if (static_cast<int>(r.history.size()) < cfg.max_epochs) {
    EXPECT_EQ(r.history.back().epoch - r.best_epoch, cfg.patience);
  }
}

TEST(TrainTest, Errors) {
  Dataset d = SmallDataset(40, 3);
  for (auto& lg : d.graphs) lg.label = 0;
  EXPECT_THROW(Train(SmallConfig(0), d), std::invalid_argument);
  Dataset no_val = SmallDataset(40, 3);
  for (auto& lg : no_val.graphs) lg.split = Split::kTrain;
  EXPECT_THROW(Train(SmallConfig(0), no_val), std::invalid_argument);
  ModelConfig bad = SmallConfig(0);
  bad.hidden_dims = {};
  EXPECT_THROW(InitModel(bad), std::invalid_argument);
  bad.hidden_dims = {4, 0};
  EXPECT_THROW(InitModel(bad), std::invalid_argument);
}

TEST(TrainTest, HalfCorruptedLabelsGiveChanceAccuracy) {
  Dataset d = SmallDataset(400, 4);
  Rng rng = MakeRng(4, "corrupt");
  Dataset c = CorruptLabels(d, 0.5, rng);
  TrainResult r = Train(ModelConfig{}, c);
  EXPECT_NEAR(SplitAccuracy(r.model, c, Split::kTest), 0.5, 0.15);
}

TEST(CheckpointTest, RoundTripExact) {
  ModelConfig cfg = SmallConfig(11);
  cfg.conv_bias = true;
  cfg.readout = Readout::kMean;
  Model m = InitModel(cfg);
  m.layer_biases[1].setConstant(1.0 / 3.0);
  Model back = ModelFromJson(ModelToJson(m));
  EXPECT_EQ(back.config, m.config);
  ASSERT_EQ(back.layer_weights.size(), m.layer_weights.size());
  for (size_t p = 0; p < m.layer_weights.size(); ++p) {
    EXPECT_EQ(back.layer_weights[p], m.layer_weights[p]);
    EXPECT_EQ(back.layer_biases[p], m.layer_biases[p]);
  }
  EXPECT_EQ(back.classifier_weight, m.classifier_weight);
  EXPECT_EQ(back.classifier_bias, m.classifier_bias);
  EXPECT_THROW(ModelFromJson("{\"format\": \"other\"}"), std::exception);
}

TEST(ReadoutTest, Names) {
  EXPECT_EQ(ParseReadout("mean"), Readout::kMean);
  EXPECT_EQ(ReadoutName(Readout::kSum), "sum");
  EXPECT_THROW(ParseReadout("max"), std::invalid_argument);
}

}  // namespace
}  // namespace protograph
