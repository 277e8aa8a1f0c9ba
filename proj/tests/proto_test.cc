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

#include "protograph/proto.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>

#include "oracles.h"
#include "protograph/synth.h"
#include "test_util.h"

namespace protograph {
namespace {

using ::protograph::testing::AllTuples;
using ::protograph::testing::RandomConnectedGraph;

std::vector<const Graph*> Pointers(const std::vector<Graph>& gs) {
  std::vector<const Graph*> out;
  for (const auto& g : gs) out.push_back(&g);
  return out;
}

// Sort-based reference for the b-th ranked non-zero entry.
std::optional<std::vector<int>> SortOracle(const DenseTensor& y, int b) {
  std::vector<std::pair<double, std::vector<int>>> entries;
  for (const auto& idx : AllTuples(y.shape())) {
    if (y(idx) > 0.0) entries.emplace_back(y(idx), idx);
  }
  std::stable_sort(entries.begin(), entries.end(), [](const auto& l, const auto& r) {
    return l.first != r.first ? l.first > r.first : l.second < r.second;
  });
  if (static_cast<int>(entries.size()) < b) return std::nullopt;
  return entries[b - 1].second;
}

TEST(InitialTupleTest, ArgmaxAndSecond) {
  DenseTensor y({2, 2}, 0.0);
  y[2] = 5.0;
  y[1] = 3.0;
  EXPECT_EQ(*InitialTuple(y, 1), (std::vector<int>{1, 0}));
  EXPECT_EQ(*InitialTuple(y, 2), (std::vector<int>{0, 1}));
  EXPECT_FALSE(InitialTuple(y, 3).has_value());
  EXPECT_THROW(InitialTuple(y, 0), std::invalid_argument);
}

TEST(InitialTupleTest, TiesBrokenLexicographically) {
  DenseTensor y({2, 2, 2}, 1.0);
  for (int b = 1; b <= 8; ++b) EXPECT_EQ(*InitialTuple(y, b), y.Unravel(b - 1));
}

TEST(InitialTupleTest, MatchesSortOracleOnRandomMaskedTensors) {
  Rng rng = MakeRng(1, "proto");
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> coarse(0, 4);
  for (int trial = 0; trial < 40; ++trial) {
    DenseTensor y({1 + trial % 4, 2 + trial % 3, 1 + trial % 2});
    for (double& v : y.data()) {
      // Coarse values force ties; a third of entries are masked.
      v = u(rng) < 0.33 ? 0.0 : (trial % 2 ? coarse(rng) / 4.0 : u(rng));
    }
    for (int b = 1; b <= 5; ++b) EXPECT_EQ(InitialTuple(y, b), SortOracle(y, b));
  }
}

TEST(CandidateTuplesTest, WorkedExample) {
  auto graphs = testing::WorkedExampleGraphs();
  std::vector<int> last{6, 5, 5};
  auto cands = CandidateTuples(Pointers(graphs), last);
  EXPECT_EQ(cands, (std::vector<std::vector<int>>{
                       {4, 3, 3}, {4, 4, 3}, {5, 3, 3}, {5, 4, 3}}));
}

TEST(CandidateTuplesTest, EmptyWhenAnyNodeIsolated) {
  std::vector<Graph> gs{testing::Path(3), Graph(1, {0, 0}, {})};
  std::vector<int> last{1, 0};
  EXPECT_TRUE(CandidateTuples(Pointers(gs), last).empty());
  std::vector<int> wrong{1};
  EXPECT_THROW(CandidateTuples(Pointers(gs), wrong), std::invalid_argument);
}

TEST(DecayTupleTest, FactorPerSharedAxis) {
  DenseTensor y({3, 3, 3}, 1.0);
  std::vector<int> sel{1, 2, 0};
  DecayTuple(y, sel, 0.1);
  for (const auto& idx : AllTuples(y.shape())) {
    int shared = 0;
    for (int a = 0; a < 3; ++a) shared += idx[a] == sel[a];
    EXPECT_NEAR(y(idx), std::pow(0.1, shared), 1e-15);
  }
  EXPECT_NEAR(y(sel), 1e-3, 1e-18);
}

TEST(DecayTupleTest, MaskedEntriesStayZero) {
  Rng rng = MakeRng(2, "proto");
  std::uniform_real_distribution<double> u(0.0, 1.0);
  DenseTensor y({3, 4});
  for (double& v : y.data()) v = u(rng) < 0.5 ? 0.0 : u(rng);
  std::vector<bool> zero;
  for (double v : y.data()) zero.push_back(v == 0.0);
  for (int step = 0; step < 10; ++step) {
    std::vector<int> sel{step % 3, step % 4};
    DecayTuple(y, sel, 0.1);
  }
  for (std::int64_t i = 0; i < y.size(); ++i) {
    if (zero[i]) EXPECT_EQ(y[i], 0.0);
  }
}

MatchingTensor UniformTensor(const std::vector<Graph>& gs) {
  std::vector<int> shape;
  for (const auto& g : gs) shape.push_back(g.num_nodes());
  auto ptrs = Pointers(gs);
  return MaskFeatureMismatch(DenseTensor(shape, 1.0), ptrs);
}

TEST(SearchStepTest, SingleCandidateChosenRegardlessOfScore) {
  std::vector<Graph> gs{testing::Path(2), testing::Path(2)};
  MatchingTensor y = UniformTensor(gs);
  y.values[0] = 9.0;  // (0, 0) is the seed
  y.values[3] = 1e-9;  // (1, 1) is the only neighbor tuple
  SearchOptions opt;
  auto state = StartSession(y, 1, opt);
  ASSERT_TRUE(state);
  SearchStep(*state, Pointers(gs), opt);
  EXPECT_EQ(state->node_lists, (std::vector<std::vector<int>>{{0, 1}, {0, 1}}));
  EXPECT_EQ(state->iteration, 1);
}

TEST(SearchStepTest, StopsWhenCandidatesMasked) {
  std::vector<Graph> gs{Graph(2, {0, 1}, {{0, 1}}), Graph(2, {0, 0}, {{0, 1}})};
  MatchingTensor y = UniformTensor(gs);
  SearchOptions opt;
  auto state = StartSession(y, 1, opt);
  ASSERT_TRUE(state);
  // Seed (0, 0); the only candidate (1, 1) mixes features and is masked.
  SearchStep(*state, Pointers(gs), opt);
  EXPECT_EQ(state->stop, StopReason::kAllMasked);
  EXPECT_EQ(state->iteration, 0);
}

TEST(SearchStepTest, StopsWithoutCandidates) {
  std::vector<Graph> gs{Graph(1, {0}, {}), Graph(1, {0}, {})};
  MatchingTensor y = UniformTensor(gs);
  SearchOptions opt;
  auto state = StartSession(y, 1, opt);
  SearchStep(*state, Pointers(gs), opt);
  EXPECT_EQ(state->stop, StopReason::kNoCandidates);
}

TEST(SearchStepTest, SizeAndIterationLimits) {
  std::vector<Graph> gs{testing::Path(10), testing::Path(10)};
  MatchingTensor y = UniformTensor(gs);
  SearchOptions opt;
  opt.max_subgraph_size = 4;
  auto state = StartSession(y, 1, opt);
  while (state->running()) SearchStep(*state, Pointers(gs), opt);
  EXPECT_EQ(state->stop, StopReason::kSizeLimit);
  EXPECT_LE(state->LargestDistinct(), 4);

  opt = SearchOptions{};
  opt.max_iter = 3;
  state = StartSession(y, 1, opt);
  while (state->running()) SearchStep(*state, Pointers(gs), opt);
  EXPECT_EQ(state->stop, StopReason::kMaxIter);
  EXPECT_EQ(state->iteration, 3);
  EXPECT_EQ(state->node_lists[0].size(), 4u);
}

// Lists stay equal length; every appended node neighbors the previous one.
TEST(SearchStepTest, WalkInvariantsOnRandomGraphs) {
  Rng rng = MakeRng(3, "proto");
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Graph> gs;
    for (int a = 0; a < 3; ++a) gs.push_back(RandomConnectedGraph(rng, 3 + (trial + a) % 5, 2));
    std::vector<int> shape;
    for (const auto& g : gs) shape.push_back(g.num_nodes());
    DenseTensor raw(shape);
    for (double& v : raw.data()) v = u(rng);
    auto ptrs = Pointers(gs);
    MatchingTensor y = MaskFeatureMismatch(raw, ptrs);
    if (y.degenerate()) continue;
    SearchOptions opt;
    opt.max_subgraph_size = 5;
    auto state = StartSession(y, 1, opt);
    while (state->running()) SearchStep(*state, ptrs, opt);
    const auto& lists = state->node_lists;
    for (int a = 0; a < 3; ++a) {
      ASSERT_EQ(lists[a].size(), lists[0].size());
      for (size_t t = 1; t < lists[a].size(); ++t) {
        EXPECT_TRUE(gs[a].HasEdge(lists[a][t - 1], lists[a][t]));
      }
    }
    for (std::int64_t i = 0; i < y.values.size(); ++i) {
      if (!y.kept[i]) EXPECT_EQ(state->current[i], 0.0);
    }
  }
}

Model TinyModel(std::uint64_t seed) {
  ModelConfig cfg;
  cfg.hidden_dims = {8, 8};
  cfg.seed = seed;
  return InitModel(cfg);
}

TEST(RunSessionTest, IdenticalGraphsTraceSameSequence) {
  // Distinct per-node features make each node match only itself.
  const int n = 3;
  Graph g(n, {0, 1, 2}, {{0, 1}, {1, 2}});
  std::vector<Graph> gs{g, g, g};
  auto ptrs = Pointers(gs);
  ModelConfig cfg;
  cfg.feature_dim = n;
  cfg.hidden_dims = {4};
  Model m = InitModel(cfg);
  DenseTensor raw(std::vector<int>(3, n), 1.0);
  MatchingTensor y = MaskFeatureMismatch(raw, ptrs);
  for (int b = 1; b <= 3; ++b) {
    auto cand = RunSession(ptrs, y, b, m, 0, SearchOptions{});
    ASSERT_TRUE(cand);
    EXPECT_EQ(cand->node_lists[0], cand->node_lists[1]);
    EXPECT_EQ(cand->node_lists[1], cand->node_lists[2]);
    EXPECT_EQ(cand->source, 0);  // equal p_gnn: first graph wins
  }
  EXPECT_FALSE(RunSession(ptrs, y, 4, m, 0, SearchOptions{}));
}

Dataset SmallHouseData(int n, std::uint64_t seed) {
  GenConfig cfg;
  cfg.n_graphs = n;
  cfg.seed = seed;
  return GenerateDataset(DatasetKind::kBaHouse, cfg);
}

TEST(DiscoverTest, BudgetOneEqualsFirstSessionAndMaxOverSessions) {
  Dataset d = SmallHouseData(60, 1);
  Model m = TinyModel(2);
  std::vector<int> selected{0, 1, 2};
  DiscoveryOptions opt;
  opt.budget = 5;
  std::optional<Prototype> best;
  ClusterReport report = DiscoverFromGraphs(m, d, selected, 0, opt, &best);
  ASSERT_TRUE(best);
  double top = -1.0;
  for (const auto& s : report.sessions) top = std::max(top, s.p_gnn);
  EXPECT_EQ(best->p_gnn, top);

  opt.budget = 1;
  std::optional<Prototype> first;
  DiscoverFromGraphs(m, d, selected, 0, opt, &first);
  ASSERT_TRUE(first);
  EXPECT_EQ(first->session, 1);
  EXPECT_EQ(first->p_gnn, report.sessions.front().p_gnn);
  EXPECT_EQ(first->subgraph.original_ids, report.sessions.front().subgraph.original_ids);
}

TEST(DiscoverTest, SessionsAreIndependentOfOrder) {
  Dataset d = SmallHouseData(30, 3);
  Model m = TinyModel(4);
  std::vector<const Graph*> ptrs{&d.graphs[3].graph, &d.graphs[4].graph, &d.graphs[5].graph};
  std::vector<Eigen::MatrixXd> h;
  for (const Graph* g : ptrs) h.push_back(Forward(m, *g).embeddings.nodes);
  MatchingTensor y = MaskFeatureMismatch(BuildMatchingTensor(BuildScoreTensor(h)), ptrs);
  std::map<int, double> forward, backward;
  for (int b = 1; b <= 5; ++b) forward[b] = RunSession(ptrs, y, b, m, 0, {})->p_gnn;
  for (int b = 5; b >= 1; --b) backward[b] = RunSession(ptrs, y, b, m, 0, {})->p_gnn;
  EXPECT_EQ(forward, backward);
}

TEST(DiscoverTest, PrototypesValid) {
  Dataset d = SmallHouseData(80, 5);
  Model m = TinyModel(6);
  DiscoveryOptions opt;
  opt.target_class = Predict(m, d.graphs[0].graph);
  opt.search.max_subgraph_size = 6;
  DiscoveryResult r = Discover(m, d, opt);
  ASSERT_TRUE(r.gmm);
  EXPECT_EQ(r.clusters.size(), 2u);
  for (const auto& p : r.prototypes) {
    EXPECT_TRUE(IsConnected(p.subgraph.graph));
    EXPECT_LE(p.subgraph.graph.num_nodes(), 6);
    EXPECT_NEAR(p.p_gnn, PGnn(m, p.subgraph.graph, opt.target_class), 1e-9);
    const Graph& src = d.graphs[p.dataset_index].graph;
    EXPECT_EQ(InducedSubgraph(src, p.subgraph.original_ids).graph, p.subgraph.graph);
  }
  EXPECT_EQ(BestPrototype(r) == nullptr, r.prototypes.empty());
}

TEST(DiscoverTest, ShortfallErrors) {
  Dataset d = SmallHouseData(20, 7);
  Model m = TinyModel(8);
  DiscoveryOptions opt;
  opt.k = 1000;
  EXPECT_THROW(Discover(m, d, opt), std::invalid_argument);
  std::vector<int> pool{0, 1};
  opt.k = 3;
  EXPECT_THROW(DiscoverSimplified(m, d, pool, opt), std::invalid_argument);
}

TEST(DiscoverSimplifiedTest, PoolOfExactlyKUsesWholePool) {
  Dataset d = SmallHouseData(20, 9);
  Model m = TinyModel(10);
  std::vector<int> pool{4, 9, 2};
  DiscoveryOptions opt;
  DiscoveryResult r = DiscoverSimplified(m, d, pool, opt);
  ASSERT_EQ(r.clusters.size(), 1u);
  std::vector<int> chosen = r.clusters[0].selected;
  std::sort(chosen.begin(), chosen.end());
  EXPECT_EQ(chosen, (std::vector<int>{2, 4, 9}));
  EXPECT_FALSE(r.gmm.has_value());
}

TEST(PrototypeJsonTest, Fields) {
  Dataset d = SmallHouseData(10, 11);
  std::vector<int> nodes{0, 1};
  Prototype p{InducedSubgraph(d.graphs[0].graph, nodes), 1, 7, 0, 0, 0.75, 2};
  std::string json = PrototypeToJson(p);
  for (const char* key : {"\"class\"", "\"cluster\"", "\"session\":2", "\"p_gnn\":0.75",
                          "\"source_graph\":1", "\"original_node_ids\":[0,1]"}) {
    EXPECT_NE(json.find(key), std::string::npos) << key << " in " << json;
  }
}

TEST(StopReasonTest, Names) {
  EXPECT_EQ(StopReasonName(StopReason::kSizeLimit), "size-limit");
  EXPECT_EQ(StopReasonName(StopReason::kAllMasked), "all-masked");
}

}  // namespace
}  // namespace protograph
