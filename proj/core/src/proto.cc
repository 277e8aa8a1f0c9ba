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

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "json.hpp"
#include "protograph/seed.h"

namespace protograph {
namespace {

std::vector<int> Distinct(const std::vector<int>& nodes) {
  std::vector<int> out;
  for (int v : nodes) {
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  }
  return out;
}

int CountDistinct(const std::vector<int>& nodes) {
  return static_cast<int>(std::set<int>(nodes.begin(), nodes.end()).size());
}

void Append(SearchState& state, std::span<const int> tuple, double factor) {
  for (size_t a = 0; a < tuple.size(); ++a) {
    state.node_lists[a].push_back(tuple[a]);
  }
  DecayTuple(state.current, tuple, factor);
}

std::vector<const Graph*> GraphPointers(const Dataset& dataset,
                                        std::span<const int> indices) {
  std::vector<const Graph*> out;
  for (int i : indices) out.push_back(&dataset.graphs[i].graph);
  return out;
}

}  // namespace

std::optional<std::vector<int>> InitialTuple(const DenseTensor& y, int b) {
  if (b < 1) throw std::invalid_argument("session index is 1-based");
  std::vector<std::pair<double, std::int64_t>> entries;
  for (std::int64_t off = 0; off < y.size(); ++off) {
    if (y[off] > 0.0) entries.emplace_back(y[off], off);
  }
  if (static_cast<int>(entries.size()) < b) return std::nullopt;
  // Row-major offsets order tuples lexicographically.
  auto before = [](const auto& l, const auto& r) {
    return l.first != r.first ? l.first > r.first : l.second < r.second;
  };
  std::nth_element(entries.begin(), entries.begin() + (b - 1), entries.end(),
                   before);
  return y.Unravel(entries[b - 1].second);
}

std::vector<std::vector<int>> CandidateTuples(
    std::span<const Graph* const> graphs, std::span<const int> last_nodes) {
  const int k = static_cast<int>(graphs.size());
  if (static_cast<int>(last_nodes.size()) != k) {
    throw std::invalid_argument("one node per graph required");
  }
  std::vector<std::span<const int>> nbrs;
  for (int a = 0; a < k; ++a) {
    nbrs.push_back(graphs[a]->Neighbors(last_nodes[a]));
    if (nbrs.back().empty()) return {};
  }
  std::vector<std::vector<int>> out;
  std::vector<int> pos(k, 0);
  while (true) {
    std::vector<int> tuple(k);
    for (int a = 0; a < k; ++a) tuple[a] = nbrs[a][pos[a]];
    out.push_back(std::move(tuple));
    int a = k - 1;
    while (a >= 0 && ++pos[a] == static_cast<int>(nbrs[a].size())) pos[a--] = 0;
    if (a < 0) break;
  }
  return out;
}

void DecayTuple(DenseTensor& y, std::span<const int> tuple, double factor) {
  const int k = y.order();
  if (static_cast<int>(tuple.size()) != k) {
    throw std::invalid_argument("decay tuple has the wrong order");
  }
  for (int axis = 0; axis < k; ++axis) {
    const std::int64_t stride = y.strides()[axis];
    const std::int64_t block = stride * y.shape()[axis];
    const std::int64_t start = tuple[axis] * stride;
    for (std::int64_t outer = 0; outer < y.size(); outer += block) {
      for (std::int64_t inner = 0; inner < stride; ++inner) {
        y[outer + start + inner] *= factor;
      }
    }
  }
}

std::string StopReasonName(StopReason reason) {
  switch (reason) {
    case StopReason::kRunning:
      return "running";
    case StopReason::kMaxIter:
      return "max-iter";
    case StopReason::kSizeLimit:
      return "size-limit";
    case StopReason::kNoCandidates:
      return "no-candidates";
    case StopReason::kAllMasked:
      return "all-masked";
  }
  return "unknown";
}

int SearchState::LargestDistinct() const {
  int most = 0;
  for (const auto& list : node_lists) most = std::max(most, CountDistinct(list));
  return most;
}

std::optional<SearchState> StartSession(const MatchingTensor& y, int b,
                                        const SearchOptions& options) {
  std::optional<std::vector<int>> seed = InitialTuple(y.values, b);
  if (!seed) return std::nullopt;
  SearchState state;
  state.node_lists.resize(y.values.order());
  state.current = y.values;
  Append(state, *seed, 1.0 / options.decay_rate);
  if (options.max_iter <= 0) state.stop = StopReason::kMaxIter;
  return state;
}

void SearchStep(SearchState& state, std::span<const Graph* const> graphs,
                const SearchOptions& options) {
  if (!state.running()) return;
  const int k = static_cast<int>(graphs.size());
  std::vector<int> last(k);
  for (int a = 0; a < k; ++a) last[a] = state.node_lists[a].back();

  std::vector<std::vector<int>> candidates = CandidateTuples(graphs, last);
  if (candidates.empty()) {
    state.stop = StopReason::kNoCandidates;
    return;
  }
  const std::vector<int>* best = nullptr;
  double best_score = 0.0;
  for (const auto& c : candidates) {
    const double v = state.current(c);
    if (v > best_score) {
      best_score = v;
      best = &c;
    }
  }
  if (best == nullptr) {
    state.stop = StopReason::kAllMasked;
    return;
  }
  for (int a = 0; a < k; ++a) {
    const auto& list = state.node_lists[a];
    if (std::find(list.begin(), list.end(), (*best)[a]) == list.end() &&
        CountDistinct(list) + 1 > options.max_subgraph_size) {
      state.stop = StopReason::kSizeLimit;
      return;
    }
  }
  Append(state, *best, 1.0 / options.decay_rate);
  if (++state.iteration >= options.max_iter) state.stop = StopReason::kMaxIter;
}

std::optional<SessionCandidate> RunSession(std::span<const Graph* const> graphs,
                                           const MatchingTensor& y, int b,
                                           const Model& model, int target_class,
                                           const SearchOptions& options) {
  if (y.degenerate()) return std::nullopt;
  std::optional<SearchState> state = StartSession(y, b, options);
  if (!state) return std::nullopt;
  while (state->running()) SearchStep(*state, graphs, options);

  std::optional<SessionCandidate> best;
  for (int a = 0; a < static_cast<int>(graphs.size()); ++a) {
    std::vector<int> nodes = Distinct(state->node_lists[a]);
    Subgraph sub = InducedSubgraph(*graphs[a], nodes);
    const double p = PGnn(model, sub.graph, target_class);
    if (!best || p > best->p_gnn) {
      best = SessionCandidate{b, a, std::move(sub), p, state->iteration,
                              state->stop, {}};
    }
  }
  best->node_lists = state->node_lists;
  return best;
}

ClusterReport DiscoverFromGraphs(const Model& model, const Dataset& dataset,
                                 std::span<const int> selected, int cluster,
                                 const DiscoveryOptions& options,
                                 std::optional<Prototype>* best) {
  ClusterReport report;
  report.cluster = cluster;
  report.selected.assign(selected.begin(), selected.end());
  best->reset();
  if (selected.size() < 2) {
    report.skipped = true;
    report.note = "fewer than two graphs selected";
    return report;
  }
  std::vector<const Graph*> graphs = GraphPointers(dataset, selected);
  std::vector<Eigen::MatrixXd> embeddings;
  for (const Graph* g : graphs) {
    embeddings.push_back(Forward(model, *g).embeddings.nodes);
  }
  const DenseTensor x = BuildScoreTensor(embeddings);
  const MatchingTensor y =
      MaskFeatureMismatch(BuildMatchingTensor(x), graphs);
  if (y.degenerate()) {
    report.skipped = true;
    report.note = "matching tensor is all zero after feature masking";
    return report;
  }
  for (int b = 1; b <= options.budget; ++b) {
    std::optional<SessionCandidate> cand = RunSession(
        graphs, y, b, model, options.target_class, options.search);
    if (!cand) {
      report.skipped_sessions.push_back(b);
      continue;
    }
    if (!*best || cand->p_gnn > (*best)->p_gnn) {
      *best = Prototype{cand->subgraph,
                        cand->source,
                        selected[cand->source],
                        cluster,
                        options.target_class,
                        cand->p_gnn,
                        b};
    }
    report.sessions.push_back(std::move(*cand));
  }
  if (!*best) {
    report.skipped = true;
    report.note = "no session produced a candidate";
  }
  return report;
}

DiscoveryResult Discover(const Model& model, const Dataset& dataset,
                         const DiscoveryOptions& options) {
  if (options.k < 1 || options.budget < 1 || options.num_clusters < 1) {
    throw std::invalid_argument("k, budget and L must be positive");
  }
  std::vector<int> pool;
  std::vector<Eigen::VectorXd> points;
  for (int i : dataset.Indices(options.pool_split)) {
    ForwardResult fr = Forward(model, dataset.graphs[i].graph);
    Eigen::Index pred;
    fr.probs.maxCoeff(&pred);
    if (pred == options.target_class) {
      pool.push_back(i);
      points.push_back(fr.embeddings.graph.transpose());
    }
  }
  if (static_cast<int>(pool.size()) < options.k) {
    throw std::invalid_argument(
        "only " + std::to_string(pool.size()) + " graphs are predicted as class " +
        std::to_string(options.target_class) + ", need at least k = " +
        std::to_string(options.k));
  }
  EmOptions em = options.em;
  em.num_clusters = std::min<int>(options.num_clusters, points.size());
  em.seed = DeriveSeed(options.seed, "em");
  EmResult fit = EmFit(points, em);
  std::vector<int> assignment = Assign(fit.responsibilities);
  ClusterSelection sel = SelectKnn(points, fit.gmm, assignment, options.k);

  DiscoveryResult result;
  result.gmm = fit.gmm;
  for (int l = 0; l < fit.gmm.num_clusters(); ++l) {
    std::vector<int> chosen;
    for (int m : sel.members[l]) chosen.push_back(pool[m]);
    std::optional<Prototype> best;
    ClusterReport report;
    if (chosen.empty()) {
      report.cluster = l;
      report.skipped = true;
      report.note = "empty cluster";
    } else {
      report = DiscoverFromGraphs(model, dataset, chosen, l, options, &best);
    }
    report.size = sel.cluster_sizes[l];
    if (best) result.prototypes.push_back(std::move(*best));
    result.clusters.push_back(std::move(report));
  }
  return result;
}

DiscoveryResult DiscoverSimplified(const Model& model, const Dataset& dataset,
                                   std::span<const int> pool,
                                   const DiscoveryOptions& options) {
  if (static_cast<int>(pool.size()) < options.k) {
    throw std::invalid_argument("pool has " + std::to_string(pool.size()) +
                                " graphs, need at least k = " +
                                std::to_string(options.k));
  }
  std::vector<int> order(pool.begin(), pool.end());
  Rng rng = MakeRng(options.seed, "simplified-pick");
  std::shuffle(order.begin(), order.end(), rng);
  order.resize(options.k);

  DiscoveryResult result;
  std::optional<Prototype> best;
  ClusterReport report =
      DiscoverFromGraphs(model, dataset, order, 0, options, &best);
  report.size = static_cast<int>(pool.size());
  if (best) result.prototypes.push_back(std::move(*best));
  result.clusters.push_back(std::move(report));
  return result;
}

std::vector<int> SimplifiedPool(const Model& model, const Dataset& dataset,
                                const DiscoveryOptions& options, int size) {
  std::vector<int> candidates;
  for (int i : dataset.Indices(options.pool_split)) {
    if (Predict(model, dataset.graphs[i].graph) == options.target_class) {
      candidates.push_back(i);
    }
  }
  if (static_cast<int>(candidates.size()) < size) {
    throw std::invalid_argument("only " + std::to_string(candidates.size()) +
                                " graphs are predicted as the target class, "
                                "pool needs " + std::to_string(size));
  }
  Rng rng = MakeRng(options.seed, "simplified-pool");
  std::shuffle(candidates.begin(), candidates.end(), rng);
  candidates.resize(size);
  std::sort(candidates.begin(), candidates.end());
  return candidates;
}

const Prototype* BestPrototype(const DiscoveryResult& result) {
  const Prototype* best = nullptr;
  for (const auto& p : result.prototypes) {
    if (best == nullptr || p.p_gnn > best->p_gnn) best = &p;
  }
  return best;
}

std::string PrototypeToJson(const Prototype& proto) {
  nlohmann::json j;
  j["class"] = proto.class_id;
  j["cluster"] = proto.cluster;
  j["session"] = proto.session;
  j["p_gnn"] = proto.p_gnn;
  j["source_graph"] = proto.source_graph;
  j["dataset_index"] = proto.dataset_index;
  j["original_node_ids"] = proto.subgraph.original_ids;
  j["num_nodes"] = proto.subgraph.graph.num_nodes();
  j["num_edges"] = proto.subgraph.graph.num_edges();
  return j.dump();
}

}  // namespace protograph
