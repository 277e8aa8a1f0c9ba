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

#ifndef PROTOGRAPH_PROTO_H_
#define PROTOGRAPH_PROTO_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "protograph/cluster.h"
#include "protograph/gnn.h"
#include "protograph/graph.h"
#include "protograph/tensor.h"

namespace protograph {

struct SearchOptions {
  // Entries sharing a coordinate with a selected tuple are divided by this
  // rate once per shared axis.
  double decay_rate = 10.0;
  int max_iter = 1000;
  int max_subgraph_size = 12;
};

struct DiscoveryOptions {
  int target_class = 0;
  int num_clusters = 2;   // L
  int k = 3;              // graphs per cluster
  int budget = 5;         // search sessions per cluster
  SearchOptions search;
  EmOptions em;           // num_clusters is overridden by the field above
  Split pool_split = Split::kTrain;
  std::uint64_t seed = 0;
};

// b-th highest non-zero entry (b is 1-based), ties broken by the
// lexicographically smallest index tuple. nullopt when fewer than b non-zero
// entries exist.
std::optional<std::vector<int>> InitialTuple(const DenseTensor& y, int b);

// Cartesian product of the neighbor sets of each graph's node, in
// lexicographic order.
std::vector<std::vector<int>> CandidateTuples(
    std::span<const Graph* const> graphs, std::span<const int> last_nodes);

// Multiplies every entry sharing at least one coordinate with `tuple` by
// `factor` once per shared axis.
void DecayTuple(DenseTensor& y, std::span<const int> tuple, double factor);

enum class StopReason { kRunning, kMaxIter, kSizeLimit, kNoCandidates, kAllMasked };

std::string StopReasonName(StopReason reason);

struct SearchState {
  std::vector<std::vector<int>> node_lists;  // S_1..S_k, equal lengths
  int iteration = 0;
  DenseTensor current;                        // decayed copy of Y
  StopReason stop = StopReason::kRunning;

  bool running() const { return stop == StopReason::kRunning; }
  // Number of distinct nodes in the largest list.
  int LargestDistinct() const;
};

// Seeds a session with the b-th best tuple, or nullopt if Y has fewer than b
// non-zero entries.
std::optional<SearchState> StartSession(const MatchingTensor& y, int b,
                                        const SearchOptions& options);

// One expansion: picks the best neighbor tuple of the last selected nodes,
// appends it, and decays. Sets state.stop when the session is over.
void SearchStep(SearchState& state, std::span<const Graph* const> graphs,
                const SearchOptions& options);

struct SessionCandidate {
  int session = 0;        // 1-based b
  int source = 0;         // index within the selected graphs
  Subgraph subgraph;
  double p_gnn = 0.0;
  int iterations = 0;
  StopReason stop = StopReason::kRunning;
  std::vector<std::vector<int>> node_lists;
};

// Runs one session to completion and retrieves the induced subgraph with the
// highest p_gnn among the k graphs (ties to the lowest index).
std::optional<SessionCandidate> RunSession(std::span<const Graph* const> graphs,
                                           const MatchingTensor& y, int b,
                                           const Model& model, int target_class,
                                           const SearchOptions& options);

struct Prototype {
  Subgraph subgraph;
  int source_graph = 0;   // index within the cluster's selected graphs
  int dataset_index = -1; // index into the dataset, when known
  int cluster = 0;
  int class_id = 0;
  double p_gnn = 0.0;
  int session = 0;
};

struct ClusterReport {
  int cluster = 0;
  int size = 0;
  std::vector<int> selected;               // dataset indices, kNN order
  std::vector<SessionCandidate> sessions;  // completed sessions only
  std::vector<int> skipped_sessions;
  bool skipped = false;
  std::string note;
};

struct DiscoveryResult {
  std::vector<Prototype> prototypes;  // one per productive cluster
  std::vector<ClusterReport> clusters;
  std::optional<GmmModel> gmm;        // absent for the simplified path
};

// Phase 2 on a fixed set of graphs: builds and masks the matching tensor,
// runs `budget` sessions, and keeps the candidate with the highest p_gnn
// (ties to the earliest session).
ClusterReport DiscoverFromGraphs(const Model& model, const Dataset& dataset,
                                 std::span<const int> selected, int cluster,
                                 const DiscoveryOptions& options,
                                 std::optional<Prototype>* best);

// Full pipeline: graphs of `pool_split` predicted as the target class are
// clustered on their graph embeddings, the k nearest to each mean are
// selected, and Phase 2 runs per cluster. Throws std::invalid_argument when
// fewer than k graphs are predicted as the target class.
DiscoveryResult Discover(const Model& model, const Dataset& dataset,
                         const DiscoveryOptions& options);

// Skips clustering: draws k graphs uniformly (seeded) from `pool` and runs
// Phase 2 on them. Throws std::invalid_argument if the pool has fewer than k
// graphs.
DiscoveryResult DiscoverSimplified(const Model& model, const Dataset& dataset,
                                   std::span<const int> pool,
                                   const DiscoveryOptions& options);

// Highest-p_gnn prototype across clusters, ties to the lowest cluster.
// `size` graphs drawn (seeded) from the pool split among those the model
// predicts as the target class, ascending. Throws std::invalid_argument if
// fewer qualify.
std::vector<int> SimplifiedPool(const Model& model, const Dataset& dataset,
                                const DiscoveryOptions& options, int size);

const Prototype* BestPrototype(const DiscoveryResult& result);

std::string PrototypeToJson(const Prototype& proto);

}  // namespace protograph

#endif  // PROTOGRAPH_PROTO_H_
