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

#ifndef PROTOGRAPH_GRAPH_H_
#define PROTOGRAPH_GRAPH_H_

#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace protograph {

using Edge = std::pair<int, int>;

// Undirected simple graph with one-hot node features.
//
// Node ids are dense 0-based integers. A node's feature vector is stored as
// the index of its single non-zero entry, so the one-hot invariant holds by
// construction. Edges are normalized to (min, max) and kept sorted; adjacency
// lists are derived once at construction. Instances are immutable.
class Graph {
 public:
  Graph() = default;

  // Throws std::invalid_argument on self-edges, duplicate edges, out-of-range
  // endpoints, out-of-range feature indices, or a mask of the wrong length.
  // An empty `motif_mask` means "no ground truth available".
  Graph(int feature_dim, std::vector<int> node_features,
        std::vector<Edge> edges, std::vector<bool> motif_mask = {});

  int num_nodes() const { return static_cast<int>(features_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  int feature_dim() const { return feature_dim_; }
  bool empty() const { return features_.empty(); }

  // One-hot index of node v's feature vector.
  int feature(int v) const { return features_[v]; }
  const std::vector<int>& features() const { return features_; }

  bool has_motif_mask() const { return !motif_mask_.empty(); }
  bool in_motif(int v) const { return has_motif_mask() && motif_mask_[v]; }
  const std::vector<bool>& motif_mask() const { return motif_mask_; }
  int motif_size() const;

  // Sorted, each pair has first < second.
  const std::vector<Edge>& edges() const { return edges_; }

  // Sorted ascending; never contains v. Throws std::out_of_range for an
  // invalid id.
  std::span<const int> Neighbors(int v) const;
  int Degree(int v) const { return static_cast<int>(Neighbors(v).size()); }
  bool HasEdge(int u, int v) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.feature_dim_ == b.feature_dim_ && a.features_ == b.features_ &&
           a.edges_ == b.edges_ && a.motif_mask_ == b.motif_mask_;
  }

 private:
  int feature_dim_ = 0;
  std::vector<int> features_;
  std::vector<Edge> edges_;
  std::vector<bool> motif_mask_;
  std::vector<int> adj_offsets_{0};
  std::vector<int> adj_;
};

// An induced subgraph plus the ids its nodes had in the parent graph.
struct Subgraph {
  Graph graph;
  std::vector<int> original_ids;  // original_ids[new_id] = parent id
};

// Induced subgraph on `nodes` (duplicates ignored). New ids follow ascending
// parent id order. Features and motif mask are carried over. Throws
// std::invalid_argument for an empty node set or an invalid id.
Subgraph InducedSubgraph(const Graph& g, std::span<const int> nodes);

bool IsConnected(const Graph& g);

// Relabels node v to perm[v]. perm must be a permutation of 0..n-1.
Graph PermuteNodes(const Graph& g, std::span<const int> perm);

enum class Split { kTrain, kVal, kTest };

std::string_view SplitName(Split split);
// Throws std::invalid_argument for an unknown name.
Split ParseSplit(std::string_view name);

struct LabeledGraph {
  Graph graph;
  int label = 0;
  Split split = Split::kTrain;

  friend bool operator==(const LabeledGraph&, const LabeledGraph&) = default;
};

struct Dataset {
  int feature_dim = 0;
  int num_classes = 0;
  std::vector<LabeledGraph> graphs;

  // Indices of the graphs tagged with `split`, ascending.
  std::vector<int> Indices(Split split) const;

  // Throws std::invalid_argument if any label or feature dimension is
  // inconsistent with the header fields.
  void Validate() const;

  friend bool operator==(const Dataset&, const Dataset&) = default;
};

}  // namespace protograph

#endif  // PROTOGRAPH_GRAPH_H_
