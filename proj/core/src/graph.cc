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

#include "protograph/graph.h"

#include <algorithm>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <string>

namespace protograph {

Graph::Graph(int feature_dim, std::vector<int> node_features,
             std::vector<Edge> edges, std::vector<bool> motif_mask)
    : feature_dim_(feature_dim),
      features_(std::move(node_features)),
      motif_mask_(std::move(motif_mask)) {
  if (feature_dim_ < 1) {
    throw std::invalid_argument("feature_dim must be positive");
  }
  const int n = num_nodes();
  for (int v = 0; v < n; ++v) {
    if (features_[v] < 0 || features_[v] >= feature_dim_) {
      throw std::invalid_argument("node " + std::to_string(v) +
                                  ": feature index out of range");
    }
  }
  if (!motif_mask_.empty() && static_cast<int>(motif_mask_.size()) != n) {
    throw std::invalid_argument("motif mask length differs from node count");
  }
  for (auto& [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw std::invalid_argument("edge (" + std::to_string(u) + "," +
                                  std::to_string(v) +
                                  ") has an invalid endpoint");
    }
    if (u == v) {
      throw std::invalid_argument("self-edge on node " + std::to_string(u));
    }
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  auto dup = std::adjacent_find(edges.begin(), edges.end());
  if (dup != edges.end()) {
    throw std::invalid_argument("duplicate edge (" +
                                std::to_string(dup->first) + "," +
                                std::to_string(dup->second) + ")");
  }
  edges_ = std::move(edges);

  std::vector<int> degree(n, 0);
  for (const auto& [u, v] : edges_) {
    ++degree[u];
    ++degree[v];
  }
  adj_offsets_.assign(n + 1, 0);
  for (int v = 0; v < n; ++v) adj_offsets_[v + 1] = adj_offsets_[v] + degree[v];
  adj_.assign(adj_offsets_[n], 0);
  std::vector<int> cursor(adj_offsets_.begin(), adj_offsets_.end() - 1);
  for (const auto& [u, v] : edges_) {
    adj_[cursor[u]++] = v;
    adj_[cursor[v]++] = u;
  }
  for (int v = 0; v < n; ++v) {
    std::sort(adj_.begin() + adj_offsets_[v], adj_.begin() + adj_offsets_[v + 1]);
  }
}

int Graph::motif_size() const {
  return static_cast<int>(
      std::count(motif_mask_.begin(), motif_mask_.end(), true));
}

std::span<const int> Graph::Neighbors(int v) const {
  if (v < 0 || v >= num_nodes()) {
    throw std::out_of_range("node id " + std::to_string(v) + " out of range");
  }
  return std::span<const int>(adj_.data() + adj_offsets_[v],
                              adj_offsets_[v + 1] - adj_offsets_[v]);
}

bool Graph::HasEdge(int u, int v) const {
  auto nbrs = Neighbors(u);
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

Subgraph InducedSubgraph(const Graph& g, std::span<const int> nodes) {
  if (nodes.empty()) {
    throw std::invalid_argument("induced subgraph needs a non-empty node set");
  }
  std::vector<int> ids(nodes.begin(), nodes.end());
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  if (ids.front() < 0 || ids.back() >= g.num_nodes()) {
    throw std::invalid_argument("induced subgraph node id out of range");
  }
  std::vector<int> remap(g.num_nodes(), -1);
  for (int i = 0; i < static_cast<int>(ids.size()); ++i) remap[ids[i]] = i;

  std::vector<int> features;
  std::vector<bool> mask;
  features.reserve(ids.size());
  for (int v : ids) {
    features.push_back(g.feature(v));
    if (g.has_motif_mask()) mask.push_back(g.in_motif(v));
  }
  std::vector<Edge> edges;
  for (const auto& [u, v] : g.edges()) {
    if (remap[u] >= 0 && remap[v] >= 0) edges.emplace_back(remap[u], remap[v]);
  }
  return Subgraph{Graph(g.feature_dim(), std::move(features), std::move(edges),
                        std::move(mask)),
                  std::move(ids)};
}

bool IsConnected(const Graph& g) {
  const int n = g.num_nodes();
  if (n == 0) return true;
  std::vector<bool> seen(n, false);
  std::queue<int> frontier;
  frontier.push(0);
  seen[0] = true;
  int reached = 1;
  while (!frontier.empty()) {
    int v = frontier.front();
    frontier.pop();
    for (int u : g.Neighbors(v)) {
      if (!seen[u]) {
        seen[u] = true;
        ++reached;
        frontier.push(u);
      }
    }
  }
  return reached == n;
}

Graph PermuteNodes(const Graph& g, std::span<const int> perm) {
  const int n = g.num_nodes();
  if (static_cast<int>(perm.size()) != n) {
    throw std::invalid_argument("permutation length differs from node count");
  }
  std::vector<int> check(perm.begin(), perm.end());
  std::sort(check.begin(), check.end());
  std::vector<int> iota(n);
  std::iota(iota.begin(), iota.end(), 0);
  if (check != iota) throw std::invalid_argument("not a permutation");

  std::vector<int> features(n);
  std::vector<bool> mask(g.has_motif_mask() ? n : 0);
  for (int v = 0; v < n; ++v) {
    features[perm[v]] = g.feature(v);
    if (g.has_motif_mask()) mask[perm[v]] = g.in_motif(v);
  }
  std::vector<Edge> edges;
  edges.reserve(g.num_edges());
  for (const auto& [u, v] : g.edges()) edges.emplace_back(perm[u], perm[v]);
  return Graph(g.feature_dim(), std::move(features), std::move(edges),
               std::move(mask));
}

std::string_view SplitName(Split split) {
  switch (split) {
    case Split::kTrain:
      return "train";
    case Split::kVal:
      return "val";
    case Split::kTest:
      return "test";
  }
  return "train";
}

Split ParseSplit(std::string_view name) {
  if (name == "train") return Split::kTrain;
  if (name == "val") return Split::kVal;
  if (name == "test") return Split::kTest;
  throw std::invalid_argument("unknown split '" + std::string(name) + "'");
}

std::vector<int> Dataset::Indices(Split split) const {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(graphs.size()); ++i) {
    if (graphs[i].split == split) out.push_back(i);
  }
  return out;
}

void Dataset::Validate() const {
  if (feature_dim < 1) throw std::invalid_argument("feature_dim must be >= 1");
  if (num_classes < 2) throw std::invalid_argument("num_classes must be >= 2");
  for (int i = 0; i < static_cast<int>(graphs.size()); ++i) {
    const auto& lg = graphs[i];
    if (lg.label < 0 || lg.label >= num_classes) {
      throw std::invalid_argument("graph " + std::to_string(i) +
                                  ": label out of range");
    }
    if (lg.graph.feature_dim() != feature_dim) {
      throw std::invalid_argument("graph " + std::to_string(i) +
                                  ": feature dimension mismatch");
    }
  }
}

}  // namespace protograph
