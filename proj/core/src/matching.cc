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

#include "protograph/matching.h"

#include <algorithm>
#include <queue>

namespace protograph {
namespace {

// Breadth-first order over every component, starting each component from its
// highest-degree unvisited node, so neighbor constraints bind early.
std::vector<int> SearchOrder(const Graph& g) {
  const int n = g.num_nodes();
  std::vector<int> by_degree(n);
  for (int v = 0; v < n; ++v) by_degree[v] = v;
  std::stable_sort(by_degree.begin(), by_degree.end(),
                   [&](int a, int b) { return g.Degree(a) > g.Degree(b); });
  std::vector<bool> seen(n, false);
  std::vector<int> order;
  for (int root : by_degree) {
    if (seen[root]) continue;
    std::queue<int> q;
    q.push(root);
    seen[root] = true;
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      order.push_back(v);
      for (int u : g.Neighbors(v)) {
        if (!seen[u]) {
          seen[u] = true;
          q.push(u);
        }
      }
    }
  }
  return order;
}

class Matcher {
 public:
  Matcher(const Graph& g, const Graph& truth, std::int64_t cap)
      : g_(g), truth_(truth), cap_(cap), order_(SearchOrder(g)) {
    const int n = g.num_nodes();
    position_.assign(n, 0);
    for (int i = 0; i < n; ++i) position_[order_[i]] = i;
    earlier_.resize(n);
    suffix_nodes_.assign(n + 1, 0);
    suffix_edges_.assign(n + 1, 0);
    std::vector<int> truth_count(truth.feature_dim() + 1, 0);
    for (int t = 0; t < truth.num_nodes(); ++t) ++truth_count[truth.feature(t)];
    for (int i = n - 1; i >= 0; --i) {
      const int v = order_[i];
      const bool mappable = g.feature(v) < truth.feature_dim() &&
                            truth_count[g.feature(v)] > 0;
      suffix_nodes_[i] = suffix_nodes_[i + 1] + (mappable ? 1 : 0);
      int closing = 0;
      for (int u : g.Neighbors(v)) {
        if (position_[u] < i) {
          earlier_[i].push_back(u);
          ++closing;
        }
      }
      suffix_edges_[i] = suffix_edges_[i + 1] + closing;
    }
    map_.assign(n, -1);
    used_.assign(truth.num_nodes(), false);
    best_.mapping = map_;
  }

  MatchResult Run() {
    Search(0, 0, 0);
    best_.fp = g_.num_nodes() + g_.num_edges() - best_.tp;
    best_.fn = truth_.num_nodes() + truth_.num_edges() - best_.tp;
    return best_;
  }

 private:
  void Search(int i, int nodes, int edges) {
    if (nodes + edges > best_.tp) {
      best_.tp = nodes + edges;
      best_.mapping = map_;
    }
    if (i == static_cast<int>(order_.size())) return;
    if (++expansions_ > cap_) {
      best_.exhaustive = false;
      return;
    }
    const int free_truth = truth_.num_nodes() - nodes;
    const int bound = nodes + edges + std::min(suffix_nodes_[i], free_truth) +
                      std::min(suffix_edges_[i], truth_.num_edges() - edges);
    if (bound <= best_.tp) return;

    const int v = order_[i];
    std::vector<std::pair<int, int>> options;  // (gain, truth node)
    for (int t = 0; t < truth_.num_nodes(); ++t) {
      if (used_[t] || truth_.feature(t) != g_.feature(v)) continue;
      int gain = 0;
      for (int u : earlier_[i]) {
        if (map_[u] >= 0 && truth_.HasEdge(map_[u], t)) ++gain;
      }
      options.emplace_back(gain, t);
    }
    std::stable_sort(options.begin(), options.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    for (const auto& [gain, t] : options) {
      map_[v] = t;
      used_[t] = true;
      Search(i + 1, nodes + 1, edges + gain);
      used_[t] = false;
      map_[v] = -1;
      if (!best_.exhaustive) return;
    }
    Search(i + 1, nodes, edges);
  }

  const Graph& g_;
  const Graph& truth_;
  const std::int64_t cap_;
  std::vector<int> order_;
  std::vector<int> position_;
  std::vector<std::vector<int>> earlier_;
  std::vector<int> suffix_nodes_;
  std::vector<int> suffix_edges_;
  std::vector<int> map_;
  std::vector<bool> used_;
  std::int64_t expansions_ = 0;
  MatchResult best_;
};

bool Extend(const Graph& host, const Graph& pattern,
            const std::vector<int>& order, size_t i, std::vector<int>& map,
            std::vector<bool>& used) {
  if (i == order.size()) return true;
  const int p = order[i];
  // Candidates: neighbors of an already mapped pattern neighbor, if any.
  std::vector<int> candidates;
  int anchor = -1;
  for (int q : pattern.Neighbors(p)) {
    if (map[q] >= 0) {
      anchor = map[q];
      break;
    }
  }
  if (anchor >= 0) {
    auto nb = host.Neighbors(anchor);
    candidates.assign(nb.begin(), nb.end());
  } else {
    candidates.resize(host.num_nodes());
    for (int h = 0; h < host.num_nodes(); ++h) candidates[h] = h;
  }
  for (int h : candidates) {
    if (used[h] || host.feature(h) != pattern.feature(p)) continue;
    if (host.Degree(h) < pattern.Degree(p)) continue;
    bool ok = true;
    for (int q : pattern.Neighbors(p)) {
      if (map[q] >= 0 && !host.HasEdge(map[q], h)) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    map[p] = h;
    used[h] = true;
    if (Extend(host, pattern, order, i + 1, map, used)) return true;
    used[h] = false;
    map[p] = -1;
  }
  return false;
}

}  // namespace

bool ContainsSubgraph(const Graph& host, const Graph& pattern) {
  if (pattern.num_nodes() > host.num_nodes() ||
      pattern.num_edges() > host.num_edges()) {
    return false;
  }
  if (pattern.empty()) return true;
  std::vector<int> order = SearchOrder(pattern);
  std::vector<int> map(pattern.num_nodes(), -1);
  std::vector<bool> used(host.num_nodes(), false);
  return Extend(host, pattern, order, 0, map, used);
}

MatchResult MatchGraphs(const Graph& g, const Graph& truth,
                        std::int64_t max_expansions) {
  return Matcher(g, truth, max_expansions).Run();
}

double ExplanationAccuracy(const Graph& g, const Graph& truth) {
  return MatchGraphs(g, truth).accuracy();
}

}  // namespace protograph
