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

#ifndef PROTOGRAPH_MATCHING_H_
#define PROTOGRAPH_MATCHING_H_

#include <cstdint>
#include <vector>

#include "protograph/graph.h"

namespace protograph {

// True if `pattern` maps injectively into `host` with equal node features and
// every pattern edge landing on a host edge (non-induced, VF2-style).
bool ContainsSubgraph(const Graph& host, const Graph& pattern);

struct MatchResult {
  int tp = 0;  // matched nodes + matched edges
  int fp = 0;  // nodes + edges of the explanation left unmatched
  int fn = 0;  // nodes + edges of the ground truth left unmatched
  std::vector<int> mapping;  // explanation node -> truth node, -1 if none
  bool exhaustive = true;    // false if the expansion cap was hit

  double accuracy() const {
    const int denom = tp + fp + fn;
    return denom == 0 ? 0.0 : static_cast<double>(tp) / denom;
  }
};

// Best feature-respecting partial injective correspondence from `g` into
// `truth`, maximizing matched nodes plus edges of g whose endpoints map onto
// an edge of `truth`. Branch and bound; stops early after `max_expansions`
// search nodes and reports the best correspondence found.
MatchResult MatchGraphs(const Graph& g, const Graph& truth,
                        std::int64_t max_expansions = 20'000'000);

// TP / (TP + FP + FN) under the best correspondence.
double ExplanationAccuracy(const Graph& g, const Graph& truth);

}  // namespace protograph

#endif  // PROTOGRAPH_MATCHING_H_
