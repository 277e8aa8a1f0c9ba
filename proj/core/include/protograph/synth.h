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

#ifndef PROTOGRAPH_SYNTH_H_
#define PROTOGRAPH_SYNTH_H_

#include <cstdint>
#include <string_view>
#include <vector>

#include "protograph/graph.h"
#include "protograph/seed.h"

namespace protograph {

// Node feature vocabulary of the synthetic datasets.
inline constexpr int kBackboneFeature = 0;
inline constexpr int kHeadFeature = 1;
inline constexpr int kBodyFeature = 2;
inline constexpr int kSynthFeatureDim = 3;

enum class MotifKind { kHouse, kGrid, kIncompleteHouse, kIncompleteGrid };

// A motif as a standalone graph. Every node carries the head or body feature
// and is marked in the motif mask.
struct MotifSpec {
  MotifKind kind = MotifKind::kHouse;
  Graph graph;
  std::vector<int> head_nodes;
  std::vector<int> body_nodes;
};

// House: 4-cycle 0-1-2-3 plus apex 4 joined to 0 and 1; the apex is the head.
// Grid: 3x3 lattice with node r*3+c; the centre (4) is the head.
// Incomplete house drops the apex; incomplete grid drops corner 8.
MotifSpec MakeMotif(MotifKind kind);

enum class DatasetKind { kBaHouse, kBaGrid };

std::string_view DatasetKindName(DatasetKind kind);
// Accepts "ba-house" and "ba-grid"; throws std::invalid_argument otherwise.
DatasetKind ParseDatasetKind(std::string_view name);

struct GenConfig {
  int n_graphs = 2000;
  int backbone_min = 5;
  int backbone_max = 10;
  int ba_attachment = 1;
  double double_motif_prob = 0.5;
  double train_fraction = 0.90;
  double val_fraction = 0.05;
  std::uint64_t seed = 0;

  // Throws std::invalid_argument describing the first violated constraint.
  void Validate() const;
};

// Barabasi-Albert graph: a clique on ba_attachment + 1 seed nodes, then each
// new node links to ba_attachment distinct existing nodes chosen with
// probability proportional to degree. All nodes get the backbone feature.
Graph GenerateBaGraph(int num_nodes, int attachment, Rng& rng);

// BA backbone with a node count uniform in [backbone_min, backbone_max].
Graph GenerateBackbone(const GenConfig& cfg, Rng& rng);

// Appends the motif and one bridging edge between a uniformly random
// non-motif node of `g` and a uniformly random motif node.
Graph AttachMotif(const Graph& g, const MotifSpec& spec, Rng& rng);

// Class 0 carries the complete motif (one or, for BA-house with probability
// double_motif_prob, two copies); class 1 carries the incomplete motif.
// Labels are balanced and splits follow train/val fractions. The output is a
// pure function of (kind, cfg).
Dataset GenerateDataset(DatasetKind kind, const GenConfig& cfg);

// Flips exactly floor(ratio * |train|) training labels, chosen uniformly
// without replacement, to a different class. Validation and test graphs are
// untouched. Throws std::invalid_argument if ratio is outside [0, 1].
Dataset CorruptLabels(const Dataset& dataset, double ratio, Rng& rng);

}  // namespace protograph

#endif  // PROTOGRAPH_SYNTH_H_
