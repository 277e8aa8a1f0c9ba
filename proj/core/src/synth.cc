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

#include "protograph/synth.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace protograph {
namespace {

MotifSpec BuildMotif(MotifKind kind, int num_nodes, std::vector<Edge> edges,
                     std::vector<int> head_nodes) {
  MotifSpec spec;
  spec.kind = kind;
  std::vector<int> features(num_nodes, kBodyFeature);
  for (int h : head_nodes) features[h] = kHeadFeature;
  for (int v = 0; v < num_nodes; ++v) {
    if (features[v] == kBodyFeature) spec.body_nodes.push_back(v);
  }
  spec.head_nodes = std::move(head_nodes);
  spec.graph = Graph(kSynthFeatureDim, std::move(features), std::move(edges),
                     std::vector<bool>(num_nodes, true));
  return spec;
}

std::vector<Edge> GridEdges(int side) {
  std::vector<Edge> edges;
  for (int r = 0; r < side; ++r) {
    for (int c = 0; c < side; ++c) {
      int v = r * side + c;
      if (c + 1 < side) edges.emplace_back(v, v + 1);
      if (r + 1 < side) edges.emplace_back(v, v + side);
    }
  }
  return edges;
}

}  // namespace

MotifSpec MakeMotif(MotifKind kind) {
  switch (kind) {
    case MotifKind::kHouse:
      return BuildMotif(kind, 5, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 4}, {1, 4}},
                        {4});
    case MotifKind::kIncompleteHouse:
      return BuildMotif(kind, 4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}, {});
    case MotifKind::kGrid:
      return BuildMotif(kind, 9, GridEdges(3), {4});
    case MotifKind::kIncompleteGrid: {
      std::vector<Edge> edges;
      for (const auto& e : GridEdges(3)) {
        if (e.first != 8 && e.second != 8) edges.push_back(e);
      }
      return BuildMotif(kind, 8, std::move(edges), {4});
    }
  }
  throw std::invalid_argument("unknown motif kind");
}

std::string_view DatasetKindName(DatasetKind kind) {
  return kind == DatasetKind::kBaHouse ? "ba-house" : "ba-grid";
}

DatasetKind ParseDatasetKind(std::string_view name) {
  if (name == "ba-house") return DatasetKind::kBaHouse;
  if (name == "ba-grid") return DatasetKind::kBaGrid;
  throw std::invalid_argument("unknown dataset kind '" + std::string(name) +
                              "' (expected ba-house or ba-grid)");
}

void GenConfig::Validate() const {
  if (n_graphs < 0) throw std::invalid_argument("n_graphs must be >= 0");
  if (ba_attachment < 1) {
    throw std::invalid_argument("ba_attachment must be >= 1");
  }
  if (backbone_min < ba_attachment + 1) {
    throw std::invalid_argument("backbone_min must be >= ba_attachment + 1");
  }
  if (backbone_max < backbone_min) {
    throw std::invalid_argument("backbone_max must be >= backbone_min");
  }
  if (!(double_motif_prob >= 0.0 && double_motif_prob <= 1.0)) {
    throw std::invalid_argument("double_motif_prob must lie in [0, 1]");
  }
  if (!(train_fraction > 0.0 && val_fraction >= 0.0 &&
        train_fraction + val_fraction <= 1.0)) {
    throw std::invalid_argument("invalid split fractions");
  }
}

Graph GenerateBaGraph(int num_nodes, int attachment, Rng& rng) {
  if (attachment < 1 || num_nodes < attachment + 1) {
    throw std::invalid_argument("BA graph needs num_nodes >= attachment + 1");
  }
  std::vector<Edge> edges;
  // Each node appears once per incident edge end.
  std::vector<int> endpoints;
  const int seed_nodes = attachment + 1;
  for (int u = 0; u < seed_nodes; ++u) {
    for (int v = u + 1; v < seed_nodes; ++v) {
      edges.emplace_back(u, v);
      endpoints.push_back(u);
      endpoints.push_back(v);
    }
  }
  std::vector<int> targets;
  for (int v = seed_nodes; v < num_nodes; ++v) {
    targets.clear();
    while (static_cast<int>(targets.size()) < attachment) {
      std::uniform_int_distribution<size_t> pick(0, endpoints.size() - 1);
      int t = endpoints[pick(rng)];
      if (std::find(targets.begin(), targets.end(), t) == targets.end()) {
        targets.push_back(t);
      }
    }
    for (int t : targets) {
      edges.emplace_back(t, v);
      endpoints.push_back(t);
      endpoints.push_back(v);
    }
  }
  return Graph(kSynthFeatureDim, std::vector<int>(num_nodes, kBackboneFeature),
               std::move(edges), std::vector<bool>(num_nodes, false));
}

Graph GenerateBackbone(const GenConfig& cfg, Rng& rng) {
  cfg.Validate();
  std::uniform_int_distribution<int> size(cfg.backbone_min, cfg.backbone_max);
  return GenerateBaGraph(size(rng), cfg.ba_attachment, rng);
}

Graph AttachMotif(const Graph& g, const MotifSpec& spec, Rng& rng) {
  if (g.empty()) throw std::invalid_argument("cannot attach to an empty graph");
  std::vector<int> anchors;
  for (int v = 0; v < g.num_nodes(); ++v) {
    if (!g.in_motif(v)) anchors.push_back(v);
  }
  if (anchors.empty()) throw std::invalid_argument("graph has no backbone node");

  const int offset = g.num_nodes();
  const Graph& motif = spec.graph;
  std::vector<int> features = g.features();
  std::vector<bool> mask = g.has_motif_mask()
                               ? g.motif_mask()
                               : std::vector<bool>(g.num_nodes(), false);
  for (int v = 0; v < motif.num_nodes(); ++v) {
    features.push_back(motif.feature(v));
    mask.push_back(true);
  }
  std::vector<Edge> edges = g.edges();
  for (const auto& [u, v] : motif.edges()) {
    edges.emplace_back(u + offset, v + offset);
  }
  std::uniform_int_distribution<size_t> pick_anchor(0, anchors.size() - 1);
  std::uniform_int_distribution<int> pick_motif(0, motif.num_nodes() - 1);
  int anchor = anchors[pick_anchor(rng)];
  int target = offset + pick_motif(rng);
  edges.emplace_back(anchor, target);
  return Graph(g.feature_dim(), std::move(features), std::move(edges),
               std::move(mask));
}

Dataset GenerateDataset(DatasetKind kind, const GenConfig& cfg) {
  cfg.Validate();
  const int n = cfg.n_graphs;

  std::vector<int> labels(n, 1);
  std::fill(labels.begin(), labels.begin() + n / 2, 0);
  Rng label_rng = MakeRng(cfg.seed, "labels");
  std::shuffle(labels.begin(), labels.end(), label_rng);

  const int n_train = static_cast<int>(std::lround(cfg.train_fraction * n));
  const int n_val = std::min(
      n - n_train, static_cast<int>(std::lround(cfg.val_fraction * n)));
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng split_rng = MakeRng(cfg.seed, "split");
  std::shuffle(order.begin(), order.end(), split_rng);
  std::vector<Split> splits(n, Split::kTest);
  for (int i = 0; i < n; ++i) {
    if (i < n_train) {
      splits[order[i]] = Split::kTrain;
    } else if (i < n_train + n_val) {
      splits[order[i]] = Split::kVal;
    }
  }

  const bool house = kind == DatasetKind::kBaHouse;
  const MotifSpec complete =
      MakeMotif(house ? MotifKind::kHouse : MotifKind::kGrid);
  const MotifSpec incomplete = MakeMotif(
      house ? MotifKind::kIncompleteHouse : MotifKind::kIncompleteGrid);

  Dataset out;
  out.feature_dim = kSynthFeatureDim;
  out.num_classes = 2;
  out.graphs.resize(n);
  for (int i = 0; i < n; ++i) {
    Rng rng = MakeRng(cfg.seed, "graph", static_cast<std::uint64_t>(i));
    Graph g = GenerateBackbone(cfg, rng);
    if (labels[i] == 0) {
      g = AttachMotif(g, complete, rng);
      std::bernoulli_distribution twice(cfg.double_motif_prob);
      if (house && twice(rng)) g = AttachMotif(g, complete, rng);
    } else {
      g = AttachMotif(g, incomplete, rng);
    }
    out.graphs[i] = LabeledGraph{std::move(g), labels[i], splits[i]};
  }
  return out;
}

Dataset CorruptLabels(const Dataset& dataset, double ratio, Rng& rng) {
  if (!(ratio >= 0.0 && ratio <= 1.0)) {
    throw std::invalid_argument("corruption ratio must lie in [0, 1]");
  }
  if (dataset.num_classes < 2) {
    throw std::invalid_argument("label corruption needs at least two classes");
  }
  Dataset out = dataset;
  std::vector<int> train = dataset.Indices(Split::kTrain);
  const int flips = static_cast<int>(
      std::floor(ratio * static_cast<double>(train.size()) + 1e-9));
  std::shuffle(train.begin(), train.end(), rng);
  std::uniform_int_distribution<int> shift(1, dataset.num_classes - 1);
  for (int i = 0; i < flips; ++i) {
    auto& lg = out.graphs[train[i]];
    lg.label = (lg.label + shift(rng)) % dataset.num_classes;
  }
  return out;
}

}  // namespace protograph
