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

#ifndef PROTOGRAPH_EXPERIMENTS_H_
#define PROTOGRAPH_EXPERIMENTS_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "protograph/gnn.h"
#include "protograph/graph.h"
#include "protograph/metrics.h"
#include "protograph/proto.h"

namespace protograph {

// Runs an explanation method against a trained model and returns the output
// probability of its explanation, or nullopt if it produced none.
using ExplanationProbe =
    std::function<std::optional<double>(const Model&, const Dataset&)>;

// Full pipeline; reports the best prototype's p_gnn.
ExplanationProbe DiscoveryProbe(const DiscoveryOptions& options);

struct GridPoint {
  std::vector<int> hidden_dims;
  double test_accuracy = 0.0;
  std::optional<double> p_gnn;
  std::string error;  // non-empty if training or explanation failed
};

struct ConsistencyResult {
  std::vector<GridPoint> points;
  std::optional<double> stddev;  // population std of p_gnn over usable points
};

// Trains one model per hidden-dimension configuration and measures the spread
// of the explanation's output probability. Failed points are reported and
// skipped.
ConsistencyResult Consistency(const Dataset& dataset, const ModelConfig& base,
                              const std::vector<std::vector<int>>& grid,
                              const ExplanationProbe& probe, int workers = 1);

// {a, b} for a, b in `widths`: the two-layer grid used by default.
std::vector<std::vector<int>> SquareGrid(const std::vector<int>& widths);

struct CorruptionPoint {
  double ratio = 0.0;
  double test_accuracy = 0.0;
  std::optional<double> p_gnn;
  std::string error;
};

struct FaithfulnessResult {
  std::vector<CorruptionPoint> points;
  std::optional<double> tau;  // Kendall tau-b over (test acc, p_gnn)
};

// 0, 0.05, ..., 0.5.
std::vector<double> DefaultCorruptionSchedule();

FaithfulnessResult Faithfulness(const Dataset& dataset, const ModelConfig& base,
                                const std::vector<double>& ratios,
                                const ExplanationProbe& probe,
                                std::uint64_t seed, int workers = 1);

struct AgreementResult {
  AttributionMap trained;
  AttributionMap initial;
  double alpha = 0.0;
  double alpha0 = 0.0;
  std::optional<double> beta;
  std::optional<double> auroc;
};

// Input x Gradient on the prototype under the trained model and under the
// same architecture at initialization.
AgreementResult MeasureAgreement(const Model& trained, const Model& initial,
                                 const Graph& prototype, int target_class);

}  // namespace protograph

#endif  // PROTOGRAPH_EXPERIMENTS_H_
