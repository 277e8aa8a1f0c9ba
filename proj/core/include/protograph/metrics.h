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

#ifndef PROTOGRAPH_METRICS_H_
#define PROTOGRAPH_METRICS_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "protograph/gnn.h"
#include "protograph/graph.h"

namespace protograph {

// |E| / |V|^2.
double Density(const Graph& g);

// Tie-corrected Kendall tau-b. nullopt when either input is entirely tied.
// Throws std::invalid_argument for unequal lengths or fewer than two points.
std::optional<double> KendallTau(std::span<const double> xs,
                                 std::span<const double> ys);

double Pearson(std::span<const double> xs, std::span<const double> ys);

double PopulationStdDev(std::span<const double> values);

// Non-negative per-node scores that sum to one.
struct AttributionMap {
  std::vector<double> scores;
  bool degenerate = false;  // raw scores were all zero; map is uniform
};

// Per node, |sum_f x_v[f] * d p_c / d x_v[f]|, normalized over the graph.
AttributionMap InputXGradient(const Model& model, const Graph& g, int c);

// Attribution mass on nodes flagged in the graph's motif mask.
double ConcentrationScore(const Graph& g, const AttributionMap& attribution);

// alpha / alpha_0 - 1; nullopt when alpha_0 is zero.
std::optional<double> RelativeTrainingGain(double alpha, double alpha0);

// Area under the ROC curve of `scores` ranking positives above negatives,
// ties counted as one half. nullopt unless both classes are present.
std::optional<double> Auroc(std::span<const double> scores,
                            const std::vector<bool>& positive);

struct TimingStats {
  double mean_ns = 0.0;
  double stddev_ns = 0.0;
};

struct ScoringBenchReport {
  int k = 0;
  int dim = 0;
  int samples = 0;
  std::vector<double> product;
  std::vector<double> pairwise_mean;
  std::vector<double> pairwise_geo;
  double rho_mean = 0.0;               // Pearson(product, pairwise_mean)
  double rho_geo = 0.0;                // Pearson(product, pairwise_geo)
  TimingStats time_product;
  TimingStats time_pairwise_mean;
  TimingStats time_pairwise_geo;
};

// Draws `samples` k-tuples of ReLU(N(0, I_b)) vectors, scores each with the
// three functions, correlates the score lists, and times each function per
// call over `repeats` passes. Throws std::invalid_argument for samples < 100
// or k < 2.
ScoringBenchReport BenchScoring(int k, int dim, int samples, std::uint64_t seed,
                                int repeats = 20);

}  // namespace protograph

#endif  // PROTOGRAPH_METRICS_H_
