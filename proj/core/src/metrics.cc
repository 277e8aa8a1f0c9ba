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

#include "protograph/metrics.h"

#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "protograph/scoring.h"
#include "protograph/seed.h"

namespace protograph {
namespace {

int Sign(double x) { return (x > 0.0) - (x < 0.0); }

double Mean(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

template <typename Fn>
TimingStats TimePerCall(const std::vector<std::vector<Eigen::VectorXd>>& tuples,
                        int repeats, Fn fn) {
  std::vector<double> per_call;
  volatile double sink = 0.0;
  for (int r = 0; r < repeats; ++r) {
    auto start = std::chrono::steady_clock::now();
    double acc = 0.0;
    for (const auto& t : tuples) acc += fn(t);
    auto stop = std::chrono::steady_clock::now();
    sink = sink + acc;
    per_call.push_back(
        std::chrono::duration<double, std::nano>(stop - start).count() /
        static_cast<double>(tuples.size()));
  }
  return {Mean(per_call), PopulationStdDev(per_call)};
}

}  // namespace

double Density(const Graph& g) {
  if (g.empty()) throw std::invalid_argument("density of an empty graph");
  const double n = g.num_nodes();
  return g.num_edges() / (n * n);
}

std::optional<double> KendallTau(std::span<const double> xs,
                                 std::span<const double> ys) {
  if (xs.size() != ys.size()) {
    throw std::invalid_argument("Kendall tau needs equal-length inputs");
  }
  if (xs.size() < 2) throw std::invalid_argument("Kendall tau needs >= 2 points");
  const size_t n = xs.size();
  double concordant = 0.0, discordant = 0.0, tied_x = 0.0, tied_y = 0.0;
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      const int sx = Sign(xs[i] - xs[j]);
      const int sy = Sign(ys[i] - ys[j]);
      if (sx == 0) tied_x += 1.0;
      if (sy == 0) tied_y += 1.0;
      if (sx * sy > 0) concordant += 1.0;
      if (sx * sy < 0) discordant += 1.0;
    }
  }
  const double pairs = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
  const double denom = std::sqrt((pairs - tied_x) * (pairs - tied_y));
  if (denom == 0.0) return std::nullopt;
  return (concordant - discordant) / denom;
}

double Pearson(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2) {
    throw std::invalid_argument("Pearson needs two equal-length samples");
  }
  const double mx = Mean(xs), my = Mean(ys);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

double PopulationStdDev(std::span<const double> values) {
  if (values.empty()) {
    throw std::invalid_argument("standard deviation of an empty sample");
  }
  // Welford update; exact zero for constant input.
  double mean = 0.0;
  double ss = 0.0;
  double n = 0.0;
  for (double v : values) {
    n += 1.0;
    const double delta = v - mean;
    mean += delta / n;
    ss += delta * (v - mean);
  }
  return std::sqrt(ss / n);
}

AttributionMap InputXGradient(const Model& model, const Graph& g, int c) {
  Eigen::MatrixXd grad = InputGradients(model, g, c);
  AttributionMap out;
  out.scores.resize(g.num_nodes());
  double total = 0.0;
  for (int v = 0; v < g.num_nodes(); ++v) {
    // One-hot input: the sum over features keeps only the hot entry.
    out.scores[v] = std::abs(grad(v, g.feature(v)));
    total += out.scores[v];
  }
  if (total <= 0.0) {
    out.degenerate = true;
    std::fill(out.scores.begin(), out.scores.end(), 1.0 / g.num_nodes());
  } else {
    for (double& s : out.scores) s /= total;
  }
  return out;
}

double ConcentrationScore(const Graph& g, const AttributionMap& attribution) {
  if (static_cast<int>(attribution.scores.size()) != g.num_nodes()) {
    throw std::invalid_argument("attribution size differs from node count");
  }
  double alpha = 0.0;
  for (int v = 0; v < g.num_nodes(); ++v) {
    if (g.in_motif(v)) alpha += attribution.scores[v];
  }
  return alpha;
}

std::optional<double> RelativeTrainingGain(double alpha, double alpha0) {
  if (alpha0 == 0.0) return std::nullopt;
  return alpha / alpha0 - 1.0;
}

std::optional<double> Auroc(std::span<const double> scores,
                            const std::vector<bool>& positive) {
  if (scores.size() != positive.size()) {
    throw std::invalid_argument("AUROC needs one label per score");
  }
  double pos = 0.0, neg = 0.0, wins = 0.0;
  for (size_t i = 0; i < scores.size(); ++i) {
    if (!positive[i]) continue;
    pos += 1.0;
    for (size_t j = 0; j < scores.size(); ++j) {
      if (positive[j]) continue;
      if (scores[i] > scores[j]) wins += 1.0;
      if (scores[i] == scores[j]) wins += 0.5;
    }
  }
  for (bool p : positive) neg += p ? 0.0 : 1.0;
  if (pos == 0.0 || neg == 0.0) return std::nullopt;
  return wins / (pos * neg);
}

ScoringBenchReport BenchScoring(int k, int dim, int samples, std::uint64_t seed,
                                int repeats) {
  if (samples < 100) throw std::invalid_argument("bench needs >= 100 samples");
  if (k < 2 || dim < 1) throw std::invalid_argument("bench needs k >= 2, b >= 1");
  Rng rng = MakeRng(seed, "bench-scoring");
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<std::vector<Eigen::VectorXd>> tuples(samples);
  for (auto& t : tuples) {
    for (int i = 0; i < k; ++i) {
      Eigen::VectorXd v(dim);
      for (int j = 0; j < dim; ++j) v[j] = std::max(0.0, normal(rng));
      t.push_back(std::move(v));
    }
  }
  ScoringBenchReport r;
  r.k = k;
  r.dim = dim;
  r.samples = samples;
  for (const auto& t : tuples) {
    r.product.push_back(ScoreProduct(t));
    r.pairwise_mean.push_back(ScorePairwiseMean(t));
    r.pairwise_geo.push_back(ScorePairwiseGeometric(t));
  }
  r.rho_mean = Pearson(r.product, r.pairwise_mean);
  r.rho_geo = Pearson(r.product, r.pairwise_geo);
  r.time_product = TimePerCall(tuples, repeats, [](const auto& t) {
    return ScoreProduct(t);
  });
  r.time_pairwise_mean = TimePerCall(tuples, repeats, [](const auto& t) {
    return ScorePairwiseMean(t);
  });
  r.time_pairwise_geo = TimePerCall(tuples, repeats, [](const auto& t) {
    return ScorePairwiseGeometric(t);
  });
  return r;
}

}  // namespace protograph
