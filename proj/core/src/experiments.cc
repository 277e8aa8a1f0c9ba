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

#include "protograph/experiments.h"

#include <atomic>
#include <exception>
#include <thread>

#include "protograph/seed.h"
#include "protograph/synth.h"

namespace protograph {
namespace {

// Runs job(i) for i in [0, n) on up to `workers` threads. Each job writes
// only its own slot, so results do not depend on scheduling.
template <typename Job>
void ParallelFor(int n, int workers, Job job) {
  workers = std::max(1, std::min(workers, n));
  if (workers == 1) {
    for (int i = 0; i < n; ++i) job(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> threads;
  for (int w = 0; w < workers; ++w) {
    threads.emplace_back([&] {
      for (int i = next++; i < n; i = next++) job(i);
    });
  }
  for (auto& t : threads) t.join();
}

}  // namespace

ExplanationProbe DiscoveryProbe(const DiscoveryOptions& options) {
  return [options](const Model& model,
                   const Dataset& dataset) -> std::optional<double> {
    DiscoveryResult result = Discover(model, dataset, options);
    const Prototype* best = BestPrototype(result);
    if (best == nullptr) return std::nullopt;
    return best->p_gnn;
  };
}

std::vector<std::vector<int>> SquareGrid(const std::vector<int>& widths) {
  std::vector<std::vector<int>> grid;
  for (int a : widths) {
    for (int b : widths) grid.push_back({a, b});
  }
  return grid;
}

ConsistencyResult Consistency(const Dataset& dataset, const ModelConfig& base,
                              const std::vector<std::vector<int>>& grid,
                              const ExplanationProbe& probe, int workers) {
  ConsistencyResult result;
  result.points.resize(grid.size());
  ParallelFor(static_cast<int>(grid.size()), workers, [&](int i) {
    GridPoint& point = result.points[i];
    point.hidden_dims = grid[i];
    try {
      ModelConfig cfg = base;
      cfg.hidden_dims = grid[i];
      Model model = Train(cfg, dataset).model;
      point.test_accuracy = SplitAccuracy(model, dataset, Split::kTest);
      point.p_gnn = probe(model, dataset);
      if (!point.p_gnn) point.error = "no explanation produced";
    } catch (const std::exception& e) {
      point.error = e.what();
    }
  });
  std::vector<double> values;
  for (const auto& p : result.points) {
    if (p.p_gnn) values.push_back(*p.p_gnn);
  }
  if (!values.empty()) result.stddev = PopulationStdDev(values);
  return result;
}

std::vector<double> DefaultCorruptionSchedule() {
  std::vector<double> out;
  for (int i = 0; i <= 10; ++i) out.push_back(0.05 * i);
  return out;
}

FaithfulnessResult Faithfulness(const Dataset& dataset, const ModelConfig& base,
                                const std::vector<double>& ratios,
                                const ExplanationProbe& probe,
                                std::uint64_t seed, int workers) {
  if (ratios.empty()) throw std::invalid_argument("empty corruption schedule");
  FaithfulnessResult result;
  result.points.resize(ratios.size());
  ParallelFor(static_cast<int>(ratios.size()), workers, [&](int i) {
    CorruptionPoint& point = result.points[i];
    point.ratio = ratios[i];
    try {
      Rng rng = MakeRng(seed, "corrupt", i);
      Dataset corrupted = CorruptLabels(dataset, ratios[i], rng);
      Model model = Train(base, corrupted).model;
      point.test_accuracy = SplitAccuracy(model, corrupted, Split::kTest);
      point.p_gnn = probe(model, corrupted);
      if (!point.p_gnn) point.error = "no explanation produced";
    } catch (const std::exception& e) {
      point.error = e.what();
    }
  });
  std::vector<double> acc, prob;
  for (const auto& p : result.points) {
    if (!p.p_gnn) continue;
    acc.push_back(p.test_accuracy);
    prob.push_back(*p.p_gnn);
  }
  if (acc.size() >= 2) result.tau = KendallTau(acc, prob);
  return result;
}

AgreementResult MeasureAgreement(const Model& trained, const Model& initial,
                                 const Graph& prototype, int target_class) {
  AgreementResult r;
  r.trained = InputXGradient(trained, prototype, target_class);
  r.initial = InputXGradient(initial, prototype, target_class);
  r.alpha = ConcentrationScore(prototype, r.trained);
  r.alpha0 = ConcentrationScore(prototype, r.initial);
  r.beta = RelativeTrainingGain(r.alpha, r.alpha0);
  std::vector<bool> truth(prototype.num_nodes());
  for (int v = 0; v < prototype.num_nodes(); ++v) truth[v] = prototype.in_motif(v);
  r.auroc = Auroc(r.trained.scores, truth);
  return r;
}

}  // namespace protograph
