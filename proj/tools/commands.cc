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

#include "commands.h"

#include <openssl/evp.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "protograph/experiments.h"
#include "protograph/graph_io.h"
#include "protograph/matching.h"
#include "protograph/metrics.h"
#include "protograph/seed.h"

namespace protograph::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

fs::path RequireOutDir(const std::string& out) {
  if (out.empty()) throw std::invalid_argument("--out is required");
  fs::path dir(out);
  fs::create_directories(dir);
  return dir;
}

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json GenConfigJson(const std::string& kind, const GenConfig& c) {
  return {{"kind", kind},
          {"n_graphs", c.n_graphs},
          {"backbone_min", c.backbone_min},
          {"backbone_max", c.backbone_max},
          {"ba_attachment", c.ba_attachment},
          {"double_motif_prob", c.double_motif_prob},
          {"train_fraction", c.train_fraction},
          {"val_fraction", c.val_fraction},
          {"seed", c.seed}};
}

json DiscoveryOptionsJson(const DiscoveryOptions& o) {
  return {{"class", o.target_class},
          {"L", o.num_clusters},
          {"k", o.k},
          {"budget", o.budget},
          {"decay", o.search.decay_rate},
          {"max_iter", o.search.max_iter},
          {"max_size", o.search.max_subgraph_size},
          {"pool_split", SplitName(o.pool_split)},
          {"seed", o.seed}};
}

DiscoveryResult Explain(const ExplainArgs& args, const Model& model,
                        const Dataset& dataset) {
  if (!args.simplified) return Discover(model, dataset, args.discovery);
  std::vector<int> pool = SimplifiedPool(model, dataset, args.discovery, args.pool);
  return DiscoverSimplified(model, dataset, pool, args.discovery);
}

std::string SessionsCsv(const DiscoveryResult& result, const DiscoveryOptions& o) {
  std::ostringstream csv;
  csv << "class,cluster,session,status,p_gnn,num_nodes,num_edges,iterations,"
         "stop,source_graph\n";
  for (const ClusterReport& report : result.clusters) {
    for (int b = 1; b <= o.budget; ++b) {
      auto it = std::find_if(report.sessions.begin(), report.sessions.end(),
                             [b](const SessionCandidate& s) { return s.session == b; });
      csv << o.target_class << ',' << report.cluster << ',' << b << ',';
      if (it == report.sessions.end()) {
        csv << (report.skipped ? "cluster-skipped" : "skipped") << ",,,,,,\n";
        continue;
      }
      csv << "ok," << Num(it->p_gnn) << ',' << it->subgraph.graph.num_nodes() << ','
          << it->subgraph.graph.num_edges() << ',' << it->iterations << ','
          << StopReasonName(it->stop) << ',' << report.selected[it->source] << '\n';
    }
  }
  return csv.str();
}

void WriteExplainArtifacts(const fs::path& dir, const DiscoveryResult& result,
                           const DiscoveryOptions& o) {
  json protos = json::array();
  for (const Prototype& p : result.prototypes) {
    protos.push_back(json::parse(PrototypeToJson(p)));
    const std::string name =
        "prototype_c" + std::to_string(p.class_id) + "_l" + std::to_string(p.cluster);
    ExportDot(p.subgraph.graph, dir / (name + ".dot"), name);
  }
  WriteFile(dir / "prototypes.json", protos.dump(1) + "\n");
  WriteFile(dir / "sessions.csv", SessionsCsv(result, o));
  json clusters = json::array();
  for (const ClusterReport& r : result.clusters) {
    clusters.push_back({{"cluster", r.cluster},
                        {"size", r.size},
                        {"selected", r.selected},
                        {"skipped_sessions", r.skipped_sessions},
                        {"skipped", r.skipped},
                        {"note", r.note}});
  }
  json report = {{"options", DiscoveryOptionsJson(o)}, {"clusters", clusters}};
  WriteFile(dir / "clusters.json", report.dump(1) + "\n");
  if (result.gmm) WriteFile(dir / "gmm.json", GmmToJson(*result.gmm));
  for (const ClusterReport& r : result.clusters) {
    if (r.skipped) std::cerr << "warning: cluster " << r.cluster << ": " << r.note << "\n";
  }
}

Graph GroundTruth(const std::string& motif) {
  if (motif == "house") return MakeMotif(MotifKind::kHouse).graph;
  if (motif == "grid") return MakeMotif(MotifKind::kGrid).graph;
  throw std::invalid_argument("unknown motif '" + motif + "' (house|grid)");
}

// Long-format metrics table; see docs/metrics_schema.md.
class MetricsTable {
 public:
  MetricsTable(std::string dataset, std::string method, std::string config,
               std::uint64_t seed)
      : prefix_(std::move(dataset) + ',' + std::move(method) + ',' +
                std::move(config) + ',' + std::to_string(seed) + ',') {
    out_ << "dataset,method,config,seed,scope,metric,value\n";
  }

  void Add(const std::string& scope, const std::string& metric,
           std::optional<double> value) {
    out_ << prefix_ << scope << ',' << metric << ',' << (value ? Num(*value) : "NA")
         << '\n';
  }

  std::string str() const { return out_.str(); }

 private:
  std::string prefix_;
  std::ostringstream out_;
};

}  // namespace

std::string Sha256Hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 failed");
  }
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof(buf), "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

void RunGen(const GenArgs& args) {
  if (args.out.empty()) throw std::invalid_argument("--out is required");
  const DatasetKind kind = ParseDatasetKind(args.kind);
  const Dataset dataset = GenerateDataset(kind, args.config);
  const std::string text = DatasetToJson(dataset);
  WriteFile(args.out, text);
  json provenance = {{"command", "gen"},
                     {"config", GenConfigJson(args.kind, args.config)},
                     {"seed", args.config.seed},
                     {"sha256", Sha256Hex(text)}};
  WriteFile(args.out + ".provenance.json", provenance.dump(1) + "\n");
}

void RunTrain(const TrainArgs& args) {
  const fs::path dir = RequireOutDir(args.out);
  const Dataset clean = LoadDataset(args.dataset);
  Dataset dataset = clean;
  if (args.corrupt > 0.0) {
    Rng rng = MakeRng(args.config.seed, "corrupt");
    dataset = CorruptLabels(clean, args.corrupt, rng);
  }
  ModelConfig config = args.config;
  config.feature_dim = dataset.feature_dim;
  config.num_classes = dataset.num_classes;
  const TrainResult result = Train(config, dataset);
  SaveModel(result.model, dir / "model.json");

  json history = json::array();
  for (const EpochStats& e : result.history) {
    history.push_back({{"epoch", e.epoch},
                       {"train_loss", e.train_loss},
                       {"val_loss", e.val_loss},
                       {"val_accuracy", e.val_accuracy}});
  }
  json metrics = {
      {"corrupt_ratio", args.corrupt},
      {"best_epoch", result.best_epoch},
      {"train_accuracy", SplitAccuracy(result.model, dataset, Split::kTrain)},
      {"train_accuracy_clean_labels", SplitAccuracy(result.model, clean, Split::kTrain)},
      {"val_accuracy", SplitAccuracy(result.model, dataset, Split::kVal)},
      {"test_accuracy", SplitAccuracy(result.model, dataset, Split::kTest)},
      {"history", history}};
  WriteFile(dir / "metrics.json", metrics.dump(1) + "\n");
  std::cout << "test accuracy " << metrics["test_accuracy"].get<double>() << "\n";
}

void RunExplain(const ExplainArgs& args) {
  const fs::path dir = RequireOutDir(args.out);
  const Dataset dataset = LoadDataset(args.dataset);
  const Model model = LoadModel(args.model);
  const DiscoveryResult result = Explain(args, model, dataset);
  WriteExplainArtifacts(dir, result, args.discovery);
  std::cout << result.prototypes.size() << " prototype(s) written to " << dir.string()
            << "\n";
}

void RunEval(const EvalArgs& args) {
  const fs::path dir = RequireOutDir(args.explain.out);
  const Dataset dataset = LoadDataset(args.explain.dataset);
  const Model model = LoadModel(args.explain.model);
  const Graph truth = GroundTruth(args.motif);
  const std::string method = args.explain.simplified ? "prototype-search-simplified" : "prototype-search";
  MetricsTable table(fs::path(args.explain.dataset).filename().string(), method,
                     "L" + std::to_string(args.explain.discovery.num_clusters) + "-k" +
                         std::to_string(args.explain.discovery.k) + "-budget" +
                         std::to_string(args.explain.discovery.budget),
                     args.explain.discovery.seed);

  const DiscoveryResult result = Explain(args.explain, model, dataset);
  const Model initial = InitModel(model.config);
  for (const Prototype& p : result.prototypes) {
    const std::string scope = "cluster" + std::to_string(p.cluster);
    const Graph& g = p.subgraph.graph;
    const MatchResult match = MatchGraphs(g, truth);
    table.Add(scope, "p_gnn", p.p_gnn);
    table.Add(scope, "accuracy", match.accuracy());
    table.Add(scope, "tp", match.tp);
    table.Add(scope, "fp", match.fp);
    table.Add(scope, "fn", match.fn);
    table.Add(scope, "density", Density(g));
    table.Add(scope, "contains_motif", ContainsSubgraph(g, truth) ? 1.0 : 0.0);
    if (args.agreement) {
      const AgreementResult a = MeasureAgreement(model, initial, g, p.class_id);
      table.Add(scope, "alpha", a.alpha);
      table.Add(scope, "alpha0", a.alpha0);
      table.Add(scope, "beta", a.beta);
      table.Add(scope, "auroc", a.auroc);
    }
  }

  const ExplanationProbe probe = [&args](const Model& m, const Dataset& d) {
    const DiscoveryResult r = Explain(args.explain, m, d);
    const Prototype* best = BestPrototype(r);
    return best ? std::optional<double>(best->p_gnn) : std::nullopt;
  };
  if (args.consistency) {
    const ConsistencyResult c = Consistency(
        dataset, model.config, SquareGrid(args.consistency_widths), probe, args.workers);
    for (const GridPoint& point : c.points) {
      std::string scope = "hidden";
      for (int w : point.hidden_dims) scope += "-" + std::to_string(w);
      table.Add(scope, "p_gnn", point.p_gnn);
      table.Add(scope, "test_accuracy", point.test_accuracy);
      if (!point.error.empty()) std::cerr << "warning: " << scope << ": " << point.error << "\n";
    }
    table.Add("all", "consistency", c.stddev);
  }
  if (args.faithfulness) {
    const FaithfulnessResult f =
        Faithfulness(dataset, model.config, DefaultCorruptionSchedule(), probe,
                     args.explain.discovery.seed, args.workers);
    for (const CorruptionPoint& point : f.points) {
      const std::string scope = "corrupt-" + Num(point.ratio);
      table.Add(scope, "p_gnn", point.p_gnn);
      table.Add(scope, "test_accuracy", point.test_accuracy);
      if (!point.error.empty()) std::cerr << "warning: " << scope << ": " << point.error << "\n";
    }
    table.Add("all", "faithfulness", f.tau);
  }
  WriteFile(dir / "metrics.csv", table.str());
}

void RunBench(const BenchArgs& args) {
  const fs::path dir = RequireOutDir(args.out);
  const ScoringBenchReport r =
      BenchScoring(args.k, args.dim, args.samples, args.seed, args.repeats);
  json report = {{"k", r.k},
                 {"dim", r.dim},
                 {"samples", r.samples},
                 {"seed", args.seed},
                 {"rho_product_pairwise_mean", r.rho_mean},
                 {"rho_product_pairwise_geo", r.rho_geo},
                 {"scores_product", r.product},
                 {"scores_pairwise_mean", r.pairwise_mean},
                 {"scores_pairwise_geo", r.pairwise_geo}};
  WriteFile(dir / "bench.json", report.dump(1) + "\n");
  auto timing = [](const TimingStats& t) {
    return json{{"mean_ns", t.mean_ns}, {"stddev_ns", t.stddev_ns}};
  };
  json times = {{"repeats", args.repeats},
                {"product", timing(r.time_product)},
                {"pairwise_mean", timing(r.time_pairwise_mean)},
                {"pairwise_geo", timing(r.time_pairwise_geo)}};
  WriteFile(dir / "timing.json", times.dump(1) + "\n");
  std::cout << "rho(product, pairwise-mean) = " << r.rho_mean << ", rho(product, pairwise-geo) = " << r.rho_geo
            << "\nmean ns/call: product " << r.time_product.mean_ns << ", pairwise-mean "
            << r.time_pairwise_mean.mean_ns << ", pairwise-geo " << r.time_pairwise_geo.mean_ns
            << "\n";
}

}  // namespace protograph::cli
