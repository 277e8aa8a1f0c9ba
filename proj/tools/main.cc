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

#include <exception>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "commands.h"

namespace {

using namespace protograph;
using namespace protograph::cli;

// Options shared by explain and eval.
void AddExplainOptions(CLI::App* cmd, ExplainArgs* a) {
  cmd->add_option("--dataset", a->dataset, "dataset JSON")->required()->check(CLI::ExistingFile);
  cmd->add_option("--model", a->model, "model checkpoint")->required()->check(CLI::ExistingFile);
  cmd->add_option("--out", a->out, "output directory")->required()->envname("PROTOGRAPH_OUT");
  cmd->add_option("--seed", a->discovery.seed, "root seed")->envname("PROTOGRAPH_SEED");
  cmd->add_option("--class", a->discovery.target_class, "target class")->check(CLI::NonNegativeNumber);
  cmd->add_option("--L", a->discovery.num_clusters, "GMM clusters")->check(CLI::PositiveNumber);
  cmd->add_option("--k", a->discovery.k, "graphs per cluster")->check(CLI::Range(2, 5));
  cmd->add_option("--budget", a->discovery.budget, "search sessions per cluster")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--decay", a->discovery.search.decay_rate, "decay rate (entries divided by it)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--max-iter", a->discovery.search.max_iter, "search iterations per session")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--max-size", a->discovery.search.max_subgraph_size, "prototype node limit")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--pool-split", a->discovery.pool_split, "split supplying candidate graphs")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, Split>{
              {"train", Split::kTrain}, {"val", Split::kVal}, {"test", Split::kTest}},
          CLI::ignore_case));
  cmd->add_flag("--simplified", a->simplified, "skip clustering; search a random pool");
  cmd->add_option("--pool", a->pool, "pool size for --simplified")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Prototype discovery for graph classifiers"};
  app.set_config("--config", "", "TOML/INI file with option defaults");
  app.require_subcommand(1);

  GenArgs gen;
  CLI::App* gen_cmd = app.add_subcommand("gen", "generate a synthetic dataset");
  gen_cmd->add_option("--kind", gen.kind, "dataset kind")
      ->check(CLI::IsMember({"ba-house", "ba-grid"}));
  gen_cmd->add_option("--n", gen.config.n_graphs, "number of graphs")
      ->check(CLI::PositiveNumber);
  gen_cmd->add_option("--out", gen.out, "output JSON path")->required()->envname("PROTOGRAPH_OUT");
  gen_cmd->add_option("--seed", gen.config.seed, "root seed")->envname("PROTOGRAPH_SEED");
  gen_cmd->add_option("--backbone-min", gen.config.backbone_min);
  gen_cmd->add_option("--backbone-max", gen.config.backbone_max);
  gen_cmd->add_option("--attachment", gen.config.ba_attachment, "BA edges per new node");
  gen_cmd->add_option("--double-prob", gen.config.double_motif_prob,
                      "probability of a second house in class 0");
  gen_cmd->add_option("--train-frac", gen.config.train_fraction);
  gen_cmd->add_option("--val-frac", gen.config.val_fraction);

  TrainArgs train;
  std::string readout = "sum";
  bool no_self_loops = false;
  CLI::App* train_cmd = app.add_subcommand("train", "train the GCN classifier");
  train_cmd->add_option("--dataset", train.dataset, "dataset JSON")
      ->required()->check(CLI::ExistingFile);
  train_cmd->add_option("--out", train.out, "output directory")->required()->envname("PROTOGRAPH_OUT");
  train_cmd->add_option("--seed", train.config.seed, "root seed")->envname("PROTOGRAPH_SEED");
  train_cmd->add_option("--hidden", train.config.hidden_dims, "hidden widths, one per layer")
      ->delimiter(',');
  train_cmd->add_option("--readout", readout)->check(CLI::IsMember({"sum", "mean"}));
  train_cmd->add_flag("--no-self-loops", no_self_loops);
  train_cmd->add_flag("--conv-bias", train.config.conv_bias);
  train_cmd->add_option("--lr", train.config.lr)->check(CLI::PositiveNumber);
  train_cmd->add_option("--batch-size", train.config.batch_size)->check(CLI::PositiveNumber);
  train_cmd->add_option("--patience", train.config.patience)->check(CLI::PositiveNumber);
  train_cmd->add_option("--max-epochs", train.config.max_epochs)->check(CLI::PositiveNumber);
  train_cmd->add_option("--corrupt", train.corrupt, "fraction of train labels to flip")
      ->check(CLI::Range(0.0, 1.0));

  ExplainArgs explain;
  CLI::App* explain_cmd = app.add_subcommand("explain", "discover prototype graphs");
  AddExplainOptions(explain_cmd, &explain);

  EvalArgs eval;
  CLI::App* eval_cmd = app.add_subcommand("eval", "score discovered prototypes");
  AddExplainOptions(eval_cmd, &eval.explain);
  eval_cmd->add_option("--motif", eval.motif, "ground-truth motif")
      ->check(CLI::IsMember({"house", "grid"}));
  eval_cmd->add_flag("--agreement", eval.agreement, "Input x Gradient alpha/beta/AUROC");
  eval_cmd->add_flag("--faithfulness", eval.faithfulness, "label-corruption sweep (slow)");
  eval_cmd->add_flag("--consistency", eval.consistency, "hidden-width sweep (slow)");
  eval_cmd->add_option("--consistency-widths", eval.consistency_widths)->delimiter(',');
  eval_cmd->add_option("--workers", eval.workers, "parallel training jobs")
      ->check(CLI::PositiveNumber)->envname("PROTOGRAPH_WORKERS");

  BenchArgs bench;
  CLI::App* bench_cmd = app.add_subcommand("bench", "scoring-function comparison");
  bench_cmd->add_option("--k", bench.k)->check(CLI::Range(2, 64));
  bench_cmd->add_option("--dim", bench.dim)->check(CLI::PositiveNumber);
  bench_cmd->add_option("--samples", bench.samples)->check(CLI::Range(100, 10'000'000));
  bench_cmd->add_option("--repeats", bench.repeats)->check(CLI::PositiveNumber);
  bench_cmd->add_option("--seed", bench.seed)->envname("PROTOGRAPH_SEED");
  bench_cmd->add_option("--out", bench.out, "output directory")->required()->envname("PROTOGRAPH_OUT");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen_cmd) {
      RunGen(gen);
    } else if (*train_cmd) {
      train.config.readout = ParseReadout(readout);
      train.config.self_loops = !no_self_loops;
      RunTrain(train);
    } else if (*explain_cmd) {
      RunExplain(explain);
    } else if (*eval_cmd) {
      RunEval(eval);
    } else if (*bench_cmd) {
      RunBench(bench);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
