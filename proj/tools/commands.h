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

#ifndef PROTOGRAPH_TOOLS_COMMANDS_H_
#define PROTOGRAPH_TOOLS_COMMANDS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "protograph/gnn.h"
#include "protograph/proto.h"
#include "protograph/synth.h"

namespace protograph::cli {

struct GenArgs {
  std::string kind = "ba-house";
  std::string out;
  GenConfig config;
};

struct TrainArgs {
  std::string dataset;
  std::string out;
  ModelConfig config;
  double corrupt = 0.0;
};

struct ExplainArgs {
  std::string dataset;
  std::string model;
  std::string out;
  DiscoveryOptions discovery;
  bool simplified = false;
  int pool = 10;  // simplified path only
};

struct EvalArgs {
  ExplainArgs explain;
  std::string motif = "house";
  bool agreement = false;
  bool faithfulness = false;
  bool consistency = false;
  std::vector<int> consistency_widths = {8, 32};
  int workers = 1;
};

struct BenchArgs {
  int k = 3;
  int dim = 32;
  int samples = 1000;
  int repeats = 20;
  std::uint64_t seed = 0;
  std::string out;
};

// Each command writes its artifacts and throws on failure.
void RunGen(const GenArgs& args);
void RunTrain(const TrainArgs& args);
void RunExplain(const ExplainArgs& args);
void RunEval(const EvalArgs& args);
void RunBench(const BenchArgs& args);

// Hex SHA-256 of `data`.
std::string Sha256Hex(const std::string& data);

}  // namespace protograph::cli

#endif  // PROTOGRAPH_TOOLS_COMMANDS_H_
