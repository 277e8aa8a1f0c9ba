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

#ifndef PROTOGRAPH_GRAPH_IO_H_
#define PROTOGRAPH_GRAPH_IO_H_

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "protograph/graph.h"

namespace protograph {

// Raised for malformed dataset files. The message names the offending record,
// e.g. "graphs[12].edges[3]: duplicate edge (2,5)".
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Dataset JSON:
//   {"feature_dim": d, "num_classes": m,
//    "graphs": [{"label": int, "split": "train|val|test",
//                "nodes": [{"feat": int, "motif": bool}, ...],
//                "edges": [[u, v], ...]}, ...]}
// On input "feat" may also be a full one-hot array of length d.
std::string DatasetToJson(const Dataset& dataset);
Dataset DatasetFromJson(std::string_view text);

void SaveDataset(const Dataset& dataset, const std::filesystem::path& path);
Dataset LoadDataset(const std::filesystem::path& path);

// Graphviz rendering: one node statement per node, filled with a color keyed
// on the feature index, and one `--` statement per edge.
std::string ToDot(const Graph& g, std::string_view name = "G");
void ExportDot(const Graph& g, const std::filesystem::path& path,
               std::string_view name = "G");

// Whole-file helpers shared by the CLI and tests. Throw std::runtime_error on
// I/O failure.
std::string ReadFile(const std::filesystem::path& path);
void WriteFile(const std::filesystem::path& path, std::string_view contents);

}  // namespace protograph

#endif  // PROTOGRAPH_GRAPH_IO_H_
