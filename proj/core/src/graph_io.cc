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

#include "protograph/graph_io.h"

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace protograph {
namespace {

using nlohmann::json;

[[noreturn]] void Fail(const std::string& where, const std::string& what) {
  throw ParseError(where + ": " + what);
}

const json& Field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) Fail(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) Fail(where, std::string("missing field '") + key + "'");
  return *it;
}

int IntField(const json& obj, const char* key, const std::string& where) {
  const json& v = Field(obj, key, where);
  if (!v.is_number_integer()) {
    Fail(where + "." + key, "expected an integer");
  }
  return v.get<int>();
}

int ParseFeature(const json& feat, int feature_dim, const std::string& where) {
  if (feat.is_number_integer()) {
    int f = feat.get<int>();
    if (f < 0 || f >= feature_dim) Fail(where, "feature index out of range");
    return f;
  }
  if (!feat.is_array()) Fail(where, "feature must be an index or a vector");
  if (static_cast<int>(feat.size()) != feature_dim) {
    Fail(where, "feature vector length differs from feature_dim");
  }
  int hot = -1;
  double total = 0.0;
  for (int i = 0; i < feature_dim; ++i) {
    if (!feat[i].is_number()) Fail(where, "non-numeric feature entry");
    double x = feat[i].get<double>();
    if (x != 0.0 && x != 1.0) Fail(where, "feature vector is not one-hot");
    total += x;
    if (x == 1.0) hot = i;
  }
  if (total != 1.0) {
    Fail(where, "feature vector sums to " + std::to_string(total) +
                    ", expected exactly one entry equal to 1");
  }
  return hot;
}

LabeledGraph ParseGraph(const json& jg, int feature_dim,
                        const std::string& where) {
  LabeledGraph out;
  out.label = IntField(jg, "label", where);
  const json& split = Field(jg, "split", where);
  if (!split.is_string()) Fail(where + ".split", "expected a string");
  try {
    out.split = ParseSplit(split.get<std::string>());
  } catch (const std::invalid_argument& e) {
    Fail(where + ".split", e.what());
  }

  const json& nodes = Field(jg, "nodes", where);
  if (!nodes.is_array()) Fail(where + ".nodes", "expected an array");
  std::vector<int> features;
  std::vector<bool> mask;
  bool any_mask = false;
  for (size_t i = 0; i < nodes.size(); ++i) {
    const std::string nw = where + ".nodes[" + std::to_string(i) + "]";
    features.push_back(ParseFeature(Field(nodes[i], "feat", nw), feature_dim,
                                    nw + ".feat"));
    auto m = nodes[i].find("motif");
    bool in_motif = false;
    if (m != nodes[i].end()) {
      if (!m->is_boolean()) Fail(nw + ".motif", "expected a boolean");
      in_motif = m->get<bool>();
      any_mask = true;
    }
    mask.push_back(in_motif);
  }
  if (!any_mask) mask.clear();

  const json& edges = Field(jg, "edges", where);
  if (!edges.is_array()) Fail(where + ".edges", "expected an array");
  std::vector<Edge> edge_list;
  std::vector<Edge> seen;
  const int n = static_cast<int>(features.size());
  for (size_t i = 0; i < edges.size(); ++i) {
    const std::string ew = where + ".edges[" + std::to_string(i) + "]";
    const json& e = edges[i];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
        !e[1].is_number_integer()) {
      Fail(ew, "expected [u, v]");
    }
    int u = e[0].get<int>();
    int v = e[1].get<int>();
    if (u < 0 || v < 0 || u >= n || v >= n) Fail(ew, "endpoint out of range");
    if (u == v) Fail(ew, "self-edge");
    Edge key{std::min(u, v), std::max(u, v)};
    auto pos = std::lower_bound(seen.begin(), seen.end(), key);
    if (pos != seen.end() && *pos == key) {
      Fail(ew, "duplicate edge (" + std::to_string(key.first) + "," +
                   std::to_string(key.second) + ")");
    }
    seen.insert(pos, key);
    edge_list.emplace_back(u, v);
  }
  try {
    out.graph = Graph(feature_dim, std::move(features), std::move(edge_list),
                      std::move(mask));
  } catch (const std::invalid_argument& e) {
    Fail(where, e.what());
  }
  return out;
}

}  // namespace

std::string DatasetToJson(const Dataset& dataset) {
  json root;
  root["feature_dim"] = dataset.feature_dim;
  root["num_classes"] = dataset.num_classes;
  json graphs = json::array();
  for (const auto& lg : dataset.graphs) {
    json jg;
    jg["label"] = lg.label;
    jg["split"] = std::string(SplitName(lg.split));
    json nodes = json::array();
    for (int v = 0; v < lg.graph.num_nodes(); ++v) {
      json node = {{"feat", lg.graph.feature(v)}};
      if (lg.graph.has_motif_mask()) node["motif"] = lg.graph.in_motif(v);
      nodes.push_back(std::move(node));
    }
    jg["nodes"] = std::move(nodes);
    json edges = json::array();
    for (const auto& [u, v] : lg.graph.edges()) edges.push_back({u, v});
    jg["edges"] = std::move(edges);
    graphs.push_back(std::move(jg));
  }
  root["graphs"] = std::move(graphs);
  return root.dump() + "\n";
}

Dataset DatasetFromJson(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("dataset: ") + e.what());
  }
  Dataset out;
  out.feature_dim = IntField(root, "feature_dim", "dataset");
  out.num_classes = IntField(root, "num_classes", "dataset");
  if (out.feature_dim < 1) Fail("dataset.feature_dim", "must be >= 1");
  if (out.num_classes < 2) Fail("dataset.num_classes", "must be >= 2");
  const json& graphs = Field(root, "graphs", "dataset");
  if (!graphs.is_array()) Fail("dataset.graphs", "expected an array");
  out.graphs.reserve(graphs.size());
  for (size_t i = 0; i < graphs.size(); ++i) {
    const std::string where = "graphs[" + std::to_string(i) + "]";
    LabeledGraph lg = ParseGraph(graphs[i], out.feature_dim, where);
    if (lg.label < 0 || lg.label >= out.num_classes) {
      Fail(where + ".label", "label out of range");
    }
    out.graphs.push_back(std::move(lg));
  }
  return out;
}

void SaveDataset(const Dataset& dataset, const std::filesystem::path& path) {
  WriteFile(path, DatasetToJson(dataset));
}

Dataset LoadDataset(const std::filesystem::path& path) {
  return DatasetFromJson(ReadFile(path));
}

std::string ToDot(const Graph& g, std::string_view name) {
  static constexpr std::array<const char*, 8> kPalette = {
      "#bbbbbb", "#e6550d", "#3182bd", "#31a354",
      "#756bb1", "#fdd0a2", "#9ecae1", "#a1d99b"};
  std::ostringstream os;
  os << "graph " << name << " {\n";
  os << "  node [style=filled, shape=circle];\n";
  for (int v = 0; v < g.num_nodes(); ++v) {
    os << "  n" << v << " [label=\"" << v << "\", fillcolor=\""
       << kPalette[g.feature(v) % kPalette.size()] << "\"];\n";
  }
  for (const auto& [u, v] : g.edges()) {
    os << "  n" << u << " -- n" << v << ";\n";
  }
  os << "}\n";
  return os.str();
}

void ExportDot(const Graph& g, const std::filesystem::path& path,
               std::string_view name) {
  WriteFile(path, ToDot(g, name));
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void WriteFile(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace protograph
