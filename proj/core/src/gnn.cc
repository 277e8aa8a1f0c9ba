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

#include "protograph/gnn.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "json.hpp"
#include "protograph/graph_io.h"
#include "protograph/seed.h"

namespace protograph {
namespace {

using Eigen::MatrixXd;
using Eigen::RowVectorXd;

constexpr int kCheckpointVersion = 1;

MatrixXd NormalizedAdjacency(const Graph& g, bool self_loops) {
  const int n = g.num_nodes();
  MatrixXd a = MatrixXd::Zero(n, n);
  for (const auto& [u, v] : g.edges()) {
    a(u, v) = 1.0;
    a(v, u) = 1.0;
  }
  if (self_loops) a.diagonal().setOnes();
  Eigen::VectorXd inv_sqrt = a.rowwise().sum();
  for (int i = 0; i < n; ++i) {
    inv_sqrt(i) = inv_sqrt(i) > 0.0 ? 1.0 / std::sqrt(inv_sqrt(i)) : 0.0;
  }
  return inv_sqrt.asDiagonal() * a * inv_sqrt.asDiagonal();
}

MatrixXd FeatureMatrix(const Graph& g) {
  MatrixXd x = MatrixXd::Zero(g.num_nodes(), g.feature_dim());
  for (int v = 0; v < g.num_nodes(); ++v) x(v, g.feature(v)) = 1.0;
  return x;
}

RowVectorXd Softmax(const RowVectorXd& logits) {
  RowVectorXd e = (logits.array() - logits.maxCoeff()).exp();
  return e / e.sum();
}

// Everything the backward pass needs from one forward evaluation.
struct Tape {
  MatrixXd adj;
  std::vector<MatrixXd> aggregated;  // A_hat * H_p, per layer
  std::vector<MatrixXd> pre;         // pre-activations Z_p
  std::vector<MatrixXd> acts;        // H_0 = X, H_{p+1} = ReLU(Z_p)
  RowVectorXd graph;
  RowVectorXd probs;
};

void CheckInput(const Model& model, const Graph& g) {
  if (g.empty()) throw std::invalid_argument("forward pass on an empty graph");
  if (g.feature_dim() != model.config.feature_dim) {
    throw std::invalid_argument("graph feature dimension " +
                                std::to_string(g.feature_dim()) +
                                " differs from model input dimension " +
                                std::to_string(model.config.feature_dim));
  }
}

Tape RunForward(const Model& model, const MatrixXd& adj, const MatrixXd& x) {
  const ModelConfig& cfg = model.config;
  Tape t;
  t.adj = adj;
  t.acts.push_back(x);
  for (int p = 0; p < cfg.num_layers(); ++p) {
    t.aggregated.push_back(adj * t.acts.back());
    MatrixXd z = t.aggregated.back() * model.layer_weights[p];
    if (cfg.conv_bias) z.rowwise() += model.layer_biases[p];
    t.acts.push_back(z.cwiseMax(0.0));
    t.pre.push_back(std::move(z));
  }
  const MatrixXd& h = t.acts.back();
  t.graph = h.colwise().sum();
  if (cfg.readout == Readout::kMean) t.graph /= static_cast<double>(h.rows());
  t.probs = Softmax(t.graph * model.classifier_weight + model.classifier_bias);
  return t;
}

struct Gradients {
  std::vector<MatrixXd> layer_weights;
  std::vector<RowVectorXd> layer_biases;
  MatrixXd classifier_weight;
  RowVectorXd classifier_bias;
};

Gradients ZeroGradients(const Model& model) {
  Gradients g;
  for (const auto& w : model.layer_weights) {
    g.layer_weights.push_back(MatrixXd::Zero(w.rows(), w.cols()));
  }
  for (const auto& b : model.layer_biases) {
    g.layer_biases.push_back(RowVectorXd::Zero(b.size()));
  }
  g.classifier_weight = MatrixXd::Zero(model.classifier_weight.rows(),
                                       model.classifier_weight.cols());
  g.classifier_bias = RowVectorXd::Zero(model.classifier_bias.size());
  return g;
}

// Accumulates parameter gradients into `grads` given dOutput/dlogits and
// returns dOutput/dX.
MatrixXd Backward(const Model& model, const Tape& t, const RowVectorXd& dlogits,
                  Gradients* grads) {
  const ModelConfig& cfg = model.config;
  const int n = static_cast<int>(t.acts.front().rows());
  if (grads) {
    grads->classifier_weight += t.graph.transpose() * dlogits;
    grads->classifier_bias += dlogits;
  }
  RowVectorXd dgraph = dlogits * model.classifier_weight.transpose();
  if (cfg.readout == Readout::kMean) dgraph /= static_cast<double>(n);
  MatrixXd dh = dgraph.replicate(n, 1);
  for (int p = cfg.num_layers() - 1; p >= 0; --p) {
    MatrixXd dz = dh.cwiseProduct(
        (t.pre[p].array() > 0.0).cast<double>().matrix());
    if (grads) {
      grads->layer_weights[p] += t.aggregated[p].transpose() * dz;
      if (cfg.conv_bias) grads->layer_biases[p] += dz.colwise().sum();
    }
    dh = t.adj.transpose() * (dz * model.layer_weights[p].transpose());
  }
  return dh;
}

// Flat view of one parameter block and its gradient.
struct ParamRef {
  double* value;
  const double* grad;
  Eigen::Index size;
};

template <typename Derived>
ParamRef Ref(Eigen::PlainObjectBase<Derived>& value,
             const Eigen::PlainObjectBase<Derived>& grad) {
  return {value.data(), grad.data(), value.size()};
}

struct AdamState {
  std::vector<Eigen::ArrayXd> m, v;
  int step = 0;
};

void AdamUpdate(const std::vector<ParamRef>& params, double lr,
                AdamState* state) {
  constexpr double kBeta1 = 0.9;
  constexpr double kBeta2 = 0.999;
  constexpr double kEps = 1e-8;
  if (state->m.empty()) {
    for (const ParamRef& p : params) {
      state->m.push_back(Eigen::ArrayXd::Zero(p.size));
      state->v.push_back(Eigen::ArrayXd::Zero(p.size));
    }
  }
  ++state->step;
  const double c1 = 1.0 - std::pow(kBeta1, state->step);
  const double c2 = 1.0 - std::pow(kBeta2, state->step);
  for (size_t i = 0; i < params.size(); ++i) {
    Eigen::Map<Eigen::ArrayXd> value(params[i].value, params[i].size);
    Eigen::Map<const Eigen::ArrayXd> g(params[i].grad, params[i].size);
    state->m[i] = kBeta1 * state->m[i] + (1.0 - kBeta1) * g;
    state->v[i] = kBeta2 * state->v[i] + (1.0 - kBeta2) * g.square();
    value -= lr * (state->m[i] / c1) / ((state->v[i] / c2).sqrt() + kEps);
  }
}

struct CachedGraph {
  MatrixXd adj;
  MatrixXd x;
};

CachedGraph Cache(const Model& model, const Graph& g) {
  CheckInput(model, g);
  return {NormalizedAdjacency(g, model.config.self_loops), FeatureMatrix(g)};
}

double CrossEntropy(const RowVectorXd& probs, int label) {
  return -std::log(std::max(probs(label), 1e-300));
}

nlohmann::json MatrixToJson(const MatrixXd& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

MatrixXd MatrixFromJson(const nlohmann::json& j, int rows, int cols,
                        const std::string& what) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows) {
    throw ParseError("checkpoint: " + what + " has the wrong row count");
  }
  MatrixXd m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    if (!j[r].is_array() || static_cast<int>(j[r].size()) != cols) {
      throw ParseError("checkpoint: " + what + " has the wrong column count");
    }
    for (int c = 0; c < cols; ++c) m(r, c) = j[r][c].get<double>();
  }
  if (!m.allFinite()) throw ParseError("checkpoint: " + what + " not finite");
  return m;
}

}  // namespace

std::string_view ReadoutName(Readout readout) {
  return readout == Readout::kSum ? "sum" : "mean";
}

Readout ParseReadout(std::string_view name) {
  if (name == "sum") return Readout::kSum;
  if (name == "mean") return Readout::kMean;
  throw std::invalid_argument("unknown readout '" + std::string(name) + "'");
}

void ModelConfig::Validate() const {
  if (hidden_dims.empty()) throw std::invalid_argument("need >= 1 GCN layer");
  for (int h : hidden_dims) {
    if (h < 1) throw std::invalid_argument("hidden widths must be positive");
  }
  if (feature_dim < 1) throw std::invalid_argument("feature_dim must be >= 1");
  if (num_classes < 2) throw std::invalid_argument("num_classes must be >= 2");
  if (!(lr > 0.0)) throw std::invalid_argument("lr must be positive");
  if (batch_size < 1) throw std::invalid_argument("batch_size must be >= 1");
  if (patience < 1) throw std::invalid_argument("patience must be >= 1");
  if (max_epochs < 1) throw std::invalid_argument("max_epochs must be >= 1");
}

Model InitModel(const ModelConfig& config) {
  config.Validate();
  Model model;
  model.config = config;
  Rng rng = MakeRng(config.seed, "init");
  auto glorot = [&rng](int fan_in, int fan_out) {
    const double limit = std::sqrt(6.0 / (fan_in + fan_out));
    std::uniform_real_distribution<double> u(-limit, limit);
    MatrixXd w(fan_in, fan_out);
    for (int r = 0; r < fan_in; ++r) {
      for (int c = 0; c < fan_out; ++c) w(r, c) = u(rng);
    }
    return w;
  };
  int in = config.feature_dim;
  for (int h : config.hidden_dims) {
    model.layer_weights.push_back(glorot(in, h));
    if (config.conv_bias) model.layer_biases.push_back(RowVectorXd::Zero(h));
    in = h;
  }
  model.classifier_weight = glorot(in, config.num_classes);
  model.classifier_bias = RowVectorXd::Zero(config.num_classes);
  return model;
}

ForwardResult Forward(const Model& model, const Graph& g) {
  CachedGraph cg = Cache(model, g);
  Tape t = RunForward(model, cg.adj, cg.x);
  return {{std::move(t.acts.back()), std::move(t.graph)}, std::move(t.probs)};
}

double PGnn(const Model& model, const Graph& g, int c) {
  if (c < 0 || c >= model.config.num_classes) {
    throw std::invalid_argument("class id out of range");
  }
  return Forward(model, g).probs(c);
}

int Predict(const Model& model, const Graph& g) {
  Eigen::Index best;
  Forward(model, g).probs.maxCoeff(&best);
  return static_cast<int>(best);
}

MatrixXd InputGradients(const Model& model, const Graph& g, int c) {
  if (c < 0 || c >= model.config.num_classes) {
    throw std::invalid_argument("class id out of range");
  }
  CachedGraph cg = Cache(model, g);
  Tape t = RunForward(model, cg.adj, cg.x);
  // d p_c / d logit_j = p_c (delta_cj - p_j)
  RowVectorXd dlogits = -t.probs(c) * t.probs;
  dlogits(c) += t.probs(c);
  return Backward(model, t, dlogits, nullptr);
}

double MeanCrossEntropy(const Model& model, const Dataset& dataset,
                        std::span<const int> indices) {
  if (indices.empty()) return 0.0;
  double total = 0.0;
  for (int i : indices) {
    const auto& lg = dataset.graphs[i];
    total += CrossEntropy(Forward(model, lg.graph).probs, lg.label);
  }
  return total / static_cast<double>(indices.size());
}

double Accuracy(const Model& model, const Dataset& dataset,
                std::span<const int> indices) {
  if (indices.empty()) return 0.0;
  int correct = 0;
  for (int i : indices) {
    const auto& lg = dataset.graphs[i];
    correct += Predict(model, lg.graph) == lg.label;
  }
  return static_cast<double>(correct) / static_cast<double>(indices.size());
}

double SplitAccuracy(const Model& model, const Dataset& dataset, Split split) {
  std::vector<int> idx = dataset.Indices(split);
  return Accuracy(model, dataset, idx);
}

TrainResult Train(const ModelConfig& config, const Dataset& dataset) {
  config.Validate();
  if (dataset.feature_dim != config.feature_dim ||
      dataset.num_classes != config.num_classes) {
    throw std::invalid_argument("model config does not match the dataset");
  }
  std::vector<int> train = dataset.Indices(Split::kTrain);
  std::vector<int> val = dataset.Indices(Split::kVal);
  if (train.empty() || val.empty()) {
    throw std::invalid_argument("training needs non-empty train and val splits");
  }
  const int first_label = dataset.graphs[train.front()].label;
  if (std::all_of(train.begin(), train.end(), [&](int i) {
        return dataset.graphs[i].label == first_label;
      })) {
    throw std::invalid_argument("training labels cover a single class");
  }

  TrainResult result;
  Model model = InitModel(config);
  std::vector<CachedGraph> cache(dataset.graphs.size());
  for (int i : train) cache[i] = Cache(model, dataset.graphs[i].graph);

  Rng shuffle_rng = MakeRng(config.seed, "batches");
  AdamState adam;
  double best_val = std::numeric_limits<double>::infinity();
  int since_best = 0;
  result.model = model;

  for (int epoch = 1; epoch <= config.max_epochs; ++epoch) {
    std::shuffle(train.begin(), train.end(), shuffle_rng);
    double loss_sum = 0.0;
    int batches = 0;
    for (size_t start = 0; start < train.size(); start += config.batch_size) {
      const size_t end = std::min(train.size(), start + config.batch_size);
      const double scale = 1.0 / static_cast<double>(end - start);
      Gradients grads = ZeroGradients(model);
      double batch_loss = 0.0;
      for (size_t b = start; b < end; ++b) {
        const int i = train[b];
        const int label = dataset.graphs[i].label;
        Tape t = RunForward(model, cache[i].adj, cache[i].x);
        batch_loss += CrossEntropy(t.probs, label);
        RowVectorXd dlogits = t.probs * scale;
        dlogits(label) -= scale;
        Backward(model, t, dlogits, &grads);
      }
      loss_sum += batch_loss * scale;
      ++batches;

      std::vector<ParamRef> params;
      for (size_t p = 0; p < model.layer_weights.size(); ++p) {
        params.push_back(Ref(model.layer_weights[p], grads.layer_weights[p]));
      }
      for (size_t p = 0; p < model.layer_biases.size(); ++p) {
        params.push_back(Ref(model.layer_biases[p], grads.layer_biases[p]));
      }
      params.push_back(Ref(model.classifier_weight, grads.classifier_weight));
      params.push_back(Ref(model.classifier_bias, grads.classifier_bias));
      AdamUpdate(params, config.lr, &adam);
    }

    EpochStats stats;
    stats.epoch = epoch;
    stats.train_loss = loss_sum / std::max(batches, 1);
    stats.val_loss = MeanCrossEntropy(model, dataset, val);
    stats.val_accuracy = Accuracy(model, dataset, val);
    result.history.push_back(stats);

    if (stats.val_loss < best_val) {
      best_val = stats.val_loss;
      result.model = model;
      result.best_epoch = epoch;
      since_best = 0;
    } else if (++since_best >= config.patience) {
      break;
    }
  }
  return result;
}

std::string ModelToJson(const Model& model) {
  const ModelConfig& c = model.config;
  nlohmann::json j;
  j["format"] = "protograph-gcn";
  j["version"] = kCheckpointVersion;
  j["config"] = {{"hidden_dims", c.hidden_dims},
                 {"feature_dim", c.feature_dim},
                 {"num_classes", c.num_classes},
                 {"readout", std::string(ReadoutName(c.readout))},
                 {"self_loops", c.self_loops},
                 {"conv_bias", c.conv_bias},
                 {"lr", c.lr},
                 {"batch_size", c.batch_size},
                 {"patience", c.patience},
                 {"max_epochs", c.max_epochs},
                 {"seed", c.seed}};
  nlohmann::json layers = nlohmann::json::array();
  for (const auto& w : model.layer_weights) layers.push_back(MatrixToJson(w));
  j["layer_weights"] = std::move(layers);
  nlohmann::json biases = nlohmann::json::array();
  for (const auto& b : model.layer_biases) biases.push_back(MatrixToJson(b));
  j["layer_biases"] = std::move(biases);
  j["classifier_weight"] = MatrixToJson(model.classifier_weight);
  j["classifier_bias"] = MatrixToJson(model.classifier_bias);
  return j.dump(1) + "\n";
}

Model ModelFromJson(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
    if (j.at("version").get<int>() != kCheckpointVersion) {
      throw ParseError("checkpoint: unsupported version");
    }
    Model model;
    ModelConfig& c = model.config;
    const auto& jc = j.at("config");
    c.hidden_dims = jc.at("hidden_dims").get<std::vector<int>>();
    c.feature_dim = jc.at("feature_dim").get<int>();
    c.num_classes = jc.at("num_classes").get<int>();
    c.readout = ParseReadout(jc.at("readout").get<std::string>());
    c.self_loops = jc.at("self_loops").get<bool>();
    c.conv_bias = jc.at("conv_bias").get<bool>();
    c.lr = jc.at("lr").get<double>();
    c.batch_size = jc.at("batch_size").get<int>();
    c.patience = jc.at("patience").get<int>();
    c.max_epochs = jc.at("max_epochs").get<int>();
    c.seed = jc.at("seed").get<std::uint64_t>();
    c.Validate();

    const auto& layers = j.at("layer_weights");
    if (static_cast<int>(layers.size()) != c.num_layers()) {
      throw ParseError("checkpoint: layer count mismatch");
    }
    int in = c.feature_dim;
    for (int p = 0; p < c.num_layers(); ++p) {
      model.layer_weights.push_back(MatrixFromJson(
          layers[p], in, c.hidden_dims[p], "layer_weights[" +
                                              std::to_string(p) + "]"));
      in = c.hidden_dims[p];
    }
    const auto& biases = j.at("layer_biases");
    if (c.conv_bias) {
      if (static_cast<int>(biases.size()) != c.num_layers()) {
        throw ParseError("checkpoint: bias count mismatch");
      }
      for (int p = 0; p < c.num_layers(); ++p) {
        model.layer_biases.push_back(
            MatrixFromJson(biases[p], 1, c.hidden_dims[p], "layer_biases"));
      }
    }
    model.classifier_weight = MatrixFromJson(j.at("classifier_weight"), in,
                                             c.num_classes, "classifier_weight");
    model.classifier_bias = MatrixFromJson(j.at("classifier_bias"), 1,
                                           c.num_classes, "classifier_bias");
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("checkpoint: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("checkpoint: ") + e.what());
  }
}

void SaveModel(const Model& model, const std::filesystem::path& path) {
  WriteFile(path, ModelToJson(model));
}

Model LoadModel(const std::filesystem::path& path) {
  return ModelFromJson(ReadFile(path));
}

}  // namespace protograph
