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

#ifndef PROTOGRAPH_GNN_H_
#define PROTOGRAPH_GNN_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "protograph/graph.h"

namespace protograph {

enum class Readout { kSum, kMean };

std::string_view ReadoutName(Readout readout);
Readout ParseReadout(std::string_view name);

struct ModelConfig {
  // One entry per GCN layer; the last entry is the embedding width.
  std::vector<int> hidden_dims{32, 32};
  int feature_dim = 3;
  int num_classes = 2;
  Readout readout = Readout::kSum;
  bool self_loops = true;
  bool conv_bias = false;
  double lr = 0.001;
  int batch_size = 16;
  int patience = 5;
  int max_epochs = 200;
  std::uint64_t seed = 0;

  int num_layers() const { return static_cast<int>(hidden_dims.size()); }
  int embedding_dim() const { return hidden_dims.back(); }
  void Validate() const;

  friend bool operator==(const ModelConfig&, const ModelConfig&) = default;
};

// GCN stack followed by a readout and an affine softmax classifier.
// Layer p maps H -> ReLU(A_hat * H * W_p [+ b_p]) where A_hat is the
// symmetrically normalized adjacency (with self loops when enabled).
struct Model {
  ModelConfig config;
  std::vector<Eigen::MatrixXd> layer_weights;      // in_dim x out_dim
  std::vector<Eigen::RowVectorXd> layer_biases;    // empty unless conv_bias
  Eigen::MatrixXd classifier_weight;               // b x m
  Eigen::RowVectorXd classifier_bias;              // m
};

// Glorot-uniform weights drawn from the config seed; biases start at zero.
// This is also the "initialized, untrained" model used as a baseline.
Model InitModel(const ModelConfig& config);

struct Embeddings {
  Eigen::MatrixXd nodes;      // n x b, final-layer node embeddings
  Eigen::RowVectorXd graph;   // readout(nodes)
};

struct ForwardResult {
  Embeddings embeddings;
  Eigen::RowVectorXd probs;   // softmax over classes
};

// Throws std::invalid_argument on an empty graph or a feature dimension that
// differs from the model's.
ForwardResult Forward(const Model& model, const Graph& g);

// Output probability of class c.
double PGnn(const Model& model, const Graph& g, int c);

int Predict(const Model& model, const Graph& g);

// d probs[c] / d X for the n x d one-hot input matrix, via the manual
// backward pass.
Eigen::MatrixXd InputGradients(const Model& model, const Graph& g, int c);

struct EpochStats {
  int epoch = 0;
  double train_loss = 0.0;  // mean mini-batch loss over the epoch
  double val_loss = 0.0;
  double val_accuracy = 0.0;
};

struct TrainResult {
  Model model;  // weights from the epoch with the lowest validation loss
  std::vector<EpochStats> history;
  int best_epoch = 0;
};

// Adam on mean cross-entropy over shuffled mini-batches; early stopping on
// validation loss. Throws std::invalid_argument if the train or val split is
// empty or the training labels cover a single class.
TrainResult Train(const ModelConfig& config, const Dataset& dataset);

double MeanCrossEntropy(const Model& model, const Dataset& dataset,
                        std::span<const int> indices);
double Accuracy(const Model& model, const Dataset& dataset,
                std::span<const int> indices);
double SplitAccuracy(const Model& model, const Dataset& dataset, Split split);

// Checkpoint: JSON with a format version, the config, and every weight
// matrix. Doubles are written with round-trip precision.
std::string ModelToJson(const Model& model);
Model ModelFromJson(std::string_view text);
void SaveModel(const Model& model, const std::filesystem::path& path);
Model LoadModel(const std::filesystem::path& path);

}  // namespace protograph

#endif  // PROTOGRAPH_GNN_H_
