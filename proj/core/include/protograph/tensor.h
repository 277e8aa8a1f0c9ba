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

#ifndef PROTOGRAPH_TENSOR_H_
#define PROTOGRAPH_TENSOR_H_

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "protograph/graph.h"

namespace protograph {

// Dense order-k tensor in row-major order (last axis fastest).
class DenseTensor {
 public:
  DenseTensor() = default;
  explicit DenseTensor(std::vector<int> shape, double fill = 0.0);

  int order() const { return static_cast<int>(shape_.size()); }
  const std::vector<int>& shape() const { return shape_; }
  const std::vector<std::int64_t>& strides() const { return strides_; }
  std::int64_t size() const { return static_cast<std::int64_t>(data_.size()); }

  std::int64_t Offset(std::span<const int> index) const;
  std::vector<int> Unravel(std::int64_t offset) const;

  double& operator()(std::span<const int> index) { return data_[Offset(index)]; }
  double operator()(std::span<const int> index) const {
    return data_[Offset(index)];
  }
  double& operator[](std::int64_t offset) { return data_[offset]; }
  double operator[](std::int64_t offset) const { return data_[offset]; }

  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

 private:
  std::vector<int> shape_;
  std::vector<std::int64_t> strides_;
  std::vector<double> data_;
};

// X[i_1..i_k] = ScoreProduct(h_1[i_1], ..., h_k[i_k]) where h_j is the n_j x b
// node-embedding matrix of the j-th graph.
DenseTensor BuildScoreTensor(std::span<const Eigen::MatrixXd> node_embeddings);

// Y = (1/k) sum_a softmax_a(X) * sigmoid(sum_a X) / n_a, where softmax_a and
// sum_a act along axis a and the axis sum is broadcast back along a.
DenseTensor BuildMatchingTensor(const DenseTensor& scores);

struct MatchingTensor {
  DenseTensor values;
  std::vector<std::uint8_t> kept;  // 0 where node features disagree
  std::int64_t num_nonzero = 0;

  bool degenerate() const { return num_nonzero == 0; }
};

// Zeroes every entry whose k nodes do not share one feature vector.
MatchingTensor MaskFeatureMismatch(const DenseTensor& y,
                                   std::span<const Graph* const> graphs);

}  // namespace protograph

#endif  // PROTOGRAPH_TENSOR_H_
