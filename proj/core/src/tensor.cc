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

#include "protograph/tensor.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace protograph {
namespace {

double Sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

// Calls fn(base) for every offset whose coordinate on `axis` is zero.
template <typename Fn>
void ForEachFiber(const DenseTensor& t, int axis, Fn fn) {
  const std::int64_t stride = t.strides()[axis];
  const std::int64_t len = t.shape()[axis];
  const std::int64_t block = stride * len;
  for (std::int64_t outer = 0; outer < t.size(); outer += block) {
    for (std::int64_t inner = 0; inner < stride; ++inner) fn(outer + inner);
  }
}

}  // namespace

DenseTensor::DenseTensor(std::vector<int> shape, double fill)
    : shape_(std::move(shape)) {
  std::int64_t size = 1;
  strides_.assign(shape_.size(), 1);
  for (int a = order() - 1; a >= 0; --a) {
    if (shape_[a] < 1) throw std::invalid_argument("tensor axes must be >= 1");
    strides_[a] = size;
    size *= shape_[a];
  }
  data_.assign(size, fill);
}

std::int64_t DenseTensor::Offset(std::span<const int> index) const {
  if (static_cast<int>(index.size()) != order()) {
    throw std::invalid_argument("tensor index has the wrong order");
  }
  std::int64_t off = 0;
  for (int a = 0; a < order(); ++a) {
    if (index[a] < 0 || index[a] >= shape_[a]) {
      throw std::out_of_range("tensor index out of range on axis " +
                              std::to_string(a));
    }
    off += index[a] * strides_[a];
  }
  return off;
}

std::vector<int> DenseTensor::Unravel(std::int64_t offset) const {
  std::vector<int> index(order());
  for (int a = 0; a < order(); ++a) {
    index[a] = static_cast<int>(offset / strides_[a]);
    offset %= strides_[a];
  }
  return index;
}

DenseTensor BuildScoreTensor(std::span<const Eigen::MatrixXd> node_embeddings) {
  const int k = static_cast<int>(node_embeddings.size());
  if (k < 1) throw std::invalid_argument("score tensor needs at least one graph");
  const Eigen::Index b = node_embeddings[0].cols();
  std::vector<int> shape;
  for (const auto& h : node_embeddings) {
    if (h.cols() != b) throw std::invalid_argument("embedding widths differ");
    shape.push_back(static_cast<int>(h.rows()));
  }
  DenseTensor x(shape);

  // prefix[a] holds h_0[i_0] * ... * h_a[i_a] element-wise for the current
  // odometer position, so each entry costs O(b) instead of O(k b).
  std::vector<Eigen::RowVectorXd> prefix(k);
  std::vector<int> index(k, 0);
  auto refresh = [&](int from) {
    for (int a = from; a < k; ++a) {
      prefix[a] = a == 0 ? Eigen::RowVectorXd(node_embeddings[0].row(index[0]))
                         : Eigen::RowVectorXd(prefix[a - 1].cwiseProduct(
                               node_embeddings[a].row(index[a])));
    }
  };
  refresh(0);
  for (std::int64_t off = 0; off < x.size(); ++off) {
    double total = 0.0;
    for (Eigen::Index j = 0; j < b; ++j) total += prefix[k - 1][j];
    x[off] = total;
    int a = k - 1;
    while (a >= 0 && ++index[a] == shape[a]) index[a--] = 0;
    if (a < 0) break;
    refresh(a);
  }
  return x;
}

DenseTensor BuildMatchingTensor(const DenseTensor& scores) {
  const int k = scores.order();
  DenseTensor y(scores.shape(), 0.0);
  std::vector<double> soft;
  for (int axis = 0; axis < k; ++axis) {
    const std::int64_t stride = scores.strides()[axis];
    const int len = scores.shape()[axis];
    soft.resize(len);
    ForEachFiber(scores, axis, [&](std::int64_t base) {
      double peak = scores[base];
      double sum = 0.0;
      for (int i = 0; i < len; ++i) {
        const double v = scores[base + i * stride];
        peak = std::max(peak, v);
        sum += v;
      }
      double norm = 0.0;
      for (int i = 0; i < len; ++i) {
        soft[i] = std::exp(scores[base + i * stride] - peak);
        norm += soft[i];
      }
      const double avg = Sigmoid(sum) / len;
      for (int i = 0; i < len; ++i) {
        y[base + i * stride] += (soft[i] / norm) * avg / k;
      }
    });
  }
  return y;
}

MatchingTensor MaskFeatureMismatch(const DenseTensor& y,
                                   std::span<const Graph* const> graphs) {
  if (static_cast<int>(graphs.size()) != y.order()) {
    throw std::invalid_argument("one graph per tensor axis required");
  }
  for (int a = 0; a < y.order(); ++a) {
    if (graphs[a]->num_nodes() != y.shape()[a]) {
      throw std::invalid_argument("graph size differs from tensor axis " +
                                  std::to_string(a));
    }
  }
  MatchingTensor out{y, std::vector<std::uint8_t>(y.size(), 1), 0};
  const int k = y.order();
  std::vector<int> index(k, 0);
  for (std::int64_t off = 0; off < y.size(); ++off) {
    const int f = graphs[0]->feature(index[0]);
    bool same = true;
    for (int a = 1; a < k && same; ++a) same = graphs[a]->feature(index[a]) == f;
    if (!same) {
      out.values[off] = 0.0;
      out.kept[off] = 0;
    }
    if (out.values[off] != 0.0) ++out.num_nonzero;
    for (int a = k - 1; a >= 0 && ++index[a] == y.shape()[a]; --a) index[a] = 0;
  }
  return out;
}

}  // namespace protograph
