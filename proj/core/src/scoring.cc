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

#include "protograph/scoring.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace protograph {
namespace {

void CheckVectors(std::span<const Eigen::VectorXd> vectors) {
  if (vectors.size() < 2) {
    throw std::invalid_argument("scoring needs at least two vectors");
  }
  for (const auto& v : vectors) {
    if (v.size() != vectors[0].size()) {
      throw std::invalid_argument("scoring vectors differ in dimension");
    }
  }
}

}  // namespace

double ScoreProduct(std::span<const Eigen::VectorXd> vectors) {
  CheckVectors(vectors);
  if (vectors.size() == 2) return vectors[0].dot(vectors[1]);
  // Fixed-width chunks keep the running product in registers.
  constexpr Eigen::Index kChunk = 8;
  const Eigen::Index b = vectors[0].size();
  const Eigen::Index full = b - b % kChunk;
  double total = 0.0;
  Eigen::Array<double, kChunk, 1> acc;
  for (Eigen::Index j = 0; j < full; j += kChunk) {
    acc = vectors[0].segment<kChunk>(j).array();
    for (size_t i = 1; i < vectors.size(); ++i) {
      acc *= vectors[i].segment<kChunk>(j).array();
    }
    total += acc.sum();
  }
  for (Eigen::Index j = full; j < b; ++j) {
    double prod = vectors[0][j];
    for (size_t i = 1; i < vectors.size(); ++i) prod *= vectors[i][j];
    total += prod;
  }
  return total;
}

double ScorePairwiseMean(std::span<const Eigen::VectorXd> vectors) {
  CheckVectors(vectors);
  double total = 0.0;
  int pairs = 0;
  for (size_t i = 0; i < vectors.size(); ++i) {
    for (size_t j = i + 1; j < vectors.size(); ++j) {
      total += vectors[i].dot(vectors[j]);
      ++pairs;
    }
  }
  return total / pairs;
}

double ScorePairwiseGeometric(std::span<const Eigen::VectorXd> vectors) {
  CheckVectors(vectors);
  double log_total = 0.0;
  int pairs = 0;
  for (size_t i = 0; i < vectors.size(); ++i) {
    for (size_t j = i + 1; j < vectors.size(); ++j) {
      const double dot = std::max(0.0, vectors[i].dot(vectors[j]));
      if (dot == 0.0) return 0.0;
      log_total += std::log(dot);
      ++pairs;
    }
  }
  return std::exp(log_total / pairs);
}

}  // namespace protograph
