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

#ifndef PROTOGRAPH_SCORING_H_
#define PROTOGRAPH_SCORING_H_

#include <span>

#include <Eigen/Dense>

namespace protograph {

// Joint matching score of k >= 2 vectors: the sum over coordinates of their
// element-wise product. O(k * b). For k = 2 this is the inner product.
// Throws std::invalid_argument for k < 2 or mismatched dimensions.
double ScoreProduct(std::span<const Eigen::VectorXd> vectors);

// Arithmetic mean of the inner products over all k(k-1)/2 pairs. O(k^2 * b).
double ScorePairwiseMean(std::span<const Eigen::VectorXd> vectors);

// Geometric mean of the inner products over all pairs. Negative products are
// clamped to zero. O(k^2 * b).
double ScorePairwiseGeometric(std::span<const Eigen::VectorXd> vectors);

}  // namespace protograph

#endif  // PROTOGRAPH_SCORING_H_
