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

#ifndef PROTOGRAPH_SEED_H_
#define PROTOGRAPH_SEED_H_

#include <cstdint>
#include <random>
#include <string_view>

namespace protograph {

using Rng = std::mt19937_64;

// Derives an independent child seed from a root seed and a (component,
// index) name, so sub-runs can be reproduced in isolation.
std::uint64_t DeriveSeed(std::uint64_t root, std::string_view component,
                         std::uint64_t index = 0);

inline Rng MakeRng(std::uint64_t root, std::string_view component,
                   std::uint64_t index = 0) {
  return Rng(DeriveSeed(root, component, index));
}

}  // namespace protograph

#endif  // PROTOGRAPH_SEED_H_
