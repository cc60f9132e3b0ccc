// Copyright 2026 The Qompress Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "qompress/qstate.hpp"

namespace qompress {

using Rng = std::mt19937_64;

/// Haar-random normalized state on a register with the given dims.
PureState random_state(const std::vector<std::size_t> &dims, Rng &rng);

/// Haar-random unitary of order n (QR of a complex Ginibre matrix with the
/// phase of R's diagonal absorbed).
Matrix random_unitary(std::size_t n, Rng &rng);

/// Uniformly random nonempty proper subset of {0..d-1}, ascending.
std::vector<std::size_t> random_subset(std::size_t d, Rng &rng);

/// Random subset of {0..d-1} of exactly `size` elements, ascending.
std::vector<std::size_t> random_subset(std::size_t d, std::size_t size, Rng &rng);

}  // namespace qompress
