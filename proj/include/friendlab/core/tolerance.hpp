// Copyright 2026 The friendlab Authors
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

#include <cstddef>

namespace friendlab::tol {

/// Exact algebraic identities (norms, unitarity, projector algebra).
inline constexpr double kExact = 1e-12;
/// Results composed from several analytic steps.
inline constexpr double kComposed = 1e-9;
/// Unit-norm slack accepted from user-supplied superposition coefficients.
inline constexpr double kSuperpose = 1e-9;
/// Below this, an event is treated as impossible for conditioning.
inline constexpr double kZeroProbability = 1e-12;
/// Monte Carlo acceptance band, in standard errors.
inline constexpr double kSigmaBand = 4.0;

/// Largest composite dimension accepted by a RegisterLayout.
inline constexpr std::size_t kMaxDimension = std::size_t{1} << 20;

}  // namespace friendlab::tol
