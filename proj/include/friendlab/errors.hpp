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

#include <stdexcept>
#include <string>

namespace friendlab {

/// Unknown register, unknown basis name, malformed layout or argument.
class ConfigurationError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// A caller broke an operation's precondition (non-unitary evolution,
/// non-commuting conditioning, non-exhaustive partition, ...).
class ContractError : public std::logic_error {
   public:
    using std::logic_error::logic_error;
};

/// Conditioning on, or collapsing onto, an event of (numerically) zero
/// probability. Never silently mapped to 0.
class UndefinedConditionalError : public std::domain_error {
   public:
    using std::domain_error::domain_error;
};

/// A numerical invariant drifted past its tolerance (norm, unitarity,
/// witness reproduction).
class NumericalContractViolation : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

}  // namespace friendlab
