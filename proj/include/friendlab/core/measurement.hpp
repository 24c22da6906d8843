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

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "friendlab/core/counter_rng.hpp"
#include "friendlab/core/projector.hpp"
#include "friendlab/core/state_vector.hpp"
#include "friendlab/core/tolerance.hpp"
#include "friendlab/errors.hpp"

namespace friendlab {

/// Squared norm of the projected state, clamped into [0, 1].
inline double born_probability(const StateVector& state, const ProjectorSpec& proj) {
    const auto ps = proj.materialize(state.layout());
    const double p = ProjectorSpec::apply(state.layout(), ps, state.amplitudes()).squaredNorm();
    return std::clamp(p, 0.0, 1.0);
}

/// P(target and condition) / P(condition). The two projectors must commute;
/// a condition of probability <= 1e-12 is an error, never 0/0 -> 0.
inline double conditional_probability(const StateVector& state, const ProjectorSpec& condition,
                                      const ProjectorSpec& target) {
    const auto& layout = state.layout();
    if (!projectors_commute(layout, condition, target)) {
        throw ContractError("conditional_probability: condition and target do not commute");
    }
    const auto pc = condition.materialize(layout);
    const auto pt = target.materialize(layout);
    const Vector conditioned = ProjectorSpec::apply(layout, pc, state.amplitudes());
    const double p_cond = conditioned.squaredNorm();
    if (p_cond <= tol::kZeroProbability) {
        throw UndefinedConditionalError("conditioning on zero-probability event '" +
                                        condition.describe() + "'");
    }
    const double p_joint = ProjectorSpec::apply(layout, pt, conditioned).squaredNorm();
    return std::clamp(p_joint / p_cond, 0.0, 1.0);
}

/// Projects and renormalises (Lueders collapse).
inline StateVector project_collapse(const StateVector& state, const ProjectorSpec& proj) {
    const auto ps = proj.materialize(state.layout());
    Vector v = ProjectorSpec::apply(state.layout(), ps, state.amplitudes());
    const double p = v.squaredNorm();
    if (p <= tol::kZeroProbability) {
        throw UndefinedConditionalError("collapse onto zero-probability event '" + proj.describe() +
                                        "'");
    }
    v /= std::sqrt(p);
    return StateVector(state.layout_ptr(), std::move(v));
}

/**
 * Complete set of orthogonal projectors on a layout, validated once.
 *
 * The outcome projectors must sum to the identity on the registers they
 * touch (within 1e-12); for projectors that is equivalent to mutual
 * orthogonality plus exhaustiveness.
 */
class Partition {
   public:
    Partition(const LayoutPtr& layout, std::vector<ProjectorSpec> outcomes)
        : layout_(layout), specs_(std::move(outcomes)) {
        if (!layout_) throw ConfigurationError("partition needs a layout");
        if (specs_.empty()) throw ContractError("partition has no outcomes");
        std::vector<LocalProjector> all;
        for (const auto& s : specs_) {
            ops_.push_back(s.materialize(*layout_));
            all.insert(all.end(), ops_.back().begin(), ops_.back().end());
        }
        const auto regs = ProjectorSpec::support(all);
        const auto d = static_cast<Eigen::Index>(layout_->dimension_of(regs));
        Matrix sum = Matrix::Zero(d, d);
        for (const auto& o : ops_) sum += ProjectorSpec::matrix_on(*layout_, o, regs);
        if (detail::max_abs(sum - Matrix::Identity(d, d)) > tol::kExact) {
            throw ContractError("partition is not exhaustive/orthogonal on its registers");
        }
    }

    std::size_t size() const { return specs_.size(); }
    const ProjectorSpec& outcome(std::size_t i) const { return specs_.at(i); }
    const LayoutPtr& layout() const { return layout_; }

    Vector project(std::size_t i, const Vector& v) const {
        return ProjectorSpec::apply(*layout_, ops_.at(i), v);
    }

   private:
    LayoutPtr layout_;
    std::vector<ProjectorSpec> specs_;
    std::vector<std::vector<LocalProjector>> ops_;
};

/// Born weights of every outcome of a partition.
inline std::vector<double> born_distribution(const StateVector& state, const Partition& part) {
    if (!(state.layout() == *part.layout())) {
        throw ConfigurationError("partition built for a different layout");
    }
    std::vector<double> probs;
    probs.reserve(part.size());
    for (std::size_t i = 0; i < part.size(); ++i) {
        probs.push_back(part.project(i, state.amplitudes()).squaredNorm());
    }
    return probs;
}

/// Inverse-CDF draw from a discrete distribution using one counter-based
/// uniform. Zero-weight outcomes are never returned.
inline std::size_t draw_outcome(const std::vector<double>& probs, const RngKey& key) {
    const double u = CounterRng::uniform(key);
    double total = 0.0;
    for (double p : probs) total += p;
    double acc = 0.0;
    std::size_t last_positive = probs.size();
    for (std::size_t i = 0; i < probs.size(); ++i) {
        if (probs[i] <= 0.0) continue;
        last_positive = i;
        acc += probs[i];
        if (u * total < acc) return i;
    }
    if (last_positive == probs.size()) throw ContractError("distribution has no support");
    return last_positive;
}

struct SampledOutcome {
    std::size_t index;
    StateVector state;
};

/// Draws an outcome with Born weights and returns the collapsed branch.
/// Deterministic in `key`.
inline SampledOutcome sample_outcome(const StateVector& state, const Partition& part,
                                     const RngKey& key) {
    const auto probs = born_distribution(state, part);
    const auto k = draw_outcome(probs, key);
    Vector v = part.project(k, state.amplitudes());
    v /= std::sqrt(probs[k]);
    return {k, StateVector(state.layout_ptr(), std::move(v))};
}

inline SampledOutcome sample_outcome(const StateVector& state,
                                     const std::vector<ProjectorSpec>& partition,
                                     const RngKey& key) {
    return sample_outcome(state, Partition(state.layout_ptr(), partition), key);
}

}  // namespace friendlab
