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
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>

#include "commands.hpp"
#include "friendlab/core/counter_rng.hpp"
#include "simplex_oracle.hpp"

namespace friendlab::cli {

inline constexpr std::uint64_t kSelftestTrials = 100'000;

namespace detail {

/// Sub-stream for selftest draws that never collides with trial sampling.
inline double selftest_uniform(std::uint64_t seed, std::uint64_t index, std::uint32_t draw) {
    return CounterRng::uniform({seed ^ 0x5e1f7e57c0ffee00ull, index, draw});
}

inline void criterion(scenarios::ScenarioReport& out, int id,
                      const scenarios::ScenarioReport& part) {
    out.append_checks(part, std::to_string(id) + " ");
}

inline scenarios::ScenarioReport brukner_checks() {
    scenarios::ScenarioReport r;
    const auto lit =
        scenarios::brukner_chsh(std::numbers::pi / 4, scenarios::BruknerVariant::literal);
    r.check("|S[minus-axbz]| = 2sqrt2 at pi/4", 2.0 * std::numbers::sqrt2,
            std::abs(lit.by_variant[1]), tol::kComposed);
    r.check("S[literal] = 0 at pi/4", 0.0, lit.by_variant[0], tol::kExact);
    return r;
}

inline scenarios::ScenarioReport audit_checks() {
    using scenarios::audit_step;
    scenarios::ScenarioReport r;
    const auto on = scenarios::fr_inference_audit(true, {{"z", "OK"}, {"w", "OK"}});
    r.check_flag("zeus on: contradiction", true, on.contradiction);
    for (const char* id : {"1", "2", "3"}) {
        r.check_flag(std::string("zeus on: step ") + id + " certain", true,
                     audit_step(on, id).certain);
    }
    r.check_flag("zeus on: step 3 concludes tails", true,
                 audit_step(on, "3").conclusion == "coin=tails");
    r.check_flag("zeus on: step 4* concludes heads", true,
                 audit_step(on, "4*").conclusion == "coin=heads");
    r.check("zeus on: posterior(heads) = 1/3", 1.0 / 3, on.posterior[0], tol::kExact);
    r.check("zeus on: posterior(tails) = 2/3", 2.0 / 3, on.posterior[1], tol::kExact);
    r.check("zeus on: posterior = prior", on.prior[0], on.posterior[0], tol::kExact);
    const auto off = scenarios::fr_inference_audit(false, {{"w", "OK"}});
    r.check_flag("zeus off: no contradiction", false, off.contradiction);
    r.check_flag("zeus off: step 4 concludes heads", true,
                 audit_step(off, "4").conclusion == "coin=heads");
    return r;
}

inline scenarios::ScenarioReport epr_analytic_checks(std::uint64_t seed) {
    scenarios::ScenarioReport r;
    double worst_corr = 0.0, worst_frame = 0.0, min_fid = 1.0;
    for (std::uint64_t set = 0; set < 20; ++set) {
        scenarios::EprUndoConfig cfg;
        for (std::uint32_t i = 0; i < 4; ++i) {
            cfg.angles[i] =
                DirectionAngle::radians(2.0 * std::numbers::pi * selftest_uniform(seed, set, i));
        }
        const auto f = scenarios::epr_undo_analytic(cfg);
        cfg.frame = scenarios::EprFrame::Fstar;
        const auto g = scenarios::epr_undo_analytic(cfg);
        for (auto p : bell::kPairs) {
            const double e = scenarios::epr_singlet_correlation(cfg, p);
            worst_corr = std::max({worst_corr, std::abs(f.correlations.get(p) - e),
                                   std::abs(g.correlations.get(p) - e)});
            worst_frame =
                std::max(worst_frame, std::abs(f.correlations.get(p) - g.correlations.get(p)));
        }
        min_fid = std::min({min_fid, f.fidelity_psi3_psi1, g.fidelity_psi3_psi1});
    }
    r.check("20 random sets: max |E - (-cos)|", 0.0, worst_corr, tol::kComposed,
            scenarios::Relation::at_most);
    r.check("20 random sets: min fidelity(Psi3, Psi1)", 1.0, min_fid, tol::kExact,
            scenarios::Relation::at_least);
    r.check("20 random sets: max |E_F - E_F*|", 0.0, worst_frame, tol::kExact,
            scenarios::Relation::at_most);
    const auto canon = scenarios::epr_undo_analytic({});
    r.check("canonical |CHSH| = 2sqrt2", 2.0 * std::numbers::sqrt2,
            std::abs(bell::chsh_value(canon.correlations, bell::ChshVariant::standard())),
            tol::kComposed);
    return r;
}

inline scenarios::ScenarioReport epr_monte_carlo(std::uint64_t seed) {
    scenarios::ScenarioReport r;
    scenarios::EprUndoConfig cfg;
    cfg.trials = kSelftestTrials;
    cfg.seed = seed;
    r.append_checks(scenarios::epr_undo_run(cfg), "unitary: ");
    cfg.mode = scenarios::EprMode::collapse;
    for (auto frame : {scenarios::EprFrame::F, scenarios::EprFrame::Fstar}) {
        cfg.frame = frame;
        r.append_checks(scenarios::epr_undo_run(cfg), "collapse " + to_string(frame) + ": ");
    }
    return r;
}

inline scenarios::ScenarioReport fine_checks(std::uint64_t seed) {
    scenarios::ScenarioReport r;
    std::size_t cases = 0, agree = 0, feasible = 0;
    double worst_witness = 0.0;
    const auto run = [&](const bell::CorrelationSet& c) {
        const auto got = bell::fine_joint_exists(c);
        const auto ref = SimplexOracle::solve(c);
        ++cases;
        agree += got.feasible == ref.feasible ? 1 : 0;
        if (got.witness) {
            ++feasible;
            worst_witness = std::max(worst_witness, bell::witness_error(c, *got.witness));
        }
    };
    for (std::uint64_t i = 0; i < 1000; ++i) {
        std::array<double, 4> v{};
        for (std::uint32_t k = 0; k < 4; ++k)
            v[k] = 2.0 * selftest_uniform(seed, 1000 + i, k) - 1.0;
        run(bell::CorrelationSet::of(v[0], v[1], v[2], v[3]));
    }
    const std::array<double, 5> grid{-1.0, -0.5, 0.0, 0.5, 1.0};
    for (double x0 : grid) {
        for (double x1 : grid) {
            for (double x2 : grid) {
                for (double x3 : grid) run(bell::CorrelationSet::of(x0, x1, x2, x3));
            }
        }
    }
    r.check("oracle agreement on 1000 random + 625 grid", static_cast<double>(cases),
            static_cast<double>(agree), 0.0);
    r.check("feasible witnesses reproduce inputs", 0.0, worst_witness, tol::kComposed,
            scenarios::Relation::at_most);
    r.check("feasible cases present", 1.0, static_cast<double>(feasible), 0.0,
            scenarios::Relation::at_least);
    const double h = std::numbers::sqrt2 / 2;
    const auto q = bell::fine_joint_exists(bell::CorrelationSet::of(-h, -h, -h, h));
    r.check_flag("quantum correlations infeasible", false, q.feasible);
    r.check("quantum certificate = 2sqrt2", 2.0 * std::numbers::sqrt2,
            q.violated ? q.violated->value : 0.0, tol::kComposed);
    return r;
}

}  // namespace detail

/// Every acceptance check, grouped by criterion number. Timing is left to
/// the caller so the report stays byte-identical across runs.
inline Document selftest_document(std::uint64_t seed) {
    Document doc;
    auto& r = doc.report;
    r.scenario = "selftest";
    r.param("seed", std::to_string(seed))
        .param("rng", std::string(CounterRng::kName))
        .param("trials", static_cast<std::int64_t>(kSelftestTrials));

    std::array<scenarios::ScenarioReport, 9> parts;
    parts[0] = scenarios::brukner_preliminary_run();
    parts[1] = detail::brukner_checks();
    parts[2].append_checks(scenarios::fr_outcome_table(true), "zeus on: ");
    parts[2].append_checks(scenarios::fr_outcome_table(false), "zeus off: ");
    parts[3] = detail::audit_checks();
    parts[4] = scenarios::fr_appendix_comparison();
    parts[5] = detail::epr_analytic_checks(seed);
    parts[6] = detail::epr_monte_carlo(seed);
    parts[7] = detail::fine_checks(seed);
    const auto first = to_json_text(to_json(Document{parts[6], {}, {}}));
    const auto second = to_json_text(to_json(Document{detail::epr_monte_carlo(seed), {}, {}}));
    parts[8].check_flag("repeated Monte Carlo report is byte-identical", true, first == second);

    for (int i = 0; i < 9; ++i) {
        detail::criterion(r, i + 1, parts[static_cast<std::size_t>(i)]);
        r.result("criterion " + std::to_string(i + 1),
                 parts[static_cast<std::size_t>(i)].all_pass());
    }
    return doc;
}

}  // namespace friendlab::cli
