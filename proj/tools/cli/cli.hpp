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
#include <charconv>
#include <cstdint>
#include <fstream>
#include <functional>
#include <numbers>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "commands.hpp"
#include "selftest.hpp"

namespace friendlab::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kNumerical = 2,
    kCheckFailure = 3,
};

inline std::uint64_t parse_count(const std::string& token, const std::string& what) {
    std::uint64_t v = 0;
    const char* last = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(token.data(), last, v);
    if (token.empty() || ec != std::errc{} || ptr != last) {
        throw ConfigurationError(what + " must be a non-negative integer, got '" + token + "'");
    }
    return v;
}

inline Format parse_format(const std::string& s) {
    if (s == "json") return Format::json;
    if (s == "csv") return Format::csv;
    return Format::table;
}

/// Runs one command line (without the program name). Output goes to `out`
/// unless --out names a file; diagnostics go to `err`.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Extended Wigner's-friend scenarios on a state-vector simulator.", "friendlab"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string format = "table";
    std::string out_path;
    app.add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"table", "json", "csv"}));
    app.add_option("--out", out_path, "Write the report to PATH instead of stdout");

    auto* brukner = app.add_subcommand("brukner", "Brukner preliminary and extended scenarios");
    std::string theta = "0.78539816339744828";
    std::string variant = "literal";
    brukner->add_option("--theta", theta, "Preparation angle in radians (default pi/4)");
    brukner->add_option("--variant", variant, "CHSH sign variant to select")
        ->check(CLI::IsMember({"literal", "minus-axbz", "minus-azbx", "minus-azbz"}));

    auto* fr = app.add_subcommand("fr", "Frauchiger-Renner outcome table and inference audit");
    std::string zeus = "on";
    std::string observe;
    bool audit = false;
    fr->add_option("--zeus", zeus, "Whether Zeus measures at t=3")
        ->check(CLI::IsMember({"on", "off"}));
    fr->add_option("--observe", observe, "Observed pointer readings, e.g. z=OK,w=OK");
    fr->add_flag("--audit", audit, "Run the inference audit");

    auto* epr = app.add_subcommand("epr-undo", "EPR pair with measurements undone in between");
    std::string angles = "0,45,90,135";
    std::string unit = "deg";
    std::string mode = "unitary";
    std::string frame = "F";
    std::string trials = "0";
    std::string seed = "0";
    epr->add_option("--angles", angles, "Angles a,b,c,d");
    epr->add_option("--unit", unit, "Angle unit")->check(CLI::IsMember({"deg", "rad"}));
    epr->add_option("--mode", mode, "Dynamics")->check(CLI::IsMember({"unitary", "collapse"}));
    epr->add_option("--frame", frame, "Time ordering")->check(CLI::IsMember({"F", "Fstar"}));
    epr->add_option("--trials", trials, "Monte Carlo trials (per pair in unitary mode)");
    epr->add_option("--seed", seed, "Counter-based RNG seed");

    auto* fine = app.add_subcommand("fine-check", "Joint-distribution feasibility of correlations");
    std::string corr;
    std::string marginals;
    fine->add_option("--corr", corr, "Correlations ab,bc,cd,ad")->required();
    fine->add_option("--marginals", marginals, "Marginals, e.g. a=0,b=0");

    auto* self = app.add_subcommand("selftest", "Run every acceptance check");
    std::string self_seed = "42";
    self->add_option("--seed", self_seed, "Seed for random angles and sampling");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kOk : kUsage;
    }

    try {
        Document doc;
        bool selftest = false;
        const Format fmt = parse_format(format);
        if (brukner->parsed()) {
            doc = brukner_document(parse_double(theta, "theta"),
                                   scenarios::parse_brukner_variant(variant));
        } else if (fr->parsed()) {
            std::optional<scenarios::Observation> obs;
            if (!observe.empty()) obs = parse_observation(observe);
            doc = fr_document(zeus == "on", obs, audit);
        } else if (epr->parsed()) {
            scenarios::EprUndoConfig cfg;
            const auto v = parse_list<4>(angles, "angle list");
            for (std::size_t i = 0; i < 4; ++i) {
                cfg.angles[i] =
                    unit == "deg" ? DirectionAngle::degrees(v[i]) : DirectionAngle::radians(v[i]);
            }
            cfg.mode =
                mode == "unitary" ? scenarios::EprMode::unitary : scenarios::EprMode::collapse;
            cfg.frame = frame == "F" ? scenarios::EprFrame::F : scenarios::EprFrame::Fstar;
            cfg.trials = parse_count(trials, "--trials");
            cfg.seed = parse_count(seed, "--seed");
            cfg.validate();
            doc = epr_document(cfg, fmt == Format::csv);
        } else if (fine->parsed()) {
            const auto v = parse_list<4>(corr, "correlation list");
            auto set = bell::CorrelationSet::of(v[0], v[1], v[2], v[3]);
            if (!marginals.empty()) parse_marginals(marginals, set);
            doc = fine_document(set);
        } else {
            selftest = true;
            doc = selftest_document(parse_count(self_seed, "--seed"));
        }

        if (out_path.empty()) {
            write_document(out, doc, fmt);
        } else {
            std::ofstream file(out_path, std::ios::binary);
            if (!file) {
                err << "error: cannot open " << out_path << " for writing\n";
                return kUsage;
            }
            write_document(file, doc, fmt);
        }
        if (selftest && !doc.report.all_pass()) {
            for (const auto& c : doc.report.checks) {
                if (!c.pass) err << "FAIL " << c.name << "\n";
            }
            return kCheckFailure;
        }
        return kOk;
    } catch (const NumericalContractViolation& e) {
        err << "numerical contract violation: " << e.what() << "\n";
        return kNumerical;
    } catch (const ConfigurationError& e) {
        err << "error: " << e.what() << "\n";
    } catch (const ContractError& e) {
        err << "contract error: " << e.what() << "\n";
    } catch (const UndefinedConditionalError& e) {
        err << "undefined conditional: " << e.what() << "\n";
    }
    return kUsage;
}

}  // namespace friendlab::cli
