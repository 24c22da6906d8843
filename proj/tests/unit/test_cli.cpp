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

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli/cli.hpp"

namespace friendlab::cli {
namespace {

struct Run {
    int rc;
    std::string out;
    std::string err;
};

Run run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int rc = run(args, out, err);
    return {rc, out.str(), err.str()};
}

Json run_json(std::vector<std::string> args) {
    args.insert(args.begin(), {"--format", "json"});
    const auto r = run_cli(std::move(args));
    EXPECT_EQ(r.rc, 0) << r.err;
    return Json::parse(r.out);
}

TEST(CliParse, Doubles) {
    EXPECT_DOUBLE_EQ(parse_double("0.25", "x"), 0.25);
    EXPECT_DOUBLE_EQ(parse_double("-1e-3", "x"), -1e-3);
    EXPECT_THROW(parse_double("0.25x", "x"), ConfigurationError);
    EXPECT_THROW(parse_double("", "x"), ConfigurationError);
    EXPECT_THROW(parse_double("inf", "x"), ConfigurationError);
    EXPECT_THROW(parse_double("nan", "x"), ConfigurationError);
}

TEST(CliParse, Observation) {
    const auto o = parse_observation("z=OK,w=fail");
    ASSERT_EQ(o.size(), 2u);
    EXPECT_EQ(o[0].first, "z");
    EXPECT_EQ(o[1].second, "fail");
    EXPECT_THROW(parse_observation("zOK"), ConfigurationError);
}

TEST(CliParse, Marginals) {
    bell::CorrelationSet s;
    parse_marginals("a=0.5,d=-1", s);
    EXPECT_DOUBLE_EQ(*s.marginal(bell::Variable::a), 0.5);
    EXPECT_DOUBLE_EQ(*s.marginal(bell::Variable::d), -1.0);
    EXPECT_THROW(parse_marginals("e=0", s), ConfigurationError);
}

TEST(CliJson, SeventeenDigitsAndNull) {
    EXPECT_EQ(format_double(0.1), "0.10000000000000001");
    EXPECT_EQ(format_double(-0.0), "0");
    EXPECT_EQ(format_double(std::nan("")), "null");
    EXPECT_EQ(format_double(1.0), "1");
}

TEST(CliBrukner, DefaultReportsPreliminaryAndVariants) {
    const auto j = run_json({"brukner"});
    EXPECT_EQ(j["schema_version"], "1");
    EXPECT_EQ(j["scenario"], "brukner");
    EXPECT_TRUE(j["all_pass"].get<bool>());
    EXPECT_TRUE(j["conventions"].contains("rng"));
}

TEST(CliBrukner, RejectsBadTheta) {
    EXPECT_EQ(run_cli({"brukner", "--theta", "abc"}).rc, 1);
    EXPECT_EQ(run_cli({"brukner", "--variant", "nope"}).rc, 1);
}

TEST(CliFr, AuditFindsContradictionWithZeus) {
    const auto j = run_json({"fr", "--audit"});
    EXPECT_TRUE(j["results"]["contradiction"].get<bool>());
    EXPECT_EQ(j["results"]["audit"]["steps"].size(), 5u);
}

TEST(CliFr, NoZeusNoContradiction) {
    const auto j = run_json({"fr", "--zeus", "off", "--observe", "w=OK"});
    EXPECT_FALSE(j["results"]["contradiction"].get<bool>());
    EXPECT_TRUE(j["all_pass"].get<bool>());
}

TEST(CliFr, BadObservationsAreUsageErrors) {
    EXPECT_EQ(run_cli({"fr", "--zeus", "off", "--observe", "z=OK"}).rc, 1);
    EXPECT_EQ(run_cli({"fr", "--observe", "q=OK"}).rc, 1);
    EXPECT_EQ(run_cli({"fr", "--zeus", "maybe"}).rc, 1);
}

TEST(CliEpr, AnalyticTsirelson) {
    const auto j = run_json({"epr-undo"});
    EXPECT_NEAR(j["results"]["|CHSH|"].get<double>(), 2.0 * std::sqrt(2.0), 1e-9);
    EXPECT_FALSE(j["results"]["joint distribution exists"].get<bool>());
}

TEST(CliEpr, CollapseCsvHasFullRows) {
    const auto r = run_cli(
        {"--format", "csv", "epr-undo", "--mode", "collapse", "--trials", "10", "--seed", "4"});
    ASSERT_EQ(r.rc, 0) << r.err;
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "trial,pair_or_full,out_a,out_b,out_c,out_d");
    int rows = 0;
    while (std::getline(in, line)) {
        EXPECT_NE(line.find(",full,"), std::string::npos) << line;
        ++rows;
    }
    EXPECT_EQ(rows, 10);
}

TEST(CliEpr, ValidatesArguments) {
    EXPECT_EQ(run_cli({"epr-undo", "--angles", "0,1,2"}).rc, 1);
    EXPECT_EQ(run_cli({"epr-undo", "--trials", "-5"}).rc, 1);
    EXPECT_EQ(run_cli({"epr-undo", "--trials", "100000000"}).rc, 1);
    EXPECT_EQ(run_cli({"epr-undo", "--mode", "collapse"}).rc, 1);
    EXPECT_EQ(run_cli({"epr-undo", "--unit", "grad"}).rc, 1);
}

TEST(CliEpr, SameSeedSameBytes) {
    const std::vector<std::string> args{"--format", "json", "epr-undo", "--mode", "collapse",
                                        "--trials", "3000", "--seed",   "9"};
    EXPECT_EQ(run_cli(args).out, run_cli(args).out);
}

TEST(CliFine, ZeroCorrelationsFeasible) {
    const auto j = run_json({"fine-check", "--corr", "0,0,0,0"});
    EXPECT_TRUE(j["results"]["feasible"].get<bool>());
    EXPECT_TRUE(j["results"].contains("witness"));
}

TEST(CliFine, QuantumCorrelationsInfeasible) {
    const double h = 1.0 / std::sqrt(2.0);
    const std::string c = format_double(-h);
    const auto j =
        run_json({"fine-check", "--corr", c + "," + c + "," + c + "," + format_double(h)});
    EXPECT_FALSE(j["results"]["feasible"].get<bool>());
    EXPECT_TRUE(j["all_pass"].get<bool>());
}

TEST(CliFine, RejectsOutOfRange) {
    EXPECT_EQ(run_cli({"fine-check", "--corr", "0,0,0,1.5"}).rc, 1);
    EXPECT_EQ(run_cli({"fine-check"}).rc, 1);
}

TEST(CliGeneral, UsageErrors) {
    EXPECT_EQ(run_cli({}).rc, 1);
    EXPECT_EQ(run_cli({"bogus"}).rc, 1);
    EXPECT_EQ(run_cli({"fr", "--bogus"}).rc, 1);
    EXPECT_EQ(run_cli({"--format", "xml", "fr"}).rc, 1);
    EXPECT_EQ(run_cli({"--help"}).rc, 0);
}

TEST(CliGeneral, TableFormatIsDefault) {
    const auto r = run_cli({"fr"});
    EXPECT_EQ(r.rc, 0);
    EXPECT_NE(r.out.find("P(heads record)"), std::string::npos);
}

TEST(CliGeneral, OutWritesFile) {
    const auto path = std::filesystem::temp_directory_path() / "friendlab_cli_out_test.json";
    std::filesystem::remove(path);
    const auto r = run_cli({"--format", "json", "--out", path.string(), "fr"});
    ASSERT_EQ(r.rc, 0) << r.err;
    EXPECT_TRUE(r.out.empty());
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    EXPECT_EQ(Json::parse(buf.str())["scenario"], "fr");
    std::filesystem::remove(path);
}

}  // namespace
}  // namespace friendlab::cli
