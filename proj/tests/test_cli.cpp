// Copyright 2026 The projent authors
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

#include "projent/cli.hpp"

#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "doctest.h"
#include "projent/models.hpp"

using namespace projent;
using namespace projent::cli;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) : path("/tmp/projent_test_" + name) {}
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("state parsing") {
    auto iso = parse_state("isotropic:d=2,p=0.75");
    CHECK((iso.entries() - isotropic({2, 0.75}).entries()).norm() <= 1e-12);
    auto phi = parse_state("maxent:d=3");
    CHECK(phi.dim() == 9);
    auto diag = parse_state("diag:0.9,0.1");
    CHECK(diag.entries()(0, 0).real() == doctest::Approx(0.9));
    CHECK_THROWS_AS(parse_state("nope:1"), InvalidArgument);
    CHECK_THROWS_AS(parse_state("isotropic:d=2,p=oops"), InvalidArgument);
}

TEST_CASE("state file round trip") {
    TempFile f("state.json");
    {
        nlohmann::json j;
        j["matrix"] = matrix_to_json(isotropic({2, 0.75}).entries());
        j["subsystem_dims"] = {2, 2};
        std::ofstream out(f.path);
        out << j;
    }
    auto rho = parse_state("@" + f.path);
    CHECK((rho.entries() - isotropic({2, 0.75}).entries()).norm() <= 1e-12);
    CHECK(rho.subsystem_dims() == std::vector<int>{2, 2});
}

TEST_CASE("cone parsing") {
    CHECK(parse_cone("ppt:2,2").kind() == FreeCone::Kind::Ppt);
    CHECK(parse_cone("diagonal:3").dim() == 3);
    auto single = parse_cone("singleton:diag:0.5,0.5");
    CHECK(single.kind() == FreeCone::Kind::Singleton);
    CHECK_THROWS_AS(parse_cone("ppt:2"), InvalidArgument);
}

TEST_CASE("cmd_measure writes a provenance-tagged record") {
    TempFile f("measure.json");
    RunConfig cfg;
    cfg.quantity = "dproj";
    cfg.cone = "ppt:2,2";
    cfg.state = "isotropic:d=2,p=0.75";
    cfg.out = f.path;
    REQUIRE(cmd_measure(cfg) == kExitOk);
    auto j = nlohmann::json::parse(slurp(f.path));
    CHECK(j["bits"]["value"].get<double>() == doctest::Approx(std::log2(3.0)).epsilon(1e-5));
    CHECK(j["bits"].contains("provenance"));

    cfg.state = "isotropic:d=2,p=0.3";
    REQUIRE(cmd_measure(cfg) == kExitOk);
    j = nlohmann::json::parse(slurp(f.path));
    CHECK(j["bits"]["value"].get<double>() == doctest::Approx(0.0).epsilon(1e-6));

    cfg.quantity = "rs";
    cfg.state = "maxent:d=2";
    REQUIRE(cmd_measure(cfg) == kExitOk);
    j = nlohmann::json::parse(slurp(f.path));
    CHECK(j["bits"]["value"].get<double>() == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("cmd_measure exit codes") {
    RunConfig cfg;
    cfg.quantity = "unknown";
    cfg.cone = "ppt:2,2";
    cfg.state = "maxent:d=2";
    cfg.out = "/tmp/projent_test_unused.json";
    CHECK(cmd_measure(cfg) == kExitUsage);
}

TEST_CASE("cmd_fig2 output and byte stability") {
    TempFile a("fig2_a.csv"), b("fig2_b.csv");
    RunConfig cfg;
    cfg.format = "csv";
    cfg.out = a.path;
    REQUIRE(cmd_fig2(2, 0.5, 0.99, 0.01, cfg) == kExitOk);
    cfg.out = b.path;
    REQUIRE(cmd_fig2(2, 0.5, 0.99, 0.01, cfg) == kExitOk);
    const std::string text = slurp(a.path);
    CHECK(text == slurp(b.path));
    CHECK(text.find("p,dproj_bits,dsep_inf_bits") == 0);
    CHECK(text.find("0.900000,3.169925,0.531004") != std::string::npos);
    CHECK(text.find("0.750000,1.584963,0.188722") != std::string::npos);
    CHECK(text.find("0.500000,0.000000,0.000000") != std::string::npos);
}

TEST_CASE("cmd_fig2 svg emitter") {
    TempFile f("fig2.svg");
    RunConfig cfg;
    cfg.format = "svg";
    cfg.out = f.path;
    REQUIRE(cmd_fig2(2, 0.5, 0.99, 0.01, cfg) == kExitOk);
    const std::string svg = slurp(f.path);
    CHECK(svg.find("<svg") == 0);
    CHECK(svg.find("polyline") != std::string::npos);
    CHECK(svg.rfind("</svg>\n") == svg.size() - 7);
}

TEST_CASE("cmd_rate reports") {
    TempFile f("rate.json");
    RunConfig cfg;
    cfg.rate = "tradeoff";
    cfg.cone = "ppt:2,2";
    cfg.state = "isotropic:d=2,p=0.75";
    cfg.omega = "maxent:d=2";
    cfg.errors = "constant:0.01";
    cfg.out = f.path;
    REQUIRE(cmd_rate(cfg) == kExitOk);
    auto j = nlohmann::json::parse(slurp(f.path));
    CHECK(j["kind"] == "strong_converse");
    CHECK(j["value_bits_per_copy"]["value"].get<double>() ==
          doctest::Approx(1.584963).epsilon(1e-6));

    cfg.errors = "superexponential";
    REQUIRE(cmd_rate(cfg) == kExitOk);
    j = nlohmann::json::parse(slurp(f.path));
    CHECK(j["value_bits_per_copy"]["value"].get<double>() == 0.0);
    CHECK(!j["caveats"].empty());

    cfg = RunConfig{};
    cfg.rate = "dichotomy";
    cfg.state = "diag:0.9,0.1";
    cfg.sigma = "diag:0.5,0.5";
    cfg.omega = "diag:0.8,0.2";
    cfg.omega2 = "diag:0.5,0.5";
    cfg.out = f.path;
    REQUIRE(cmd_rate(cfg) == kExitOk);
    j = nlohmann::json::parse(slurp(f.path));
    CHECK(j["kind"] == "exact");

    // Wrong regime maps to exit code 4.
    cfg = RunConfig{};
    cfg.rate = "exact";
    cfg.cone = "ppt:2,2";
    cfg.state = "isotropic:d=2,p=0.75";
    cfg.omega = "maxent:d=2";
    cfg.out = f.path;
    CHECK(cmd_rate(cfg) == kExitWrongRegime);
}
