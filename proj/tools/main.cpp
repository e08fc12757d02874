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

#include <CLI11.hpp>

#include "projent/cli.hpp"

int main(int argc, char** argv) {
    using projent::cli::RunConfig;

    CLI::App app{"projent: conic divergences and transformation rates for resource theories"};
    app.require_subcommand(1);

    RunConfig cfg;
    int fig2_d = 2;
    double p_lo = 0.5, p_hi = 0.99, p_step = 0.01;

    auto* measure = app.add_subcommand("measure", "compute a single divergence value");
    measure->add_option("--quantity", cfg.quantity, "dmax | dmin | dproj | dproj_s | rs | d")
        ->required();
    measure->add_option("--cone", cfg.cone, "ppt:dA,dB | diagonal:d | singleton:<state> | @file")
        ->required();
    measure->add_option("--state", cfg.state, "isotropic:d=..,p=.. | maxent:d=.. | diag:.. | @file")
        ->required();
    measure->add_option("--eps", cfg.eps, "smoothing radius (first value used)");
    measure->add_option("--nmax", cfg.nmax, "copies (reserved)");
    measure->add_option("--out", cfg.out, "output path (default stdout)");
    measure->add_option("--format", cfg.format, "json");
    measure->add_flag("--witness", cfg.witness, "extract and verify a dual witness (dproj)");

    auto* fig2 = app.add_subcommand("fig2", "isotropic distillation-rate curves");
    fig2->add_option("--d", fig2_d, "local dimension");
    fig2->add_option("--pmin", p_lo, "grid start");
    fig2->add_option("--pmax", p_hi, "grid end");
    fig2->add_option("--pstep", p_step, "grid step");
    fig2->add_option("--out", cfg.out, "output path (default stdout)");
    fig2->add_option("--format", cfg.format, "csv | svg");

    auto* rate = app.add_subcommand("rate", "transformation-rate report");
    rate->add_option("--rate", cfg.rate,
                     "tradeoff | converse_prob | converse_det | exact | achievable | dichotomy")
        ->required();
    rate->add_option("--cone", cfg.cone, "cone family");
    rate->add_option("--state", cfg.state, "input state rho")->required();
    rate->add_option("--omega", cfg.omega, "target state");
    rate->add_option("--sigma", cfg.sigma, "second input state (dichotomy)");
    rate->add_option("--omega2", cfg.omega2, "second target state (dichotomy)");
    rate->add_option("--errors", cfg.errors, "constant:eps | exponential:c | superexponential");
    rate->add_option("--nmax", cfg.nmax, "copies for finite-n brackets");
    rate->add_option("--eps", cfg.eps, "smoothing radii (achievable)");
    rate->add_option("--out", cfg.out, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? projent::cli::kExitOk : projent::cli::kExitUsage;
    }

    if (measure->parsed()) {
        cfg.format = cfg.format.empty() ? "json" : cfg.format;
        return projent::cli::cmd_measure(cfg);
    }
    if (fig2->parsed()) {
        if (cfg.format == "json") cfg.format = "csv";
        return projent::cli::cmd_fig2(fig2_d, p_lo, p_hi, p_step, cfg);
    }
    return projent::cli::cmd_rate(cfg);
}
