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

#ifndef PROJENT_CLI_HPP
#define PROJENT_CLI_HPP

#include <string>
#include <vector>

#include "projent/divergences.hpp"
#include "projent/freesets.hpp"

namespace projent::cli {

/// Exit codes: 0 ok, 1 usage, 2 solver failure, 3 self-check mismatch,
/// 4 wrong regime.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitSolver = 2;
inline constexpr int kExitSelfCheck = 3;
inline constexpr int kExitWrongRegime = 4;

struct RunConfig {
    std::string quantity;  // dmax | dmin | dproj | dproj_s | rs | d
    std::string cone;      // ppt:dA,dB | diagonal:d | singleton:<state> | @file.json
    std::string state;     // isotropic:d=..,p=.. | maxent:d=.. | diag:a,b,.. | @file.json
    std::string omega;     // rate target state
    std::string sigma;     // second input state (dichotomy)
    std::string omega2;    // second target state (dichotomy)
    std::string rate;      // tradeoff | converse_prob | converse_det | exact | achievable | dichotomy
    std::string errors;    // constant:eps | exponential:c | superexponential
    int nmax = 1;
    std::vector<double> eps;
    std::string out;            // empty = stdout
    std::string format = "json";  // json | csv | svg
    bool witness = false;
};

DensityMatrix parse_state(const std::string& spec);
FreeCone parse_cone(const std::string& spec);

int cmd_measure(const RunConfig& cfg);
int cmd_fig2(int d, double p_lo, double p_hi, double p_step, const RunConfig& cfg);
int cmd_rate(const RunConfig& cfg);

}  // namespace projent::cli

#endif  // PROJENT_CLI_HPP
