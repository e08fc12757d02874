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

#ifndef PROJENT_MULTICOPY_HPP
#define PROJENT_MULTICOPY_HPP

#include <optional>
#include <string>
#include <vector>

#include "projent/divergences.hpp"
#include "projent/freesets.hpp"

namespace projent {

/// Finite-n bracket of a regularized (per-copy limit) divergence. The limit
/// itself is never claimed; fekete_upper bounds it from above for
/// sub-additive measures and witness_lower certifies it from below where a
/// dual witness is available.
struct RegularizationReport {
    std::string measure;
    std::vector<std::pair<int, double>> values;  // (n, per-copy bits)
    double fekete_upper = 0.0;                   // min_n value(n)/n
    std::optional<double> witness_lower;         // best certified per-copy lower bound
    SmoothingRadius eps_used;
};

RegularizationReport regularize(Measure measure, const DensityMatrix& rho,
                                const FreeConeFamily& family, int n_max,
                                const SmoothingRadius& eps = {});

/// One row of the AEP inspection table.
struct AepRow {
    int n = 0;
    double eps = 0.0;
    double smoothed_dmax_per_copy = 0.0;
    double smoothed_dproj_per_copy = 0.0;
};

struct AepTable {
    double unsmoothed_dproj_single = 0.0;  // dproj_set(rho) at n = 1
    std::vector<AepRow> rows;
};

/// Sandwich table for the asymptotic equipartition trend: per (n, eps),
/// smoothed per-copy D_max <= smoothed per-copy D_Omega <= unsmoothed
/// single-copy D_Omega.
AepTable aep_sandwich(const DensityMatrix& rho, const FreeConeFamily& family, int n_max,
                      const std::vector<SmoothingRadius>& eps_list);

}  // namespace projent

#endif  // PROJENT_MULTICOPY_HPP
