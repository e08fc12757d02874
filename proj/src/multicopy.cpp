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

#include "projent/multicopy.hpp"

#include <cmath>
#include <limits>

namespace projent {

namespace {

// Largest n with dim^n within the cap, for CapacityExceeded messages.
int largest_feasible_n(int per_copy_dim) {
    int n = 0;
    long long d = 1;
    while (d * per_copy_dim <= dim_cap()) {
        d *= per_copy_dim;
        ++n;
    }
    return n;
}

void check_capacity(const DensityMatrix& rho, int n_max) {
    long long d = 1;
    for (int k = 0; k < n_max; ++k) {
        d *= rho.dim();
        if (d > dim_cap()) {
            throw CapacityExceeded("regularize: n_max exceeds the dimension cap; largest feasible n is " +
                                   std::to_string(largest_feasible_n(rho.dim())));
        }
    }
}

}  // namespace

RegularizationReport regularize(Measure measure, const DensityMatrix& rho,
                                const FreeConeFamily& family, int n_max,
                                const SmoothingRadius& eps) {
    if (n_max < 1) throw InvalidArgument("regularize: n_max must be >= 1");
    check_capacity(rho, n_max);

    RegularizationReport rep;
    rep.measure = measure_name(measure);
    rep.eps_used = eps;
    rep.fekete_upper = std::numeric_limits<double>::infinity();

    DensityMatrix power = rho;
    for (int n = 1; n <= n_max; ++n) {
        if (n > 1) power = tensor(power, rho);
        const FreeCone cone = family.extend(n);
        DivergenceValue v;
        if (eps.epsilon > 0.0) {
            v = smoothed(measure, power, cone, eps);
        } else if (measure == Measure::DprojSet) {
            v = dproj_set(power, cone, /*want_witness=*/true);
            if (v.provenance == DivergenceValue::Provenance::WitnessBracket) {
                const double lo = v.witness_lo / n;
                if (!rep.witness_lower || lo > *rep.witness_lower) rep.witness_lower = lo;
            }
        } else {
            v = eval_measure(measure, power, cone);
        }
        const double per_copy = v.bits / n;
        rep.values.emplace_back(n, per_copy);
        rep.fekete_upper = std::min(rep.fekete_upper, per_copy);
    }
    return rep;
}

AepTable aep_sandwich(const DensityMatrix& rho, const FreeConeFamily& family, int n_max,
                      const std::vector<SmoothingRadius>& eps_list) {
    if (n_max < 1) throw InvalidArgument("aep_sandwich: n_max must be >= 1");
    check_capacity(rho, n_max);

    AepTable table;
    table.unsmoothed_dproj_single = dproj_set(rho, family.base()).bits;

    DensityMatrix power = rho;
    for (int n = 1; n <= n_max; ++n) {
        if (n > 1) power = tensor(power, rho);
        const FreeCone cone = family.extend(n);
        for (const auto& eps : eps_list) {
            AepRow row;
            row.n = n;
            row.eps = eps.epsilon;
            row.smoothed_dmax_per_copy = smoothed(Measure::DmaxSet, power, cone, eps).bits / n;
            row.smoothed_dproj_per_copy = smoothed(Measure::DprojSet, power, cone, eps).bits / n;
            table.rows.push_back(row);
        }
    }
    return table;
}

}  // namespace projent
