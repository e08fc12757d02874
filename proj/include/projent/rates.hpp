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

#ifndef PROJENT_RATES_HPP
#define PROJENT_RATES_HPP

#include <string>
#include <utility>
#include <vector>

#include "projent/divergences.hpp"
#include "projent/freesets.hpp"
#include "projent/models.hpp"
#include "projent/multicopy.hpp"

namespace projent {

enum class RateKind { Converse, StrongConverse, Achievable, Exact };

const char* rate_kind_name(RateKind k);

/// One transformation-rate bound: a per-copy value, its logical strength,
/// the formula that produced it, the divergence inputs, and honesty caveats
/// (finite-n brackets, PPT relaxation, clamps).
struct RateReport {
    double value_bits_per_copy = 0.0;  // may be +inf
    RateKind kind = RateKind::Converse;
    std::string formula;
    std::vector<std::pair<std::string, double>> inputs;
    std::vector<std::string> caveats;
};

/// Error sequence (eps_n) for the distillation trade-off.
struct ErrorSequence {
    enum class Kind { Exponential, Superexponential, Constant };
    Kind kind = Kind::Constant;
    double param = 0.0;  // rate c for exponential, eps for constant

    static ErrorSequence exponential(double c);
    static ErrorSequence superexponential();
    static ErrorSequence constant(double eps);

    /// limsup (1/n) log2(1/eps_n) in closed form.
    double exponent() const;
};

/// Probabilistic converse: r_prob <= Dproj^inf(rho) / Dinf(omega).
RateReport converse_prob(const DensityMatrix& rho, const DensityMatrix& omega,
                         const FreeConeFamily& family, int n_max);

/// Deterministic converse: r <= Dinf(rho) / Dinf(omega).
RateReport converse_det(const DensityMatrix& rho, const DensityMatrix& omega,
                        const FreeConeFamily& family, int n_max);

/// Affine theories: the probabilistic rate is exactly Dproj^inf / Dinf.
RateReport exact_affine(const DensityMatrix& rho, const DensityMatrix& omega,
                        const FreeConeFamily& family, int n_max);

/// Achievable rate via the smoothed standard robustness denominator.
RateReport achievable_standard(const DensityMatrix& rho, const DensityMatrix& omega,
                               const FreeConeFamily& family, int n_max,
                               const std::vector<SmoothingRadius>& eps_list);

/// Distillation rate-error trade-off:
/// r <= (Dproj^inf(rho) - limsup (1/n) log2(1/eps_n)) / Dmin^inf(psi).
RateReport distillation_tradeoff(const DensityMatrix& rho, const DensityMatrix& psi,
                                 const FreeConeFamily& family, const ErrorSequence& errors,
                                 int n_max);

/// Quantum dichotomies: exact probabilistic rate Dproj(rho1||rho2)/D(omega1||omega2)
/// with the deterministic comparator attached as an input.
RateReport dichotomy_rate(const DensityMatrix& rho1, const DensityMatrix& rho2,
                          const DensityMatrix& omega1, const DensityMatrix& omega2);

/// Closed-form isotropic distillation rates toward Phi_2:
/// (probabilistic exact, deterministic converse).
std::pair<RateReport, RateReport> isotropic_rates(int d, double p);

}  // namespace projent

#endif  // PROJENT_RATES_HPP
