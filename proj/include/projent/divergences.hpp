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

#ifndef PROJENT_DIVERGENCES_HPP
#define PROJENT_DIVERGENCES_HPP

#include <optional>
#include <string>
#include <utility>

#include "projent/freesets.hpp"
#include "projent/qlinalg.hpp"

namespace projent {

struct SmoothingRadius {
    double epsilon = 0.0;

    SmoothingRadius() = default;
    explicit SmoothingRadius(double eps);
};

/// Extended-real divergence value in bits, with provenance.
struct DivergenceValue {
    enum class Provenance { ClosedForm, Conic, WitnessBracket };

    double bits = 0.0;  // may be +inf
    Provenance provenance = Provenance::ClosedForm;
    double gap = 0.0;  // solver duality gap where applicable
    /// Certified bracket in bits; only meaningful for WitnessBracket.
    double witness_lo = 0.0;
    double witness_hi = 0.0;
    /// Extracted dual witness pair (A, B) with Tr(B rho) = 1, when requested.
    std::optional<std::pair<HermitianOperator, HermitianOperator>> witness;
    std::string note;

    bool finite() const;

    static DivergenceValue closed_form(double bits);
    static DivergenceValue infinite(std::string reason);
};

/// Umegaki relative entropy D(rho||sigma), bits; +inf on support mismatch.
DivergenceValue rel_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Max-relative entropy via the generalized-eigenvalue closed form.
DivergenceValue dmax(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Min-relative entropy -log2 Tr(Pi_rho sigma) (pure rho: the overlap form).
DivergenceValue dmin(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Projective relative entropy D_max(rho||sigma) + D_max(sigma||rho).
DivergenceValue dproj(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Operator-level variants (no normalization required); dproj is invariant
/// under independent positive rescaling of either argument.
double dmax_ops_bits(const HermitianOperator& rho, const HermitianOperator& sigma);
double dproj_ops_bits(const HermitianOperator& rho, const HermitianOperator& sigma);

/// min over normalized members sigma of dmax(rho||sigma), as the linear conic
/// program min Tr(sigma~) s.t. rho <= sigma~, sigma~ in cone.
DivergenceValue dmax_set(const DensityMatrix& rho, const FreeCone& cone);

/// -log2 max{ Tr(Pi_psi sigma) : sigma in cone, Tr sigma = 1 }.
DivergenceValue dmin_set(const DensityMatrix& psi, const FreeCone& cone);

/// Projective relative entropy of resource Omega_F as a single linear conic
/// program; with want_witness the dual solution is extracted, verified, and
/// reported as a certified bracket.
DivergenceValue dproj_set(const DensityMatrix& rho, const FreeCone& cone,
                          bool want_witness = false);

/// Logarithmic standard robustness log2(1 + R_s).
DivergenceValue robustness_standard(const DensityMatrix& rho, const FreeCone& cone);

/// Omega_s: like dproj_set but with the cone-order lower constraint
/// sigma~ - rho in cone.
DivergenceValue dproj_s_set(const DensityMatrix& rho, const FreeCone& cone);

/// Relative entropy of resource D_F; closed forms only (Singleton and
/// Diagonal cones). Other cones have no closed form and throw.
DivergenceValue rel_entropy_set(const DensityMatrix& rho, const FreeCone& cone);

enum class Measure { DmaxSet, DminSet, DprojSet, RobustnessStandard, DprojSSet, RelEntropySet };

const char* measure_name(Measure m);

/// Dispatch an unsmoothed set measure.
DivergenceValue eval_measure(Measure m, const DensityMatrix& rho, const FreeCone& cone);

/// epsilon-smoothed set measures: minimize over density matrices rho' with
/// (1/2)||rho' - rho||_1 <= eps. Single conic programs for DmaxSet and
/// RobustnessStandard; bisection on gamma for the projective variants.
DivergenceValue smoothed(Measure m, const DensityMatrix& rho, const FreeCone& cone,
                         const SmoothingRadius& eps);

}  // namespace projent

#endif  // PROJENT_DIVERGENCES_HPP
