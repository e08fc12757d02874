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

#ifndef PROJENT_MODELS_HPP
#define PROJENT_MODELS_HPP

#include <utility>

#include "projent/qlinalg.hpp"

namespace projent {

struct IsotropicParams {
    int d;     // local dimension, >= 2
    double p;  // weight on the maximally entangled projector, in [0, 1]

    bool separable() const { return p <= 1.0 / d; }
};

/// rho_p = p Phi_d + (1-p) (I - Phi_d) / (d^2 - 1), on subsystems [d, d].
DensityMatrix isotropic(const IsotropicParams& params);

/// Two-qudit maximally entangled state Phi_d (rank-1 projector).
DensityMatrix max_entangled(int d);

/// h2(p) in bits, with 0 log 0 = 0.
double binary_entropy(double p);

/// von Neumann entropy in bits.
double von_neumann_entropy(const DensityMatrix& rho);

/// Relative entropy of coherence, S(dephase(rho)) - S(rho), in bits.
double coherence_rel_entropy(const DensityMatrix& rho);

/// Dual witness pair for the isotropic projective relative entropy:
/// A = (d-1)/(1-p) Phi_d, B = (I - Phi_d)/(1-p). Requires p in (1/d, 1).
std::pair<HermitianOperator, HermitianOperator> isotropic_witnesses(const IsotropicParams& params);

/// Closed form for the projective relative entropy of rho_p over PPT/SEP,
/// log2(p(d-1)/(1-p)) for p >= 1/d and 0 otherwise (bits). +inf at p = 1.
double isotropic_dproj_bits(const IsotropicParams& params);

/// Closed form for the regularized relative entropy of rho_p over SEP,
/// p log2 d + (1-p) log2(d/(d-1)) - h2(p) for p >= 1/d and 0 otherwise.
double isotropic_rel_entropy_bits(const IsotropicParams& params);

}  // namespace projent

#endif  // PROJENT_MODELS_HPP
