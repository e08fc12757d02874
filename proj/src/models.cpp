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

#include "projent/models.hpp"

#include <cmath>
#include <limits>

namespace projent {

namespace {

CMatrix max_entangled_projector(int d) {
    CVector vec = CVector::Zero(d * d);
    for (int i = 0; i < d; ++i) vec(i * d + i) = 1.0 / std::sqrt(static_cast<double>(d));
    return vec * vec.adjoint();
}

}  // namespace

DensityMatrix isotropic(const IsotropicParams& params) {
    if (params.d < 2) throw InvalidArgument("isotropic: d must be >= 2");
    if (params.p < 0.0 || params.p > 1.0) throw InvalidArgument("isotropic: p must be in [0,1]");
    const int d = params.d;
    const CMatrix phi = max_entangled_projector(d);
    const CMatrix id = CMatrix::Identity(d * d, d * d);
    CMatrix m = params.p * phi + (1.0 - params.p) * (id - phi) / (d * d - 1.0);
    return DensityMatrix(HermitianOperator(std::move(m), {d, d}));
}

DensityMatrix max_entangled(int d) {
    if (d < 2) throw InvalidArgument("max_entangled: d must be >= 2");
    return DensityMatrix(HermitianOperator(max_entangled_projector(d), {d, d}));
}

double binary_entropy(double p) {
    if (p < 0.0 || p > 1.0) throw InvalidArgument("binary_entropy: p must be in [0,1]");
    double h = 0.0;
    if (p > 0.0) h -= p * std::log2(p);
    if (p < 1.0) h -= (1.0 - p) * std::log2(1.0 - p);
    return h;
}

double von_neumann_entropy(const DensityMatrix& rho) {
    EighResult e = eigh(rho.op());
    double s = 0.0;
    for (int i = 0; i < e.eigenvalues.size(); ++i) {
        const double lam = e.eigenvalues(i);
        if (lam > 1e-15) s -= lam * std::log2(lam);
    }
    return s;
}

double coherence_rel_entropy(const DensityMatrix& rho) {
    double s_dephased = 0.0;
    for (int i = 0; i < rho.dim(); ++i) {
        const double lam = rho.entries()(i, i).real();
        if (lam > 1e-15) s_dephased -= lam * std::log2(lam);
    }
    return s_dephased - von_neumann_entropy(rho);
}

std::pair<HermitianOperator, HermitianOperator> isotropic_witnesses(const IsotropicParams& params) {
    const int d = params.d;
    const double p = params.p;
    if (d < 2) throw InvalidArgument("isotropic_witnesses: d must be >= 2");
    if (!(p > 1.0 / d && p < 1.0)) {
        throw WrongRegime("isotropic_witnesses: requires p in (1/d, 1)");
    }
    const CMatrix phi = max_entangled_projector(d);
    const CMatrix id = CMatrix::Identity(d * d, d * d);
    HermitianOperator a((d - 1.0) / (1.0 - p) * phi, {d, d});
    HermitianOperator b((id - phi) / (1.0 - p), {d, d});
    return {std::move(a), std::move(b)};
}

double isotropic_dproj_bits(const IsotropicParams& params) {
    if (params.p <= 1.0 / params.d) return 0.0;
    if (params.p >= 1.0) return std::numeric_limits<double>::infinity();
    return std::log2(params.p * (params.d - 1.0) / (1.0 - params.p));
}

double isotropic_rel_entropy_bits(const IsotropicParams& params) {
    if (params.p <= 1.0 / params.d) return 0.0;
    const double d = params.d, p = params.p;
    return p * std::log2(d) + (1.0 - p) * std::log2(d / (d - 1.0)) - binary_entropy(p);
}

}  // namespace projent
