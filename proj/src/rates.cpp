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

#include "projent/rates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace projent {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Finite-n bracket on a regularized divergence, with honesty caveats.
struct Bracket {
    double lo = 0.0;
    double hi = kInf;
    std::vector<std::string> caveats;
};

std::optional<IsotropicParams> detect_isotropic(const DensityMatrix& rho) {
    const int dd = rho.dim();
    const int d = static_cast<int>(std::lround(std::sqrt(static_cast<double>(dd))));
    if (d < 2 || d * d != dd) return std::nullopt;
    if (!rho.subsystem_dims().empty() && rho.subsystem_dims() != std::vector<int>{d, d}) {
        return std::nullopt;
    }
    const double p = (max_entangled(d).entries() * rho.entries()).trace().real();
    if (p < 0.0 || p > 1.0 + 1e-12) return std::nullopt;
    IsotropicParams params{d, std::clamp(p, 0.0, 1.0)};
    if ((rho.entries() - isotropic(params).entries()).norm() > 1e-8) return std::nullopt;
    return params;
}

// Bracket on D^inf_F via additive closed forms; throws where none is known.
Bracket dinf_bracket(const DensityMatrix& rho, const FreeConeFamily& family) {
    const FreeCone& base = family.base();
    if (rho.dim() != base.dim()) throw InvalidArgument("rate: state/cone dimension mismatch");
    if (base.is_member(rho.op(), 1e-8)) return {0.0, 0.0, {}};
    switch (base.kind()) {
        case FreeCone::Kind::Singleton: {
            const double v = rel_entropy(rho, *base.singleton_state()).bits;
            return {v, v, {}};
        }
        case FreeCone::Kind::Diagonal: {
            const double v = coherence_rel_entropy(rho);
            return {v, v, {}};
        }
        case FreeCone::Kind::Ppt: {
            const auto iso = detect_isotropic(rho);
            if (!iso) {
                throw InvalidArgument(
                    "rate: no closed form for the regularized relative entropy over PPT "
                    "for non-isotropic states");
            }
            const double v = isotropic_rel_entropy_bits(*iso);
            return {v, v, {"PPT relaxation of SEP: SEP closed form used for the PPT family"}};
        }
        default:
            throw InvalidArgument("rate: unsupported cone kind for regularized relative entropy");
    }
}

// Bracket on D^inf_min for a pure target.
Bracket dmin_inf_bracket(const DensityMatrix& psi, const FreeConeFamily& family, int n_max) {
    const FreeCone& base = family.base();
    if (base.is_member(psi.op(), 1e-8)) return {0.0, 0.0, {}};
    if (base.kind() == FreeCone::Kind::Ppt) {
        const auto iso = detect_isotropic(psi);
        if (iso && iso->p >= 1.0 - 1e-9) {
            const double v = std::log2(static_cast<double>(iso->d));
            return {v, v, {}};
        }
    }
    Bracket b;
    b.lo = kInf;
    DensityMatrix power = psi;
    for (int n = 1; n <= n_max; ++n) {
        if (n > 1) power = tensor(power, psi);
        b.lo = std::min(b.lo, dmin_set(power, family.extend(n)).bits / n);
    }
    b.hi = b.lo;
    b.caveats.push_back("finite-n D_min surrogate for the regularized denominator");
    return b;
}

// Bracket on Dproj^inf from finite-n values and dual witnesses.
Bracket dproj_inf_bracket(const DensityMatrix& rho, const FreeConeFamily& family, int n_max) {
    RegularizationReport rep = regularize(Measure::DprojSet, rho, family, n_max);
    Bracket b;
    b.hi = rep.fekete_upper;
    if (rep.witness_lower) {
        b.lo = *rep.witness_lower;
    } else {
        b.lo = 0.0;
        if (std::isfinite(b.hi) && b.hi > 0.0) {
            b.caveats.push_back("no dual witness certified; numerator lower bound defaulted to 0");
        }
    }
    b.caveats.push_back("finite-n Fekete bracket (n <= " + std::to_string(n_max) + ")");
    return b;
}

void require_positive_denominator(const Bracket& den, const char* what) {
    if (!(den.lo > 1e-12)) {
        throw DenominatorUnresolved(std::string(what) + ": denominator bracket [" +
                                    std::to_string(den.lo) + ", " + std::to_string(den.hi) +
                                    "] is not strictly positive");
    }
}

void append(std::vector<std::string>& to, const std::vector<std::string>& from) {
    to.insert(to.end(), from.begin(), from.end());
}

}  // namespace

const char* rate_kind_name(RateKind k) {
    switch (k) {
        case RateKind::Converse: return "converse";
        case RateKind::StrongConverse: return "strong_converse";
        case RateKind::Achievable: return "achievable";
        case RateKind::Exact: return "exact";
    }
    return "?";
}

ErrorSequence ErrorSequence::exponential(double c) {
    if (!(c > 0.0)) throw InvalidArgument("ErrorSequence: exponential rate must be positive");
    return {Kind::Exponential, c};
}

ErrorSequence ErrorSequence::superexponential() { return {Kind::Superexponential, 0.0}; }

ErrorSequence ErrorSequence::constant(double eps) {
    if (!(eps > 0.0 && eps < 1.0)) {
        throw InvalidArgument("ErrorSequence: constant error must lie in (0,1)");
    }
    return {Kind::Constant, eps};
}

double ErrorSequence::exponent() const {
    switch (kind) {
        case Kind::Exponential: return param;
        case Kind::Superexponential: return kInf;
        case Kind::Constant: return 0.0;
    }
    return 0.0;
}

RateReport converse_prob(const DensityMatrix& rho, const DensityMatrix& omega,
                         const FreeConeFamily& family, int n_max) {
    RateReport r;
    r.kind = RateKind::Converse;
    r.formula = "r_prob <= Dproj_inf(rho) / Dinf(omega)";
    const Bracket num = dproj_inf_bracket(rho, family, n_max);
    const Bracket den = dinf_bracket(omega, family);
    require_positive_denominator(den, "converse_prob");
    r.value_bits_per_copy = num.hi / den.lo;
    r.inputs = {{"dproj_inf_upper", num.hi}, {"dinf_omega_lower", den.lo}};
    append(r.caveats, num.caveats);
    append(r.caveats, den.caveats);
    if (!std::isfinite(num.hi)) {
        r.caveats.push_back("numerator infinite: rank-deficient resource state converts to "
                            "any target probabilistically");
    }
    return r;
}

RateReport converse_det(const DensityMatrix& rho, const DensityMatrix& omega,
                        const FreeConeFamily& family, int n_max) {
    (void)n_max;
    RateReport r;
    r.kind = RateKind::Converse;
    r.formula = "r <= Dinf(rho) / Dinf(omega)";
    const Bracket num = dinf_bracket(rho, family);
    const Bracket den = dinf_bracket(omega, family);
    require_positive_denominator(den, "converse_det");
    r.value_bits_per_copy = num.hi / den.lo;
    r.inputs = {{"dinf_rho_upper", num.hi}, {"dinf_omega_lower", den.lo}};
    append(r.caveats, num.caveats);
    append(r.caveats, den.caveats);
    return r;
}

RateReport exact_affine(const DensityMatrix& rho, const DensityMatrix& omega,
                        const FreeConeFamily& family, int n_max) {
    if (!family.base().is_affine()) {
        throw WrongRegime("exact_affine: cone is not affine");
    }
    RateReport r;
    r.kind = RateKind::Exact;
    r.formula = "r_prob = Dproj_inf(rho) / Dinf(omega) (affine theory)";
    RegularizationReport rep = regularize(Measure::DprojSet, rho, family, n_max);
    double spread = 0.0;
    for (const auto& [n, v] : rep.values) spread = std::max(spread, v - rep.fekete_upper);
    if (spread > 1e-4) {
        r.caveats.push_back("numerator per-copy values not tight across n; bracket width " +
                            std::to_string(spread));
    }
    const Bracket den = dinf_bracket(omega, family);
    require_positive_denominator(den, "exact_affine");
    r.value_bits_per_copy = rep.fekete_upper / den.lo;
    r.inputs = {{"dproj_inf", rep.fekete_upper}, {"dinf_omega", den.lo}};
    append(r.caveats, den.caveats);
    if (family.base().kind() == FreeCone::Kind::Singleton) {
        r.caveats.push_back("also the strong-converse rate (singleton clause)");
    }
    return r;
}

RateReport achievable_standard(const DensityMatrix& rho, const DensityMatrix& omega,
                               const FreeConeFamily& family, int n_max,
                               const std::vector<SmoothingRadius>& eps_list) {
    if (!family.base().is_full_dimensional()) {
        throw WrongRegime("achievable_standard: cone is not full-dimensional");
    }
    if (eps_list.empty()) throw InvalidArgument("achievable_standard: eps_list must be non-empty");
    if (family.base().is_member(omega.op(), 1e-8)) {
        throw DenominatorUnresolved("achievable_standard: target is free (denominator 0)");
    }

    RateReport r;
    r.kind = RateKind::Achievable;
    r.formula = "r_prob >= Dproj_inf(rho) / smoothed log(1+R_s)_inf(omega)";

    const Bracket num = dproj_inf_bracket(rho, family, n_max);

    SmoothingRadius eps = eps_list[0];
    for (const auto& e : eps_list) {
        if (e.epsilon < eps.epsilon) eps = e;
    }
    double den_hi = kInf;
    DensityMatrix power = omega;
    for (int n = 1; n <= n_max; ++n) {
        if (n > 1) power = tensor(power, omega);
        den_hi = std::min(den_hi, smoothed(Measure::RobustnessStandard, power, family.extend(n), eps).bits / n);
    }
    if (!(den_hi > 1e-12) || !std::isfinite(den_hi)) {
        throw DenominatorUnresolved("achievable_standard: smoothed robustness denominator " +
                                    std::to_string(den_hi));
    }

    r.value_bits_per_copy = num.lo / den_hi;
    r.inputs = {{"dproj_inf_lower", num.lo}, {"smoothed_log_rs_upper", den_hi}};
    append(r.caveats, num.caveats);
    r.caveats.push_back("finite-n smoothed-robustness surrogate denominator at eps = " +
                        std::to_string(eps.epsilon));
    return r;
}

RateReport distillation_tradeoff(const DensityMatrix& rho, const DensityMatrix& psi,
                                 const FreeConeFamily& family, const ErrorSequence& errors,
                                 int n_max) {
    if (eigh(psi.op()).eigenvalues.maxCoeff() < 1.0 - 1e-9) {
        throw InvalidArgument("distillation_tradeoff: target must be pure");
    }
    RateReport r;
    r.formula = "r <= (Dproj_inf(rho) - limsup (1/n) log2(1/eps_n)) / Dmin_inf(psi)";
    const Bracket num = dproj_inf_bracket(rho, family, n_max);
    const Bracket den = dmin_inf_bracket(psi, family, n_max);
    require_positive_denominator(den, "distillation_tradeoff");
    append(r.caveats, num.caveats);
    append(r.caveats, den.caveats);
    r.inputs = {{"dproj_inf_upper", num.hi},
                {"dmin_inf_lower", den.lo},
                {"error_exponent", errors.exponent()}};

    if (errors.kind == ErrorSequence::Kind::Constant) {
        r.kind = RateKind::StrongConverse;
        r.value_bits_per_copy = num.hi / den.lo;
        return r;
    }
    r.kind = RateKind::Converse;
    if (errors.kind == ErrorSequence::Kind::Superexponential) {
        r.value_bits_per_copy = 0.0;
        r.caveats.push_back("no positive rate: errors decaying faster than exponentially "
                            "force the distillation rate to 0");
        return r;
    }
    const double raw = (num.hi - errors.exponent()) / den.lo;
    if (raw < 0.0) {
        r.value_bits_per_copy = 0.0;
        r.caveats.push_back("clamped at 0: error exponent exceeds the available resource");
    } else {
        r.value_bits_per_copy = raw;
    }
    return r;
}

RateReport dichotomy_rate(const DensityMatrix& rho1, const DensityMatrix& rho2,
                          const DensityMatrix& omega1, const DensityMatrix& omega2) {
    RateReport r;
    r.kind = RateKind::Exact;
    r.formula = "r_prob = Dproj(rho1||rho2) / D(omega1||omega2)";
    const double den = rel_entropy(omega1, omega2).bits;
    if (!(den > 1e-12) || !std::isfinite(den)) {
        throw DenominatorUnresolved("dichotomy_rate: D(omega1||omega2) = " + std::to_string(den));
    }
    const DivergenceValue num = dproj(rho1, rho2);
    r.value_bits_per_copy = num.bits / den;
    if (!num.finite()) r.caveats.push_back("numerator infinite: " + num.note);
    const double det_num = rel_entropy(rho1, rho2).bits;
    r.inputs = {{"dproj_num", num.bits},
                {"d_omega_den", den},
                {"deterministic_comparator", det_num / den}};
    r.caveats.push_back("also the strong-converse rate (singleton clause)");
    return r;
}

std::pair<RateReport, RateReport> isotropic_rates(int d, double p) {
    if (d < 2) throw InvalidArgument("isotropic_rates: d must be >= 2");
    if (p < 0.0 || p > 1.0) throw InvalidArgument("isotropic_rates: p must be in [0,1]");
    const IsotropicParams params{d, p};

    RateReport prob;
    prob.kind = RateKind::Exact;
    prob.formula = "r_prob(rho_p -> Phi_2) = log2(p(d-1)/(1-p))";
    prob.value_bits_per_copy = isotropic_dproj_bits(params);
    prob.inputs = {{"p", p}, {"d", static_cast<double>(d)}};

    RateReport det;
    det.kind = RateKind::Converse;
    det.formula = "r(rho_p -> Phi_2) <= p log2 d + (1-p) log2(d/(d-1)) - h2(p)";
    det.value_bits_per_copy = isotropic_rel_entropy_bits(params);
    det.inputs = {{"p", p}, {"d", static_cast<double>(d)}};

    return {std::move(prob), std::move(det)};
}

}  // namespace projent
