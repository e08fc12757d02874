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

#include "projent/divergences.hpp"

#include <cmath>
#include <limits>

#include "projent/conic.hpp"
#include "projent/models.hpp"

namespace projent {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Relative eigenvalue threshold for support decisions.
constexpr double kSuppTol = 1e-9;

using conic::ConicProblem;
using conic::ConicSolution;
using conic::HermExpr;
using conic::ScalarExpr;
using conic::SolveStatus;
using conic::SymExpr;

SymExpr scalar_as_block(const ScalarExpr& e) {
    SymExpr s;
    s.n = 1;
    s.constant = RMatrix::Constant(1, 1, e.constant);
    for (const auto& [i, c] : e.coeffs) s.coeffs[i] = RMatrix::Constant(1, 1, c);
    return s;
}

ConicSolution solve_or_throw(const ConicProblem& prob) {
    ConicSolution sol = conic::solve(prob);
    if (sol.status == SolveStatus::NumericalTrouble) {
        throw SolverFailure("conic solve failed: " + sol.note);
    }
    if (sol.status == SolveStatus::Unbounded) {
        throw SolverFailure("conic solve unbounded (modeling error)");
    }
    return sol;
}

double log2_clamped(double v) { return v <= 1.0 ? 0.0 : std::log2(v); }

// Weight of rho outside the support of sigma.
double support_leak(const EighResult& es, const CMatrix& rho, double tol_abs) {
    double leak = 0.0;
    for (int j = 0; j < es.eigenvalues.size(); ++j) {
        if (es.eigenvalues(j) > tol_abs) continue;
        const CVector v = es.eigenvectors.col(j);
        leak += std::max(0.0, (v.adjoint() * rho * v)(0, 0).real());
    }
    return leak;
}

}  // namespace

SmoothingRadius::SmoothingRadius(double eps) : epsilon(eps) {
    if (!(eps >= 0.0 && eps < 1.0)) {
        throw InvalidArgument("SmoothingRadius: epsilon must lie in [0, 1)");
    }
}

bool DivergenceValue::finite() const { return std::isfinite(bits); }

DivergenceValue DivergenceValue::closed_form(double bits) {
    DivergenceValue v;
    v.bits = bits;
    v.provenance = Provenance::ClosedForm;
    return v;
}

DivergenceValue DivergenceValue::infinite(std::string reason) {
    DivergenceValue v;
    v.bits = kInf;
    v.provenance = Provenance::ClosedForm;
    v.note = std::move(reason);
    return v;
}

DivergenceValue rel_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dim() != sigma.dim()) throw InvalidArgument("rel_entropy: dimension mismatch");
    const EighResult es = eigh(sigma.op());
    const double tol_abs = kSuppTol * std::max(1e-30, es.eigenvalues.maxCoeff());
    if (support_leak(es, rho.entries(), tol_abs) > 1e-9) {
        return DivergenceValue::infinite("supp(rho) not contained in supp(sigma)");
    }
    const EighResult er = eigh(rho.op());
    double d = 0.0;
    const double tol_r = kSuppTol * std::max(1e-30, er.eigenvalues.maxCoeff());
    for (int i = 0; i < er.eigenvalues.size(); ++i) {
        const double r = er.eigenvalues(i);
        if (r > tol_r) d += r * std::log2(r);
    }
    for (int j = 0; j < es.eigenvalues.size(); ++j) {
        const double s = es.eigenvalues(j);
        if (s <= tol_abs) continue;
        const CVector v = es.eigenvectors.col(j);
        const double w = (v.adjoint() * rho.entries() * v)(0, 0).real();
        d -= w * std::log2(s);
    }
    return DivergenceValue::closed_form(d);
}

double dmax_ops_bits(const HermitianOperator& rho, const HermitianOperator& sigma) {
    if (rho.dim() != sigma.dim()) throw InvalidArgument("dmax: dimension mismatch");
    const EighResult es = eigh(sigma);
    const double tol_abs = kSuppTol * std::max(1e-30, es.eigenvalues.maxCoeff());
    if (support_leak(es, rho.entries(), tol_abs) > 1e-9 * std::max(1.0, rho.trace())) {
        return kInf;
    }
    // sigma^{-1/2} rho sigma^{-1/2} on supp(sigma).
    CMatrix isqrt = CMatrix::Zero(sigma.dim(), sigma.dim());
    for (int j = 0; j < es.eigenvalues.size(); ++j) {
        if (es.eigenvalues(j) <= tol_abs) continue;
        const CVector v = es.eigenvectors.col(j);
        isqrt += (1.0 / std::sqrt(es.eigenvalues(j))) * (v * v.adjoint());
    }
    const HermitianOperator m(isqrt * rho.entries() * isqrt);
    const double lam = eigh(m).eigenvalues.maxCoeff();
    if (lam <= 0.0) return -kInf;  // rho == 0; not reachable for states
    return std::log2(lam);
}

double dproj_ops_bits(const HermitianOperator& rho, const HermitianOperator& sigma) {
    const double fwd = dmax_ops_bits(rho, sigma);
    if (!std::isfinite(fwd)) return kInf;
    const double bwd = dmax_ops_bits(sigma, rho);
    if (!std::isfinite(bwd)) return kInf;
    return fwd + bwd;
}

DivergenceValue dmax(const DensityMatrix& rho, const DensityMatrix& sigma) {
    const double bits = dmax_ops_bits(rho.op(), sigma.op());
    if (!std::isfinite(bits)) {
        return DivergenceValue::infinite("supp(rho) not contained in supp(sigma)");
    }
    return DivergenceValue::closed_form(bits);
}

DivergenceValue dmin(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dim() != sigma.dim()) throw InvalidArgument("dmin: dimension mismatch");
    const double lam = eigh(rho.op()).eigenvalues.maxCoeff();
    const HermitianOperator proj = support_projector(rho.op(), kSuppTol * lam);
    const double overlap = (proj.entries() * sigma.entries()).trace().real();
    if (overlap <= 1e-15) return DivergenceValue::infinite("vanishing overlap");
    return DivergenceValue::closed_form(std::max(0.0, -std::log2(overlap)));
}

DivergenceValue dproj(const DensityMatrix& rho, const DensityMatrix& sigma) {
    const double bits = dproj_ops_bits(rho.op(), sigma.op());
    if (!std::isfinite(bits)) return DivergenceValue::infinite("support mismatch");
    return DivergenceValue::closed_form(bits);
}

DivergenceValue dmax_set(const DensityMatrix& rho, const FreeCone& cone) {
    ConicProblem prob;
    HermExpr sigma = cone.add_member_variable(prob, "sigma");
    prob.require_psd(sigma - HermExpr(rho.op()), "dominance");
    prob.minimize(sigma.trace());
    ConicSolution sol = solve_or_throw(prob);
    if (sol.status == SolveStatus::Infeasible) {
        return DivergenceValue::infinite("no cone member dominates rho");
    }
    DivergenceValue v;
    v.bits = log2_clamped(sol.primal_value);
    v.provenance = DivergenceValue::Provenance::Conic;
    v.gap = sol.gap;
    return v;
}

DivergenceValue dmin_set(const DensityMatrix& psi, const FreeCone& cone) {
    const double lam = eigh(psi.op()).eigenvalues.maxCoeff();
    const HermitianOperator proj = support_projector(psi.op(), kSuppTol * lam);
    ConicProblem prob;
    HermExpr sigma = cone.add_member_variable(prob, "sigma");
    prob.require_eq(sigma.trace() - ScalarExpr(1.0));
    prob.minimize(-1.0 * sigma.inner(proj.entries()));
    ConicSolution sol = solve_or_throw(prob);
    if (sol.status == SolveStatus::Infeasible) {
        return DivergenceValue::infinite("cone has no normalized member");
    }
    const double overlap = -sol.primal_value;
    if (overlap <= 1e-15) return DivergenceValue::infinite("vanishing best overlap");
    DivergenceValue v;
    v.bits = std::max(0.0, -std::log2(overlap));
    v.provenance = DivergenceValue::Provenance::Conic;
    v.gap = sol.gap;
    return v;
}

DivergenceValue dproj_set(const DensityMatrix& rho, const FreeCone& cone, bool want_witness) {
    ConicProblem prob;
    HermExpr sigma = cone.add_member_variable(prob, "sigma");
    const int gamma = prob.add_scalars(1);
    HermExpr rho_e(rho.op());
    const int idx_above = prob.require_psd(sigma - rho_e, "above");
    HermExpr upper = HermExpr::scaled_variable(gamma, rho.entries());
    upper -= sigma;
    const int idx_below = prob.require_psd(upper, "below");
    prob.minimize(ScalarExpr::variable(gamma));
    ConicSolution sol = solve_or_throw(prob);
    if (sol.status == SolveStatus::Infeasible) {
        return DivergenceValue::infinite("no cone member with the support of rho");
    }

    DivergenceValue v;
    v.bits = log2_clamped(sol.primal_value);
    v.provenance = DivergenceValue::Provenance::Conic;
    v.gap = sol.gap;

    if (want_witness) {
        HermitianOperator a_raw(real_unembedding(sol.dual_blocks[idx_above]));
        HermitianOperator b_raw(real_unembedding(sol.dual_blocks[idx_below]));
        const double scale = (b_raw.entries() * rho.entries()).trace().real();
        if (scale <= 1e-12) {
            v.note = "dual witness degenerate (Tr(B rho) ~ 0)";
            return v;
        }
        HermitianOperator a(a_raw.entries() / scale);
        HermitianOperator b(b_raw.entries() / scale);
        const conic::WitnessCheck check = conic::verify_dual_witness(cone, rho, a, b, 1e-7);
        if (check.feasible) {
            v.provenance = DivergenceValue::Provenance::WitnessBracket;
            v.witness_lo = log2_clamped(check.lower_bound);
            v.witness_hi = v.bits;
            v.witness = std::make_pair(std::move(a), std::move(b));
        } else {
            v.note = "dual witness failed verification; primal value kept";
        }
    }
    return v;
}

DivergenceValue robustness_standard(const DensityMatrix& rho, const FreeCone& cone) {
    ConicProblem prob;
    HermExpr m = cone.add_member_variable(prob, "mix");
    HermExpr t = cone.add_member_variable(prob, "target");
    HermExpr resid = t;
    resid -= m;
    resid -= HermExpr(rho.op());
    prob.require_eq_zero(resid);
    prob.minimize(m.trace());
    ConicSolution sol = solve_or_throw(prob);
    if (sol.status == SolveStatus::Infeasible) {
        return DivergenceValue::infinite("rho cannot be mixed into the cone");
    }
    DivergenceValue v;
    v.bits = log2_clamped(1.0 + std::max(0.0, sol.primal_value));
    v.provenance = DivergenceValue::Provenance::Conic;
    v.gap = sol.gap;
    return v;
}

DivergenceValue dproj_s_set(const DensityMatrix& rho, const FreeCone& cone) {
    ConicProblem prob;
    HermExpr sigma = cone.add_member_variable(prob, "sigma");
    const int gamma = prob.add_scalars(1);
    HermExpr lower = sigma;
    lower -= HermExpr(rho.op());
    cone.add_membership(prob, lower, "cone_order");
    HermExpr upper = HermExpr::scaled_variable(gamma, rho.entries());
    upper -= sigma;
    prob.require_psd(upper, "below");
    prob.minimize(ScalarExpr::variable(gamma));
    ConicSolution sol = solve_or_throw(prob);
    if (sol.status == SolveStatus::Infeasible) {
        return DivergenceValue::infinite("no cone-order dominating member");
    }
    DivergenceValue v;
    v.bits = log2_clamped(sol.primal_value);
    v.provenance = DivergenceValue::Provenance::Conic;
    v.gap = sol.gap;
    return v;
}

DivergenceValue rel_entropy_set(const DensityMatrix& rho, const FreeCone& cone) {
    switch (cone.kind()) {
        case FreeCone::Kind::Singleton:
            return rel_entropy(rho, *cone.singleton_state());
        case FreeCone::Kind::Diagonal:
            return DivergenceValue::closed_form(coherence_rel_entropy(rho));
        default:
            throw InvalidArgument(
                "rel_entropy_set: closed forms exist only for Singleton and Diagonal cones");
    }
}

const char* measure_name(Measure m) {
    switch (m) {
        case Measure::DmaxSet: return "dmax";
        case Measure::DminSet: return "dmin";
        case Measure::DprojSet: return "dproj";
        case Measure::RobustnessStandard: return "rs";
        case Measure::DprojSSet: return "dproj_s";
        case Measure::RelEntropySet: return "d";
    }
    return "?";
}

DivergenceValue eval_measure(Measure m, const DensityMatrix& rho, const FreeCone& cone) {
    switch (m) {
        case Measure::DmaxSet: return dmax_set(rho, cone);
        case Measure::DminSet: return dmin_set(rho, cone);
        case Measure::DprojSet: return dproj_set(rho, cone);
        case Measure::RobustnessStandard: return robustness_standard(rho, cone);
        case Measure::DprojSSet: return dproj_s_set(rho, cone);
        case Measure::RelEntropySet: return rel_entropy_set(rho, cone);
    }
    throw InvalidArgument("eval_measure: unknown measure");
}

namespace {

// Smoothing ball: rho' = rho + P - N with P, N >= 0, Tr(P+N) <= 2 eps,
// rho' >= 0, Tr rho' = 1. Returns the affine expression for rho'.
HermExpr add_smoothing_ball(ConicProblem& prob, const DensityMatrix& rho, double eps) {
    const int d = rho.dim();
    HermExpr p = prob.add_hermitian(d);
    HermExpr n = prob.add_hermitian(d);
    prob.require_psd(p, "ball_p");
    prob.require_psd(n, "ball_n");
    HermExpr rho_prime(rho.op());
    rho_prime += p;
    rho_prime -= n;
    prob.require_psd(rho_prime, "rho_prime_psd");
    prob.require_eq(p.trace() - n.trace());
    ScalarExpr budget(2.0 * eps);
    budget -= p.trace();
    budget -= n.trace();
    prob.require_psd(scalar_as_block(budget), "ball_budget");
    return rho_prime;
}

// gamma-feasibility problem for the smoothed projective measures.
ConicProblem smoothed_gamma_problem(Measure m, const DensityMatrix& rho, const FreeCone& cone,
                                    double eps, double gamma) {
    ConicProblem prob;
    HermExpr rho_prime = add_smoothing_ball(prob, rho, eps);
    HermExpr sigma = cone.add_member_variable(prob, "sigma");
    HermExpr lower = sigma;
    lower -= rho_prime;
    if (m == Measure::DprojSSet) {
        cone.add_membership(prob, lower, "cone_order");
    } else {
        prob.require_psd(lower, "above");
    }
    HermExpr upper = gamma * rho_prime;
    upper -= sigma;
    prob.require_psd(upper, "below");
    return prob;
}

}  // namespace

DivergenceValue smoothed(Measure m, const DensityMatrix& rho, const FreeCone& cone,
                         const SmoothingRadius& eps) {
    if (eps.epsilon == 0.0) return eval_measure(m, rho, cone);

    switch (m) {
        case Measure::DmaxSet: {
            ConicProblem prob;
            HermExpr rho_prime = add_smoothing_ball(prob, rho, eps.epsilon);
            HermExpr sigma = cone.add_member_variable(prob, "sigma");
            HermExpr dom = sigma;
            dom -= rho_prime;
            prob.require_psd(dom, "dominance");
            prob.minimize(sigma.trace());
            ConicSolution sol = solve_or_throw(prob);
            if (sol.status == SolveStatus::Infeasible) {
                return DivergenceValue::infinite("no cone member dominates the ball");
            }
            DivergenceValue v;
            v.bits = log2_clamped(sol.primal_value);
            v.provenance = DivergenceValue::Provenance::Conic;
            v.gap = sol.gap;
            return v;
        }
        case Measure::RobustnessStandard: {
            ConicProblem prob;
            HermExpr rho_prime = add_smoothing_ball(prob, rho, eps.epsilon);
            HermExpr mix = cone.add_member_variable(prob, "mix");
            HermExpr target = cone.add_member_variable(prob, "target");
            HermExpr resid = target;
            resid -= mix;
            resid -= rho_prime;
            prob.require_eq_zero(resid);
            prob.minimize(mix.trace());
            ConicSolution sol = solve_or_throw(prob);
            if (sol.status == SolveStatus::Infeasible) {
                return DivergenceValue::infinite("ball cannot be mixed into the cone");
            }
            DivergenceValue v;
            v.bits = log2_clamped(1.0 + std::max(0.0, sol.primal_value));
            v.provenance = DivergenceValue::Provenance::Conic;
            v.gap = sol.gap;
            return v;
        }
        case Measure::DprojSet:
        case Measure::DprojSSet: {
            auto feasible_at = [&](double gamma) {
                return smoothed_gamma_problem(m, rho, cone, eps.epsilon, gamma);
            };
            // Bracket the threshold: the unsmoothed value bounds it above when
            // finite; otherwise search upward by doubling.
            double hi = 0.0;
            const DivergenceValue plain = eval_measure(m, rho, cone);
            if (plain.finite()) {
                hi = std::max(2.0, std::exp2(plain.bits) * (1.0 + 1e-6));
            } else {
                for (double cand = 2.0; cand <= 1.2e18; cand *= 2.0) {
                    if (conic::classify_feasibility(feasible_at(cand)).feasible) {
                        hi = cand;
                        break;
                    }
                }
                if (hi == 0.0) {
                    return DivergenceValue::infinite(
                        "smoothed projective threshold exceeds 2^60");
                }
            }
            conic::BisectResult r = conic::bisect_quasiconvex(feasible_at, 1.0, hi, 1e-6);
            DivergenceValue v;
            v.bits = log2_clamped(r.gamma_star);
            v.provenance = DivergenceValue::Provenance::Conic;
            v.note = "bisection, absolute gamma tolerance 1e-6";
            return v;
        }
        default:
            throw InvalidArgument("smoothed: measure does not support smoothing");
    }
}

}  // namespace projent
