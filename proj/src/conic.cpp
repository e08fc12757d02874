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

#include "projent/conic.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <nlohmann/json.hpp>

#include "projent/freesets.hpp"

namespace projent::conic {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

// ---------------------------------------------------------------------------
// Expressions
// ---------------------------------------------------------------------------

ScalarExpr ScalarExpr::variable(int index, double coeff) {
    ScalarExpr e;
    e.coeffs[index] = coeff;
    return e;
}

ScalarExpr& ScalarExpr::operator+=(const ScalarExpr& other) {
    constant += other.constant;
    for (const auto& [i, c] : other.coeffs) coeffs[i] += c;
    return *this;
}

ScalarExpr& ScalarExpr::operator-=(const ScalarExpr& other) {
    constant -= other.constant;
    for (const auto& [i, c] : other.coeffs) coeffs[i] -= c;
    return *this;
}

ScalarExpr& ScalarExpr::operator*=(double s) {
    constant *= s;
    for (auto& [i, c] : coeffs) c *= s;
    return *this;
}

ScalarExpr operator+(ScalarExpr a, const ScalarExpr& b) { return a += b; }
ScalarExpr operator-(ScalarExpr a, const ScalarExpr& b) { return a -= b; }
ScalarExpr operator*(double s, ScalarExpr a) { return a *= s; }

HermExpr::HermExpr(const HermitianOperator& c)
    : d(c.dim()), constant(c.entries()) {}

HermExpr HermExpr::constant_expr(const CMatrix& c) {
    HermExpr e;
    e.d = static_cast<int>(c.rows());
    e.constant = c;
    return e;
}

HermExpr HermExpr::scaled_variable(int index, const CMatrix& coeff) {
    HermExpr e;
    e.d = static_cast<int>(coeff.rows());
    e.constant = CMatrix::Zero(e.d, e.d);
    e.coeffs[index] = coeff;
    return e;
}

HermExpr HermExpr::apply(const std::function<CMatrix(const CMatrix&)>& linmap) const {
    HermExpr out;
    out.constant = linmap(constant);
    out.d = static_cast<int>(out.constant.rows());
    for (const auto& [i, c] : coeffs) out.coeffs[i] = linmap(c);
    return out;
}

SymExpr HermExpr::embed() const {
    SymExpr out;
    out.n = 2 * d;
    out.constant = real_embedding(constant);
    for (const auto& [i, c] : coeffs) out.coeffs[i] = real_embedding(c);
    return out;
}

ScalarExpr HermExpr::trace() const {
    ScalarExpr out(constant.trace().real());
    for (const auto& [i, c] : coeffs) {
        const double t = c.trace().real();
        if (t != 0.0) out.coeffs[i] += t;
    }
    return out;
}

ScalarExpr HermExpr::inner(const CMatrix& c) const {
    ScalarExpr out((c * constant).trace().real());
    for (const auto& [i, k] : coeffs) {
        const double v = (c * k).trace().real();
        if (v != 0.0) out.coeffs[i] += v;
    }
    return out;
}

HermExpr& HermExpr::operator+=(const HermExpr& other) {
    if (d == 0) {
        *this = other;
        return *this;
    }
    constant += other.constant;
    for (const auto& [i, c] : other.coeffs) {
        auto it = coeffs.find(i);
        if (it == coeffs.end()) {
            coeffs[i] = c;
        } else {
            it->second += c;
        }
    }
    return *this;
}

HermExpr& HermExpr::operator-=(const HermExpr& other) {
    HermExpr neg = other;
    neg *= -1.0;
    return *this += neg;
}

HermExpr& HermExpr::operator*=(double s) {
    constant *= s;
    for (auto& [i, c] : coeffs) c *= s;
    return *this;
}

HermExpr operator+(HermExpr a, const HermExpr& b) { return a += b; }
HermExpr operator-(HermExpr a, const HermExpr& b) { return a -= b; }
HermExpr operator*(double s, HermExpr a) { return a *= s; }

// ---------------------------------------------------------------------------
// Problem assembly
// ---------------------------------------------------------------------------

int ConicProblem::add_scalars(int count) {
    const int first = num_params_;
    num_params_ += count;
    if (num_params_ > 20000) throw CapacityExceeded("ConicProblem: too many parameters");
    return first;
}

HermExpr ConicProblem::add_hermitian(int d) {
    const int base = add_scalars(d * d);
    HermExpr e;
    e.d = d;
    e.constant = CMatrix::Zero(d, d);
    int idx = base;
    for (int k = 0; k < d; ++k) {
        CMatrix m = CMatrix::Zero(d, d);
        m(k, k) = 1.0;
        e.coeffs[idx++] = m;
    }
    for (int j = 0; j < d; ++j) {
        for (int k = j + 1; k < d; ++k) {
            CMatrix re = CMatrix::Zero(d, d);
            re(j, k) = 1.0;
            re(k, j) = 1.0;
            e.coeffs[idx++] = re;
            CMatrix im = CMatrix::Zero(d, d);
            im(j, k) = Complex(0.0, 1.0);
            im(k, j) = Complex(0.0, -1.0);
            e.coeffs[idx++] = im;
        }
    }
    return e;
}

void ConicProblem::minimize(ScalarExpr objective) { objective_ = std::move(objective); }

int ConicProblem::require_psd(SymExpr expr, std::string label) {
    for (const auto& [i, c] : expr.coeffs) {
        if (i < 0 || i >= num_params_) throw InvalidArgument("require_psd: unknown parameter");
        if (c.rows() != expr.n || c.cols() != expr.n) {
            throw InvalidArgument("require_psd: coefficient dimension mismatch");
        }
    }
    psd_.push_back(std::move(expr));
    psd_labels_.push_back(std::move(label));
    return static_cast<int>(psd_.size()) - 1;
}

int ConicProblem::require_psd(const HermExpr& expr, std::string label) {
    return require_psd(expr.embed(), std::move(label));
}

void ConicProblem::require_eq(ScalarExpr expr) { eqs_.push_back(std::move(expr)); }

void ConicProblem::require_eq_zero(const HermExpr& expr) {
    const int d = expr.d;
    for (int j = 0; j < d; ++j) {
        for (int k = j; k < d; ++k) {
            CMatrix re = CMatrix::Zero(d, d);
            re(j, k) += 0.5;
            re(k, j) += 0.5;
            require_eq(expr.inner(re));
            if (k > j) {
                CMatrix im = CMatrix::Zero(d, d);
                im(j, k) = Complex(0.0, 0.5);
                im(k, j) = Complex(0.0, -0.5);
                require_eq(expr.inner(im));
            }
        }
    }
}

double ConicSolution::eval(const ScalarExpr& e) const {
    double v = e.constant;
    for (const auto& [i, c] : e.coeffs) v += c * primal_point(i);
    return v;
}

CMatrix ConicSolution::eval(const HermExpr& e) const {
    CMatrix v = e.constant;
    for (const auto& [i, c] : e.coeffs) v += primal_point(i) * c;
    return v;
}

// ---------------------------------------------------------------------------
// Interior-point core: minimize c'z subject to F0_b + sum_j z_j F_bj >= 0.
// HKM search direction with Mehrotra predictor-corrector.
// ---------------------------------------------------------------------------

namespace {

struct Block {
    int n = 0;
    RMatrix f0;
    std::vector<std::pair<int, RMatrix>> f;  // (reduced param index, coefficient)
};

struct IpmResult {
    enum class Kind { Converged, Unbounded, Stalled };
    Kind kind = Kind::Stalled;
    RVector z;
    std::vector<RMatrix> x;  // dual blocks
    double primal = 0.0;
    double dual = 0.0;
    double gap = 0.0;
    int iterations = 0;
};

RMatrix sym(const RMatrix& m) { return 0.5 * (m + m.transpose()); }

double min_eig(const RMatrix& m) {
    Eigen::SelfAdjointEigenSolver<RMatrix> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

// Largest step alpha with S + alpha dS >= 0 (S > 0), capped at 1.
double max_step(const RMatrix& s, const RMatrix& ds) {
    Eigen::LLT<RMatrix> llt(s);
    const RMatrix l = llt.matrixL();
    const RMatrix w = l.triangularView<Eigen::Lower>().solve(
        l.triangularView<Eigen::Lower>().solve(ds).transpose());
    const double lam = min_eig(sym(w));
    if (lam >= 0.0) return 1.0;
    return std::min(1.0, -1.0 / lam);
}

RVector evaluate_blocks(const std::vector<Block>& blocks, const RVector& z,
                        std::vector<RMatrix>* out) {
    out->clear();
    RVector mins(blocks.size());
    for (size_t b = 0; b < blocks.size(); ++b) {
        RMatrix m = blocks[b].f0;
        for (const auto& [j, f] : blocks[b].f) m += z(j) * f;
        mins(b) = min_eig(m);
        out->push_back(std::move(m));
    }
    return mins;
}

IpmResult run_ipm(const std::vector<Block>& blocks, const RVector& c, const SolveConfig& cfg,
                  const RVector& z_start) {
    const int m = static_cast<int>(c.size());
    const int nb = static_cast<int>(blocks.size());
    IpmResult res;
    res.z = z_start;

    int total_n = 0;
    double f0_scale = 1.0;
    for (const auto& b : blocks) {
        total_n += b.n;
        f0_scale = std::max(f0_scale, b.f0.cwiseAbs().maxCoeff());
    }
    const double c_scale = 1.0 + c.cwiseAbs().maxCoeff();

    // S starts at F(z) pushed into the PD cone; X at identity.
    std::vector<RMatrix> s(nb), x(nb), fz(nb);
    {
        std::vector<RMatrix> cur;
        RVector mins = evaluate_blocks(blocks, res.z, &cur);
        for (int b = 0; b < nb; ++b) {
            const double shift = std::max(0.0, -mins(b)) + 1e-6 * f0_scale;
            s[b] = cur[b] + shift * RMatrix::Identity(blocks[b].n, blocks[b].n);
            x[b] = RMatrix::Identity(blocks[b].n, blocks[b].n);
        }
    }

    int stall_count = 0;
    for (int iter = 0; iter < cfg.max_iter; ++iter) {
        res.iterations = iter + 1;

        // Residuals.
        std::vector<RMatrix> rp(nb);
        double rp_norm = 0.0;
        for (int b = 0; b < nb; ++b) {
            RMatrix v = blocks[b].f0 - s[b];
            for (const auto& [j, f] : blocks[b].f) v += res.z(j) * f;
            rp[b] = v;
            rp_norm = std::max(rp_norm, v.cwiseAbs().maxCoeff());
        }
        RVector rd = c;
        for (int b = 0; b < nb; ++b) {
            for (const auto& [j, f] : blocks[b].f) rd(j) -= (f.cwiseProduct(x[b])).sum();
        }
        const double rd_norm = rd.cwiseAbs().maxCoeff();

        double mu = 0.0;
        for (int b = 0; b < nb; ++b) mu += (s[b].cwiseProduct(x[b])).sum();
        mu /= total_n;

        const double primal = c.dot(res.z);
        double dual = 0.0;
        for (int b = 0; b < nb; ++b) dual -= (blocks[b].f0.cwiseProduct(x[b])).sum();
        const double rel_gap = std::abs(primal - dual) / (1.0 + std::abs(primal) + std::abs(dual));

        res.primal = primal;
        res.dual = dual;
        res.gap = rel_gap;

        if (rp_norm <= cfg.feas_tol * f0_scale && rd_norm <= cfg.feas_tol * c_scale &&
            rel_gap <= cfg.gap_tol) {
            res.kind = IpmResult::Kind::Converged;
            res.x = x;
            return res;
        }
        if (primal < -1e14 && rp_norm <= 1e-6 * f0_scale) {
            res.kind = IpmResult::Kind::Unbounded;
            res.x = x;
            return res;
        }

        // Factorizations and Schur complement M_ij = sum_b Tr(F_i X F_j S^-1).
        std::vector<Eigen::LLT<RMatrix>> llt(nb);
        for (int b = 0; b < nb; ++b) {
            llt[b].compute(s[b]);
            if (llt[b].info() != Eigen::Success) {
                // Recover by nudging S off the boundary.
                s[b] += (1e-12 + 1e-10 * s[b].trace()) * RMatrix::Identity(blocks[b].n, blocks[b].n);
                llt[b].compute(s[b]);
                if (llt[b].info() != Eigen::Success) {
                    res.kind = IpmResult::Kind::Stalled;
                    res.x = x;
                    return res;
                }
            }
        }
        RMatrix schur = RMatrix::Zero(m, m);
        std::vector<std::vector<RMatrix>> g(nb);  // G_j = X F_j S^-1 per block
        for (int b = 0; b < nb; ++b) {
            g[b].resize(blocks[b].f.size());
            for (size_t jj = 0; jj < blocks[b].f.size(); ++jj) {
                g[b][jj] = x[b] * llt[b].solve(blocks[b].f[jj].second).transpose();
            }
            for (size_t ii = 0; ii < blocks[b].f.size(); ++ii) {
                const int pi = blocks[b].f[ii].first;
                const RMatrix& fi = blocks[b].f[ii].second;
                for (size_t jj = 0; jj < blocks[b].f.size(); ++jj) {
                    const int pj = blocks[b].f[jj].first;
                    schur(pi, pj) += (fi.cwiseProduct(g[b][jj])).sum();
                }
            }
        }
        Eigen::PartialPivLU<RMatrix> lu(schur);

        auto solve_direction = [&](double nu_mu, const std::vector<RMatrix>* corr,
                                   RVector* dz, std::vector<RMatrix>* dx,
                                   std::vector<RMatrix>* ds) {
            RVector rhs = -rd;
            std::vector<RMatrix> rc(nb);
            for (int b = 0; b < nb; ++b) {
                const int n = blocks[b].n;
                rc[b] = nu_mu * RMatrix::Identity(n, n) - x[b] * s[b];
                if (corr) rc[b] -= (*corr)[b];
                // R := (Rc - X Rp) S^-1 contributes Tr(F_i R) to the rhs.
                const RMatrix r = llt[b].solve((rc[b] - x[b] * rp[b]).transpose()).transpose();
                for (const auto& [j, f] : blocks[b].f) rhs(j) += (f.cwiseProduct(r)).sum();
            }
            *dz = lu.solve(rhs);
            ds->resize(nb);
            dx->resize(nb);
            for (int b = 0; b < nb; ++b) {
                RMatrix d = rp[b];
                for (const auto& [j, f] : blocks[b].f) d += (*dz)(j) * f;
                (*ds)[b] = d;
                const RMatrix raw =
                    llt[b].solve((rc[b] - x[b] * d).transpose()).transpose();
                (*dx)[b] = sym(raw);
            }
        };

        // Predictor.
        RVector dz_a;
        std::vector<RMatrix> dx_a, ds_a;
        solve_direction(0.0, nullptr, &dz_a, &dx_a, &ds_a);
        double ap = 1.0, ad = 1.0;
        for (int b = 0; b < nb; ++b) {
            ap = std::min(ap, max_step(s[b], ds_a[b]));
            ad = std::min(ad, max_step(x[b], dx_a[b]));
        }
        double mu_aff = 0.0;
        for (int b = 0; b < nb; ++b) {
            mu_aff += ((s[b] + 0.98 * ap * ds_a[b]).cwiseProduct(x[b] + 0.98 * ad * dx_a[b])).sum();
        }
        mu_aff /= total_n;
        double sigma = std::pow(std::clamp(mu_aff / mu, 0.0, 1.0), 3.0);
        sigma = std::clamp(sigma, 1e-8, 1.0);

        // Corrector.
        std::vector<RMatrix> corr(nb);
        for (int b = 0; b < nb; ++b) corr[b] = dx_a[b] * ds_a[b];
        RVector dz;
        std::vector<RMatrix> dx, ds;
        solve_direction(sigma * mu, &corr, &dz, &dx, &ds);

        ap = 1.0;
        ad = 1.0;
        for (int b = 0; b < nb; ++b) {
            ap = std::min(ap, max_step(s[b], ds[b]));
            ad = std::min(ad, max_step(x[b], dx[b]));
        }
        ap = std::min(1.0, 0.98 * ap);
        ad = std::min(1.0, 0.98 * ad);

        res.z += ap * dz;
        for (int b = 0; b < nb; ++b) {
            s[b] = sym(s[b] + ap * ds[b]);
            x[b] = sym(x[b] + ad * dx[b]);
        }

        if (ap < 1e-7 && ad < 1e-7) {
            if (++stall_count >= 3) {
                res.kind = IpmResult::Kind::Stalled;
                res.x = x;
                return res;
            }
        } else {
            stall_count = 0;
        }
    }
    res.kind = IpmResult::Kind::Stalled;
    res.x = x;
    return res;
}

// Reduced (equality-eliminated) problem data.
struct Reduced {
    bool eq_inconsistent = false;
    RVector z_particular;  // full-length particular solution of the equalities
    RMatrix kernel;        // full params x reduced params
    std::vector<Block> blocks;
    RVector c_reduced;
    double offset = 0.0;
};

Reduced reduce(const ConicProblem& p) {
    Reduced r;
    const int m = p.num_params();
    const int ne = static_cast<int>(p.eq_constraints().size());

    if (ne > 0) {
        RMatrix e = RMatrix::Zero(ne, m);
        RVector f(ne);
        for (int i = 0; i < ne; ++i) {
            const auto& eq = p.eq_constraints()[i];
            for (const auto& [j, c] : eq.coeffs) e(i, j) = c;
            f(i) = -eq.constant;
        }
        Eigen::JacobiSVD<RMatrix> svd(e, Eigen::ComputeFullU | Eigen::ComputeFullV);
        const double smax = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
        const double rank_tol = std::max(1e-11, 1e-12 * smax);
        int rank = 0;
        for (int i = 0; i < svd.singularValues().size(); ++i) {
            if (svd.singularValues()(i) > rank_tol) ++rank;
        }
        // Minimum-norm particular solution.
        RVector y = svd.matrixU().transpose() * f;
        RVector w = RVector::Zero(m);
        for (int i = 0; i < rank; ++i) w(i) = y(i) / svd.singularValues()(i);
        r.z_particular = svd.matrixV() * w;
        const double resid = (e * r.z_particular - f).norm();
        if (resid > 1e-8 * std::max(1.0, f.norm())) {
            r.eq_inconsistent = true;
            return r;
        }
        r.kernel = svd.matrixV().rightCols(m - rank);
    } else {
        r.z_particular = RVector::Zero(m);
        r.kernel = RMatrix::Identity(m, m);
    }

    const int mr = static_cast<int>(r.kernel.cols());
    r.c_reduced = RVector::Zero(mr);
    r.offset = p.objective().constant;
    RVector c_full = RVector::Zero(m);
    for (const auto& [j, c] : p.objective().coeffs) c_full(j) = c;
    r.offset += c_full.dot(r.z_particular);
    r.c_reduced = r.kernel.transpose() * c_full;

    for (const auto& expr : p.psd_constraints()) {
        Block b;
        b.n = expr.n;
        b.f0 = expr.constant;
        // Dense map from full params appearing in this block to reduced params.
        std::vector<RMatrix> reduced_coeffs(mr);
        std::vector<bool> used(mr, false);
        for (const auto& [j, coeff] : expr.coeffs) {
            b.f0 += r.z_particular(j) * coeff;
            for (int k = 0; k < mr; ++k) {
                const double w = r.kernel(j, k);
                if (std::abs(w) < 1e-14) continue;
                if (!used[k]) {
                    reduced_coeffs[k] = RMatrix::Zero(b.n, b.n);
                    used[k] = true;
                }
                reduced_coeffs[k] += w * coeff;
            }
        }
        for (int k = 0; k < mr; ++k) {
            if (used[k] && reduced_coeffs[k].cwiseAbs().maxCoeff() > 1e-14) {
                b.f.emplace_back(k, std::move(reduced_coeffs[k]));
            }
        }
        r.blocks.push_back(std::move(b));
    }
    return r;
}

// Phase-1: minimize t such that F_b(z) + t I >= 0 and t >= -1. Always
// strictly feasible and bounded.
IpmResult run_phase1(const Reduced& r, const SolveConfig& cfg) {
    const int mr = static_cast<int>(r.c_reduced.size());
    std::vector<Block> blocks = r.blocks;
    for (auto& b : blocks) {
        b.f.emplace_back(mr, RMatrix::Identity(b.n, b.n));
    }
    Block bound;
    bound.n = 1;
    bound.f0 = RMatrix::Constant(1, 1, 1.0);
    bound.f.emplace_back(mr, RMatrix::Constant(1, 1, 1.0));
    blocks.push_back(std::move(bound));

    RVector c = RVector::Zero(mr + 1);
    c(mr) = 1.0;

    double t0 = -0.9;
    for (const auto& b : r.blocks) {
        t0 = std::max(t0, -min_eig(b.f0) + 1.0);
    }
    RVector z0 = RVector::Zero(mr + 1);
    z0(mr) = t0;
    SolveConfig p1 = cfg;
    p1.max_iter = std::max(cfg.max_iter, 100);
    return run_ipm(blocks, c, p1, z0);
}

}  // namespace

ConicSolution solve(const ConicProblem& problem, const SolveConfig& cfg) {
    ConicSolution sol;
    const int m = problem.num_params();
    Reduced r = reduce(problem);

    if (r.eq_inconsistent) {
        sol.status = SolveStatus::Infeasible;
        sol.primal_value = kInf;
        sol.note = "equality constraints inconsistent";
        return sol;
    }

    const int mr = static_cast<int>(r.c_reduced.size());
    if (r.blocks.empty() || mr == 0) {
        // Fully determined (or unconstrained) point; just evaluate.
        std::vector<RMatrix> vals;
        RVector mins = r.blocks.empty() ? RVector() : evaluate_blocks(r.blocks, RVector::Zero(mr), &vals);
        bool ok = true;
        for (int b = 0; b < mins.size(); ++b) {
            if (mins(b) < -cfg.feas_tol * (1.0 + r.blocks[b].f0.cwiseAbs().maxCoeff())) ok = false;
        }
        if (!ok) {
            sol.status = SolveStatus::Infeasible;
            sol.primal_value = kInf;
            sol.note = "constraints violated at the determined point";
            return sol;
        }
        sol.status = SolveStatus::Optimal;
        sol.primal_point = r.z_particular;
        sol.primal_value = r.offset;
        sol.gap = 0.0;
        return sol;
    }

    // Phase 1: classify feasibility and obtain a well-centered start.
    IpmResult p1 = run_phase1(r, cfg);
    const double t_star = p1.z(mr);
    if (p1.kind == IpmResult::Kind::Converged && t_star > cfg.feas_tol) {
        // Farkas certificate from the phase-1 dual blocks (t-bound block dropped).
        sol.status = SolveStatus::Infeasible;
        sol.primal_value = kInf;
        sol.note = "phase-1 slack " + std::to_string(t_star);
        double total = 0.0;
        for (size_t b = 0; b + 1 < p1.x.size(); ++b) total += p1.x[b].trace();
        double viol = 0.0;
        double ray_err = 0.0;
        RVector atx = RVector::Zero(mr);
        for (size_t b = 0; b + 1 < p1.x.size(); ++b) {
            RMatrix xb = p1.x[b] / std::max(total, 1e-300);
            viol -= (r.blocks[b].f0.cwiseProduct(xb)).sum();
            for (const auto& [j, f] : r.blocks[b].f) atx(j) += (f.cwiseProduct(xb)).sum();
            sol.dual_blocks.push_back(std::move(xb));
        }
        ray_err = atx.cwiseAbs().maxCoeff();
        if (viol < cfg.feas_tol || ray_err > 1e-5) {
            sol.status = SolveStatus::NumericalTrouble;
            sol.note = "infeasibility suspected but certificate too weak";
        }
        return sol;
    }
    if (p1.kind != IpmResult::Kind::Converged && p1.kind != IpmResult::Kind::Stalled) {
        sol.status = SolveStatus::NumericalTrouble;
        sol.note = "phase-1 failed";
        return sol;
    }

    RVector z_start = p1.z.head(mr);
    IpmResult main = run_ipm(r.blocks, r.c_reduced, cfg, z_start);

    sol.iterations = p1.iterations + main.iterations;
    sol.primal_point = r.z_particular + r.kernel * main.z;
    sol.primal_value = r.offset + main.primal;
    sol.gap = main.gap;
    sol.dual_blocks = main.x;

    if (main.kind == IpmResult::Kind::Unbounded) {
        sol.status = SolveStatus::Unbounded;
        sol.primal_value = -kInf;
        return sol;
    }
    if (main.kind != IpmResult::Kind::Converged) {
        sol.status = SolveStatus::NumericalTrouble;
        sol.note = "iteration limit or stall";
        return sol;
    }

    // Verify before reporting Optimal: primal feasibility and duality gap.
    std::vector<RMatrix> vals;
    RVector mins = evaluate_blocks(r.blocks, main.z, &vals);
    for (int b = 0; b < mins.size(); ++b) {
        const double scale = 1.0 + r.blocks[b].f0.cwiseAbs().maxCoeff();
        if (mins(b) < -10.0 * cfg.feas_tol * scale) {
            sol.status = SolveStatus::NumericalTrouble;
            sol.note = "converged point failed the feasibility re-check";
            return sol;
        }
    }
    sol.status = SolveStatus::Optimal;
    return sol;
}

FeasibilityResult classify_feasibility(const ConicProblem& problem, const SolveConfig& cfg) {
    FeasibilityResult out;
    Reduced r = reduce(problem);
    if (r.eq_inconsistent) {
        out.feasible = false;
        out.margin = -kInf;
        out.solution.status = SolveStatus::Infeasible;
        out.solution.note = "equality constraints inconsistent";
        return out;
    }
    const int mr = static_cast<int>(r.c_reduced.size());
    if (r.blocks.empty()) {
        out.feasible = true;
        out.margin = kInf;
        out.solution.status = SolveStatus::Optimal;
        out.solution.primal_point = r.z_particular;
        return out;
    }
    if (mr == 0) {
        double margin = kInf;
        std::vector<RMatrix> vals;
        RVector mins = evaluate_blocks(r.blocks, RVector(), &vals);
        for (int b = 0; b < mins.size(); ++b) margin = std::min(margin, mins(b));
        out.feasible = margin >= -cfg.feas_tol;
        out.margin = margin;
        out.solution.status = out.feasible ? SolveStatus::Optimal : SolveStatus::Infeasible;
        out.solution.primal_point = r.z_particular;
        return out;
    }
    IpmResult p1 = run_phase1(r, cfg);
    if (p1.kind != IpmResult::Kind::Converged) {
        out.feasible = false;
        out.margin = 0.0;
        out.solution.status = SolveStatus::NumericalTrouble;
        out.solution.note = "phase-1 did not converge";
        return out;
    }
    const double t_star = p1.z(mr);
    out.margin = -t_star;
    out.feasible = t_star <= cfg.feas_tol;
    out.solution.status = out.feasible ? SolveStatus::Optimal : SolveStatus::Infeasible;
    out.solution.primal_point = r.z_particular + r.kernel * p1.z.head(mr);
    out.solution.gap = p1.gap;
    out.solution.iterations = p1.iterations;
    return out;
}

BisectResult bisect_quasiconvex(const std::function<ConicProblem(double)>& feasible_at,
                                double lo, double hi, double tol, const SolveConfig& cfg) {
    if (!(hi > lo)) throw BracketError("bisect_quasiconvex: requires hi > lo");
    FeasibilityResult at_hi = classify_feasibility(feasible_at(hi), cfg);
    if (!at_hi.feasible) {
        throw BracketError("bisect_quasiconvex: upper bracket infeasible");
    }
    FeasibilityResult at_lo = classify_feasibility(feasible_at(lo), cfg);
    if (at_lo.feasible) {
        return {lo, std::move(at_lo.solution)};
    }
    BisectResult best{hi, std::move(at_hi.solution)};
    while (hi - lo > tol * std::max(1.0, hi)) {
        const double mid = 0.5 * (lo + hi);
        FeasibilityResult at_mid = classify_feasibility(feasible_at(mid), cfg);
        if (at_mid.feasible) {
            hi = mid;
            best = {mid, std::move(at_mid.solution)};
        } else {
            lo = mid;
        }
    }
    best.gamma_star = hi;
    return best;
}

WitnessCheck verify_dual_witness(const FreeCone& cone, const DensityMatrix& rho,
                                 const HermitianOperator& a, const HermitianOperator& b,
                                 double tol) {
    WitnessCheck out;
    if (a.dim() != rho.dim() || b.dim() != rho.dim()) {
        throw InvalidArgument("verify_dual_witness: dimension mismatch");
    }
    const double a_scale = std::max(1.0, a.frobenius_norm());
    const double b_scale = std::max(1.0, b.frobenius_norm());
    if (min_eig(real_embedding(a.entries())) < -tol * a_scale ||
        min_eig(real_embedding(b.entries())) < -tol * b_scale) {
        out.feasible = false;
        return out;
    }
    const double tr_b_rho = (b.entries() * rho.entries()).trace().real();
    if (tr_b_rho <= tol) {
        throw DegenerateWitness("verify_dual_witness: Tr(B rho) vanishes");
    }
    const double tr_a_rho = (a.entries() * rho.entries()).trace().real();

    const HermitianOperator w(b.entries() - a.entries(), rho.subsystem_dims());

    bool in_dual_cone = false;
    if (cone.kind() == FreeCone::Kind::Ppt) {
        // Spectral route from the isotropic proof: max Tr(A sigma) over the
        // cone's normalized members is bounded by lambda_max(A^Gamma) and the
        // minimum of Tr(B sigma) by lambda_min(B^Gamma); also cover the
        // non-transposed pairing. Falls back to a conic solve if inconclusive.
        auto gamma_all = [&](const HermitianOperator& h) {
            HermitianOperator g = h.with_dims(cone.subsystem_dims());
            for (size_t k = 1; k < cone.subsystem_dims().size(); k += 2) {
                g = partial_transpose(g, static_cast<int>(k));
            }
            return g;
        };
        const HermitianOperator ag = gamma_all(a.with_dims(cone.subsystem_dims()));
        const HermitianOperator bg = gamma_all(b.with_dims(cone.subsystem_dims()));
        const double lam_max_ag =
            eigh(ag).eigenvalues.maxCoeff();
        const double lam_min_bg = eigh(bg).eigenvalues.minCoeff();
        if (lam_max_ag <= lam_min_bg + tol) in_dual_cone = true;
        const double lam_max_a = eigh(a).eigenvalues.maxCoeff();
        const double lam_min_b = eigh(b).eigenvalues.minCoeff();
        if (lam_max_a <= lam_min_b + tol) in_dual_cone = true;
    }
    if (!in_dual_cone) {
        // Generic route: min Tr(W sigma) over normalized members of the cone.
        ConicProblem prob;
        HermExpr sigma = cone.add_member_variable(prob, "sigma");
        prob.require_eq(sigma.trace() - ScalarExpr(1.0));
        prob.minimize(sigma.inner(w.entries()));
        ConicSolution s = solve(prob);
        if (s.status == SolveStatus::Infeasible) {
            // Empty cone slice: vacuously in the dual cone.
            in_dual_cone = true;
        } else if (s.status == SolveStatus::Optimal) {
            in_dual_cone = s.primal_value >= -1e-7 * std::max(1.0, w.frobenius_norm());
        } else {
            throw SolverFailure("verify_dual_witness: dual-cone membership solve failed");
        }
    }

    out.feasible = in_dual_cone;
    out.lower_bound = in_dual_cone ? std::max(0.0, tr_a_rho / tr_b_rho) : 0.0;
    return out;
}

nlohmann::json to_debug_json(const ConicProblem& problem) {
    nlohmann::json j;
    j["num_params"] = problem.num_params();
    nlohmann::json obj;
    obj["constant"] = problem.objective().constant;
    for (const auto& [i, c] : problem.objective().coeffs) {
        obj["coeffs"][std::to_string(i)] = c;
    }
    j["objective"] = obj;
    j["psd_constraints"] = nlohmann::json::array();
    for (size_t b = 0; b < problem.psd_constraints().size(); ++b) {
        const auto& expr = problem.psd_constraints()[b];
        nlohmann::json cb;
        cb["label"] = problem.psd_labels()[b];
        cb["n"] = expr.n;
        std::vector<double> c0(expr.constant.data(), expr.constant.data() + expr.constant.size());
        cb["constant"] = c0;
        for (const auto& [i, coeff] : expr.coeffs) {
            std::vector<double> cv(coeff.data(), coeff.data() + coeff.size());
            cb["coeffs"][std::to_string(i)] = cv;
        }
        j["psd_constraints"].push_back(cb);
    }
    j["equalities"] = nlohmann::json::array();
    for (const auto& eq : problem.eq_constraints()) {
        nlohmann::json e;
        e["constant"] = eq.constant;
        for (const auto& [i, c] : eq.coeffs) e["coeffs"][std::to_string(i)] = c;
        j["equalities"].push_back(e);
    }
    return j;
}

}  // namespace projent::conic
