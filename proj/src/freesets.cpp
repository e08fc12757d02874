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

#include "projent/freesets.hpp"

#include <cmath>
#include <nlohmann/json.hpp>

namespace projent {

namespace {

double min_eig_complex(const CMatrix& m) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

CMatrix transpose_subsystems(const CMatrix& m, const std::vector<int>& dims,
                             const std::vector<int>& which) {
    HermitianOperator h(m, dims);
    for (int k : which) h = partial_transpose(h, k);
    return h.entries();
}

}  // namespace

FreeCone FreeCone::ppt(int d_a, int d_b) { return ppt_copies(d_a, d_b, 1); }

FreeCone FreeCone::ppt_copies(int d_a, int d_b, int copies) {
    if (d_a < 2 || d_b < 2 || copies < 1) {
        throw InvalidArgument("FreeCone::ppt: local dims must be >= 2, copies >= 1");
    }
    FreeCone c;
    c.kind_ = Kind::Ppt;
    long long dim = 1;
    for (int k = 0; k < copies; ++k) {
        c.subsystem_dims_.push_back(d_a);
        c.subsystem_dims_.push_back(d_b);
        dim *= static_cast<long long>(d_a) * d_b;
    }
    if (dim > dim_cap()) {
        throw CapacityExceeded("FreeCone::ppt: dimension exceeds cap");
    }
    c.dim_ = static_cast<int>(dim);
    for (int k = 0; k < copies; ++k) c.transpose_subsystems_.push_back(2 * k + 1);

    const std::vector<int> dims = c.subsystem_dims_;
    const std::vector<int> which = c.transpose_subsystems_;
    c.maps_.push_back({"psd", [](const CMatrix& m) { return m; }});
    c.maps_.push_back({"partial_transpose_psd", [dims, which](const CMatrix& m) {
                           return transpose_subsystems(m, dims, which);
                       }});
    c.affine_ = false;
    c.full_dimensional_ = true;
    c.has_full_rank_member_ = true;  // the maximally mixed state
    return c;
}

FreeCone FreeCone::diagonal(int d) {
    if (d < 2) throw InvalidArgument("FreeCone::diagonal: d must be >= 2");
    FreeCone c;
    c.kind_ = Kind::Diagonal;
    c.dim_ = d;
    for (int k = 0; k < d; ++k) {
        CMatrix e = CMatrix::Zero(d, d);
        e(k, k) = 1.0;
        c.basis_.emplace_back(std::move(e));
    }
    c.maps_.push_back({"psd", [](const CMatrix& m) { return m; }});
    c.affine_ = true;
    c.full_dimensional_ = false;
    c.has_full_rank_member_ = true;  // uniform diagonal
    return c;
}

FreeCone FreeCone::singleton(const DensityMatrix& sigma) {
    FreeCone c;
    c.kind_ = Kind::Singleton;
    c.dim_ = sigma.dim();
    c.subsystem_dims_ = sigma.subsystem_dims();
    c.sigma_ = sigma;
    c.basis_.push_back(sigma.op());
    c.maps_.push_back({"psd", [](const CMatrix& m) { return m; }});
    c.affine_ = true;
    c.full_dimensional_ = false;
    c.has_full_rank_member_ = min_eig_complex(sigma.entries()) > 1e-12;
    return c;
}

FreeCone FreeCone::custom(int dim, std::vector<HermitianOperator> span_basis,
                          std::vector<ConstraintMap> maps, bool affine, bool full_dimensional) {
    FreeCone c;
    c.kind_ = Kind::Custom;
    c.dim_ = dim;
    c.basis_ = std::move(span_basis);
    c.maps_ = std::move(maps);
    c.affine_ = affine;
    c.full_dimensional_ = full_dimensional;
    for (const auto& b : c.basis_) {
        if (b.dim() != dim) throw InvalidArgument("FreeCone::custom: basis dimension mismatch");
    }
    // Axiom II feasibility probe: look for a normalized member sigma >= t I
    // with t > 0.
    conic::ConicProblem prob;
    conic::HermExpr sigma = c.add_member_variable(prob, "probe");
    const int t = prob.add_scalars(1);
    prob.require_eq(sigma.trace() - conic::ScalarExpr(1.0));
    conic::HermExpr shifted = sigma;
    shifted -= conic::HermExpr::scaled_variable(t, CMatrix::Identity(dim, dim));
    prob.require_psd(shifted, "probe_margin");
    prob.minimize(-1.0 * conic::ScalarExpr::variable(t));
    conic::ConicSolution s = conic::solve(prob);
    c.has_full_rank_member_ =
        s.status == conic::SolveStatus::Optimal && -s.primal_value > 1e-9;
    return c;
}

bool FreeCone::is_member(const HermitianOperator& x, double tol) const {
    if (x.dim() != dim_) throw InvalidArgument("FreeCone::is_member: dimension mismatch");
    const double scale = std::max(1.0, x.frobenius_norm());
    if (!basis_.empty()) {
        // Orthogonal projection onto the span via the Gram system.
        const int k = static_cast<int>(basis_.size());
        RMatrix gram(k, k);
        RVector rhs(k);
        for (int i = 0; i < k; ++i) {
            for (int j = 0; j < k; ++j) {
                gram(i, j) = (basis_[i].entries().adjoint() * basis_[j].entries()).trace().real();
            }
            rhs(i) = (basis_[i].entries().adjoint() * x.entries()).trace().real();
        }
        const RVector coeff = gram.ldlt().solve(rhs);
        CMatrix proj = CMatrix::Zero(dim_, dim_);
        for (int i = 0; i < k; ++i) proj += coeff(i) * basis_[i].entries();
        if ((proj - x.entries()).norm() > tol * scale) return false;
    }
    for (const auto& cm : maps_) {
        if (min_eig_complex(cm.map(x.entries())) < -tol * scale) return false;
    }
    return true;
}

bool FreeCone::is_affine() const { return affine_; }

bool FreeCone::is_full_dimensional() const { return full_dimensional_; }

conic::HermExpr FreeCone::add_member_variable(conic::ConicProblem& prob,
                                              const std::string& label) const {
    conic::HermExpr x;
    if (basis_.empty()) {
        x = prob.add_hermitian(dim_);
    } else {
        const int base = prob.add_scalars(static_cast<int>(basis_.size()));
        x.d = dim_;
        x.constant = CMatrix::Zero(dim_, dim_);
        for (size_t i = 0; i < basis_.size(); ++i) {
            x.coeffs[base + static_cast<int>(i)] = basis_[i].entries();
        }
    }
    for (const auto& cm : maps_) {
        prob.require_psd(x.apply(cm.map), label + ":" + cm.name);
    }
    return x;
}

void FreeCone::add_membership(conic::ConicProblem& prob, const conic::HermExpr& x,
                              const std::string& label) const {
    if (x.d != dim_) throw InvalidArgument("FreeCone::add_membership: dimension mismatch");
    if (!basis_.empty()) {
        // x must also lie in the span: x - (member variable) == 0.
        conic::HermExpr member;
        member.d = dim_;
        member.constant = CMatrix::Zero(dim_, dim_);
        const int base = prob.add_scalars(static_cast<int>(basis_.size()));
        for (size_t i = 0; i < basis_.size(); ++i) {
            member.coeffs[base + static_cast<int>(i)] = basis_[i].entries();
        }
        conic::HermExpr diff = x;
        diff -= member;
        prob.require_eq_zero(diff);
    }
    for (const auto& cm : maps_) {
        prob.require_psd(x.apply(cm.map), label + ":" + cm.name);
    }
}

bool is_member(const FreeCone& cone, const HermitianOperator& x, double tol) {
    return cone.is_member(x, tol);
}

bool is_affine(const FreeCone& cone) { return cone.is_affine(); }

bool is_full_dimensional(const FreeCone& cone) { return cone.is_full_dimensional(); }

FreeConeFamily::FreeConeFamily(FreeCone base) : base_(std::move(base)) {
    if (base_.kind() == FreeCone::Kind::Custom) {
        throw InvalidArgument("FreeConeFamily: custom cones carry no n-copy rule");
    }
}

FreeCone FreeConeFamily::extend(int n) const {
    if (n < 1) throw InvalidArgument("FreeConeFamily::extend: n must be >= 1");
    switch (base_.kind()) {
        case FreeCone::Kind::Ppt: {
            const auto& dims = base_.subsystem_dims();
            return FreeCone::ppt_copies(dims[0], dims[1], n);
        }
        case FreeCone::Kind::Diagonal: {
            long long d = 1;
            for (int k = 0; k < n; ++k) {
                d *= base_.dim();
                if (d > dim_cap()) throw CapacityExceeded("FreeConeFamily: dimension exceeds cap");
            }
            return FreeCone::diagonal(static_cast<int>(d));
        }
        case FreeCone::Kind::Singleton:
            return FreeCone::singleton(tensor_power(*base_.singleton_state(), n));
        default:
            throw InvalidArgument("FreeConeFamily: unsupported cone kind");
    }
}

nlohmann::json matrix_to_json(const CMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 0; j < m.cols(); ++j) {
            row.push_back({m(i, j).real(), m(i, j).imag()});
        }
        rows.push_back(row);
    }
    return rows;
}

CMatrix matrix_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.empty()) throw InvalidArgument("matrix_from_json: expected rows");
    const int n = static_cast<int>(j.size());
    CMatrix m(n, n);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(j[i].size()) != n) {
            throw InvalidArgument("matrix_from_json: matrix must be square");
        }
        for (int k = 0; k < n; ++k) {
            const auto& cell = j[i][k];
            if (!cell.is_array() || cell.size() != 2) {
                throw InvalidArgument("matrix_from_json: entries must be [re, im] pairs");
            }
            m(i, k) = Complex(cell[0].get<double>(), cell[1].get<double>());
        }
    }
    return m;
}

nlohmann::json FreeCone::to_json() const {
    nlohmann::json j;
    switch (kind_) {
        case Kind::Ppt:
            j["kind"] = "ppt";
            j["dims"] = {subsystem_dims_[0], subsystem_dims_[1]};
            if (subsystem_dims_.size() > 2) j["copies"] = subsystem_dims_.size() / 2;
            break;
        case Kind::Diagonal:
            j["kind"] = "diagonal";
            j["dim"] = dim_;
            break;
        case Kind::Singleton:
            j["kind"] = "singleton";
            j["state"] = matrix_to_json(sigma_->entries());
            break;
        default:
            throw InvalidArgument("FreeCone::to_json: custom cones are not serializable");
    }
    return j;
}

FreeCone FreeCone::from_json(const nlohmann::json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "ppt") {
        const auto dims = j.at("dims");
        const int copies = j.value("copies", 1);
        return ppt_copies(dims.at(0).get<int>(), dims.at(1).get<int>(), copies);
    }
    if (kind == "diagonal") {
        return diagonal(j.at("dim").get<int>());
    }
    if (kind == "singleton") {
        CMatrix m = matrix_from_json(j.at("state"));
        return singleton(DensityMatrix(HermitianOperator(std::move(m))));
    }
    throw InvalidArgument("FreeCone::from_json: unknown kind '" + kind + "'");
}

}  // namespace projent
