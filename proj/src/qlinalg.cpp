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

#include "projent/qlinalg.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

namespace projent {

int dim_cap() {
    static const int cap = [] {
        if (const char* env = std::getenv("PROJENT_DIM_CAP")) {
            int v = std::atoi(env);
            if (v > 0) return v;
        }
        return 256;
    }();
    return cap;
}

HermitianOperator::HermitianOperator(CMatrix entries, std::vector<int> subsystem_dims)
    : entries_(std::move(entries)), subsystem_dims_(std::move(subsystem_dims)) {
    if (entries_.rows() != entries_.cols() || entries_.rows() < 1) {
        throw InvalidArgument("HermitianOperator: matrix must be square and non-empty");
    }
    const double scale = std::max(1.0, entries_.norm());
    const double asym = (entries_ - entries_.adjoint().eval()).norm();
    if (asym > 1e-8 * scale) {
        throw InvalidArgument("HermitianOperator: input is not Hermitian (asymmetry " +
                              std::to_string(asym) + ")");
    }
    entries_ = ((entries_ + entries_.adjoint().eval()) / 2.0).eval();
    if (!subsystem_dims_.empty()) {
        long long prod = 1;
        for (int d : subsystem_dims_) {
            if (d < 1) throw InvalidArgument("HermitianOperator: subsystem dims must be positive");
            prod *= d;
        }
        if (prod != entries_.rows()) {
            throw InvalidArgument("HermitianOperator: subsystem dims do not multiply to dim");
        }
    }
}

HermitianOperator HermitianOperator::identity(int d, std::vector<int> subsystem_dims) {
    return HermitianOperator(CMatrix::Identity(d, d), std::move(subsystem_dims));
}

HermitianOperator HermitianOperator::diagonal(const RVector& diag, std::vector<int> subsystem_dims) {
    CMatrix m = CMatrix::Zero(diag.size(), diag.size());
    for (int i = 0; i < diag.size(); ++i) m(i, i) = diag(i);
    return HermitianOperator(std::move(m), std::move(subsystem_dims));
}

HermitianOperator HermitianOperator::zero(int d, std::vector<int> subsystem_dims) {
    return HermitianOperator(CMatrix::Zero(d, d), std::move(subsystem_dims));
}

HermitianOperator HermitianOperator::with_dims(std::vector<int> subsystem_dims) const {
    return HermitianOperator(entries_, std::move(subsystem_dims));
}

DensityMatrix::DensityMatrix(HermitianOperator op) : op_(std::move(op)) {
    EighResult e = eigh(op_);
    if (e.eigenvalues(0) < -1e-9) {
        throw InvalidArgument("DensityMatrix: not PSD (min eigenvalue " +
                              std::to_string(e.eigenvalues(0)) + ")");
    }
    if (std::abs(op_.trace() - 1.0) > 1e-9) {
        throw InvalidArgument("DensityMatrix: trace != 1 (" + std::to_string(op_.trace()) + ")");
    }
}

EighResult eigh(const HermitianOperator& op) {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(op.entries());
    if (solver.info() != Eigen::Success) {
        throw SolverFailure("eigh: eigendecomposition did not converge");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b) {
    const long long d = static_cast<long long>(a.dim()) * b.dim();
    if (d > dim_cap()) {
        throw CapacityExceeded("tensor: total dimension " + std::to_string(d) +
                               " exceeds cap " + std::to_string(dim_cap()));
    }
    CMatrix out(d, d);
    for (int i = 0; i < a.dim(); ++i) {
        for (int j = 0; j < a.dim(); ++j) {
            out.block(i * b.dim(), j * b.dim(), b.dim(), b.dim()) = a.entries()(i, j) * b.entries();
        }
    }
    std::vector<int> dims = a.subsystem_dims().empty()
                                ? std::vector<int>{a.dim()}
                                : a.subsystem_dims();
    std::vector<int> bd = b.subsystem_dims().empty()
                              ? std::vector<int>{b.dim()}
                              : b.subsystem_dims();
    dims.insert(dims.end(), bd.begin(), bd.end());
    return HermitianOperator(std::move(out), std::move(dims));
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
    return DensityMatrix(tensor(a.op(), b.op()));
}

DensityMatrix tensor_power(const DensityMatrix& rho, int n) {
    if (n < 1) throw InvalidArgument("tensor_power: n must be >= 1");
    DensityMatrix out = rho;
    for (int k = 1; k < n; ++k) out = tensor(out, rho);
    return out;
}

namespace {

// Row-major strides of the subsystem index decomposition.
std::vector<long long> strides(const std::vector<int>& dims) {
    std::vector<long long> s(dims.size());
    long long acc = 1;
    for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k) {
        s[k] = acc;
        acc *= dims[k];
    }
    return s;
}

}  // namespace

HermitianOperator partial_trace(const HermitianOperator& op, const std::vector<int>& keep) {
    const auto& dims = op.subsystem_dims();
    if (dims.empty()) throw InvalidArgument("partial_trace: operator has no subsystem structure");
    if (keep.empty()) throw InvalidArgument("partial_trace: keep set must be non-empty");
    for (int k : keep) {
        if (k < 0 || k >= static_cast<int>(dims.size())) {
            throw InvalidArgument("partial_trace: keep index out of range");
        }
    }
    std::vector<int> keep_sorted = keep;
    std::sort(keep_sorted.begin(), keep_sorted.end());
    std::vector<int> traced;
    for (int k = 0; k < static_cast<int>(dims.size()); ++k) {
        if (!std::binary_search(keep_sorted.begin(), keep_sorted.end(), k)) traced.push_back(k);
    }

    std::vector<int> keep_dims, traced_dims;
    for (int k : keep_sorted) keep_dims.push_back(dims[k]);
    for (int k : traced) traced_dims.push_back(dims[k]);
    const long long dk = std::accumulate(keep_dims.begin(), keep_dims.end(), 1LL, std::multiplies<>());
    const long long dt = std::accumulate(traced_dims.begin(), traced_dims.end(), 1LL, std::multiplies<>());

    const auto full_strides = strides(dims);
    auto flat_index = [&](long long ik, long long it) {
        long long idx = 0;
        long long rk = ik;
        for (int a = static_cast<int>(keep_sorted.size()) - 1; a >= 0; --a) {
            idx += (rk % keep_dims[a]) * full_strides[keep_sorted[a]];
            rk /= keep_dims[a];
        }
        long long rt = it;
        for (int a = static_cast<int>(traced.size()) - 1; a >= 0; --a) {
            idx += (rt % traced_dims[a]) * full_strides[traced[a]];
            rt /= traced_dims[a];
        }
        return idx;
    };

    CMatrix out = CMatrix::Zero(dk, dk);
    for (long long i = 0; i < dk; ++i) {
        for (long long j = 0; j < dk; ++j) {
            Complex acc = 0;
            for (long long t = 0; t < dt; ++t) {
                acc += op.entries()(flat_index(i, t), flat_index(j, t));
            }
            out(i, j) = acc;
        }
    }
    return HermitianOperator(std::move(out), keep_dims);
}

HermitianOperator partial_transpose(const HermitianOperator& op, int subsystem) {
    const auto& dims = op.subsystem_dims();
    if (dims.empty()) throw InvalidArgument("partial_transpose: operator has no subsystem structure");
    if (subsystem < 0 || subsystem >= static_cast<int>(dims.size())) {
        throw InvalidArgument("partial_transpose: subsystem index out of range");
    }
    const auto s = strides(dims);
    const int n = op.dim();
    const int ds = dims[subsystem];
    const long long stride = s[subsystem];

    auto sub_index = [&](long long flat) { return (flat / stride) % ds; };
    CMatrix out(n, n);
    for (long long i = 0; i < n; ++i) {
        for (long long j = 0; j < n; ++j) {
            const long long a = sub_index(i), b = sub_index(j);
            const long long ii = i + (b - a) * stride;
            const long long jj = j + (a - b) * stride;
            out(ii, jj) = op.entries()(i, j);
        }
    }
    return HermitianOperator(std::move(out), dims);
}

double trace_norm_distance(const DensityMatrix& a, const DensityMatrix& b) {
    if (a.dim() != b.dim()) throw InvalidArgument("trace_norm_distance: dimension mismatch");
    HermitianOperator diff(a.entries() - b.entries());
    EighResult e = eigh(diff);
    const double v = 0.5 * e.eigenvalues.cwiseAbs().sum();
    return std::clamp(v, 0.0, 1.0);
}

HermitianOperator support_projector(const HermitianOperator& op, double tol) {
    EighResult e = eigh(op);
    CMatrix p = CMatrix::Zero(op.dim(), op.dim());
    for (int i = 0; i < e.eigenvalues.size(); ++i) {
        if (e.eigenvalues(i) > tol) {
            p += e.eigenvectors.col(i) * e.eigenvectors.col(i).adjoint();
        }
    }
    return HermitianOperator(std::move(p), op.subsystem_dims());
}

RMatrix real_embedding(const CMatrix& h) {
    const int n = static_cast<int>(h.rows());
    RMatrix m(2 * n, 2 * n);
    m.topLeftCorner(n, n) = h.real();
    m.topRightCorner(n, n) = -h.imag();
    m.bottomLeftCorner(n, n) = h.imag();
    m.bottomRightCorner(n, n) = h.real();
    return m;
}

CMatrix real_unembedding(const RMatrix& m) {
    const int n = static_cast<int>(m.rows()) / 2;
    CMatrix h(n, n);
    h.real() = (m.topLeftCorner(n, n) + m.bottomRightCorner(n, n)) / 2.0;
    h.imag() = (m.bottomLeftCorner(n, n) - m.topRightCorner(n, n)) / 2.0;
    // Symmetrize away numerical skew from the projection.
    return ((h + h.adjoint().eval()) / 2.0).eval();
}

}  // namespace projent
