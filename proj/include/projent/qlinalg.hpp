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

#ifndef PROJENT_QLINALG_HPP
#define PROJENT_QLINALG_HPP

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "projent/errors.hpp"

namespace projent {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;
using CVector = Eigen::VectorXcd;

/// Global cap on total Hilbert-space dimension for tensor products.
/// Default 256; overridable via the PROJENT_DIM_CAP environment variable.
int dim_cap();

/// Dense complex Hermitian matrix with optional subsystem structure.
///
/// Hermiticity is enforced by averaging with the conjugate transpose at
/// construction; asymmetry above 1e-8 throws instead of being silently fixed.
class HermitianOperator {
  public:
    HermitianOperator(CMatrix entries, std::vector<int> subsystem_dims = {});

    int dim() const { return static_cast<int>(entries_.rows()); }
    const CMatrix& entries() const { return entries_; }
    const std::vector<int>& subsystem_dims() const { return subsystem_dims_; }

    double trace() const { return entries_.trace().real(); }
    double frobenius_norm() const { return entries_.norm(); }

    static HermitianOperator identity(int d, std::vector<int> subsystem_dims = {});
    static HermitianOperator diagonal(const RVector& diag, std::vector<int> subsystem_dims = {});
    static HermitianOperator zero(int d, std::vector<int> subsystem_dims = {});

    HermitianOperator with_dims(std::vector<int> subsystem_dims) const;

  private:
    CMatrix entries_;
    std::vector<int> subsystem_dims_;
};

/// Normalized positive semidefinite operator (a quantum state).
class DensityMatrix {
  public:
    explicit DensityMatrix(HermitianOperator op);

    const HermitianOperator& op() const { return op_; }
    int dim() const { return op_.dim(); }
    const CMatrix& entries() const { return op_.entries(); }
    const std::vector<int>& subsystem_dims() const { return op_.subsystem_dims(); }

  private:
    HermitianOperator op_;
};

struct EighResult {
    RVector eigenvalues;  // ascending
    CMatrix eigenvectors; // columns
};

EighResult eigh(const HermitianOperator& op);

HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);
DensityMatrix tensor_power(const DensityMatrix& rho, int n);

/// Trace out all subsystems except those in `keep` (0-based, ascending).
HermitianOperator partial_trace(const HermitianOperator& op, const std::vector<int>& keep);

/// Transpose one subsystem factor.
HermitianOperator partial_transpose(const HermitianOperator& op, int subsystem);

/// (1/2)||a - b||_1.
double trace_norm_distance(const DensityMatrix& a, const DensityMatrix& b);

/// Projector onto eigenspaces with eigenvalue > tol.
HermitianOperator support_projector(const HermitianOperator& op, double tol);

/// Real embedding H -> [[Re, -Im], [Im, Re]]; doubles dimension, preserves
/// PSD-ness. Note Tr embed(H) = 2 Tr H.
RMatrix real_embedding(const CMatrix& h);

/// Project a real 2d x 2d symmetric matrix back onto the embedded-Hermitian
/// subspace and return the complex d x d Hermitian representative.
CMatrix real_unembedding(const RMatrix& m);

}  // namespace projent

#endif  // PROJENT_QLINALG_HPP
