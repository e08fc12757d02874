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

#ifndef PROJENT_CONIC_HPP
#define PROJENT_CONIC_HPP

#include <functional>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "projent/qlinalg.hpp"

namespace projent {

class FreeCone;

namespace conic {

/// Affine scalar expression in the problem parameters.
struct ScalarExpr {
    double constant = 0.0;
    std::map<int, double> coeffs;

    ScalarExpr() = default;
    explicit ScalarExpr(double c) : constant(c) {}
    static ScalarExpr variable(int index, double coeff = 1.0);

    ScalarExpr& operator+=(const ScalarExpr& other);
    ScalarExpr& operator-=(const ScalarExpr& other);
    ScalarExpr& operator*=(double s);
};

ScalarExpr operator+(ScalarExpr a, const ScalarExpr& b);
ScalarExpr operator-(ScalarExpr a, const ScalarExpr& b);
ScalarExpr operator*(double s, ScalarExpr a);

/// Affine real-symmetric-matrix-valued expression.
struct SymExpr {
    int n = 0;
    RMatrix constant;
    std::map<int, RMatrix> coeffs;
};

/// Affine complex-Hermitian-matrix-valued expression. Constraints are fed to
/// the solver through the real embedding (see real_embedding in qlinalg).
struct HermExpr {
    int d = 0;
    CMatrix constant;
    std::map<int, CMatrix> coeffs;

    HermExpr() = default;
    explicit HermExpr(const HermitianOperator& c);
    static HermExpr constant_expr(const CMatrix& c);
    static HermExpr scaled_variable(int index, const CMatrix& coeff);

    /// Apply a linear Hermitian-preserving map entrywise to all coefficients.
    HermExpr apply(const std::function<CMatrix(const CMatrix&)>& linmap) const;

    SymExpr embed() const;
    ScalarExpr trace() const;
    /// Re Tr(c expr) for Hermitian c.
    ScalarExpr inner(const CMatrix& c) const;

    HermExpr& operator+=(const HermExpr& other);
    HermExpr& operator-=(const HermExpr& other);
    HermExpr& operator*=(double s);
};

HermExpr operator+(HermExpr a, const HermExpr& b);
HermExpr operator-(HermExpr a, const HermExpr& b);
HermExpr operator*(double s, HermExpr a);

enum class SolveStatus { Optimal, Infeasible, Unbounded, NumericalTrouble };

struct SolveConfig {
    double feas_tol = 1e-8;
    double gap_tol = 1e-7;
    int max_iter = 200;
};

struct ConicSolution {
    SolveStatus status = SolveStatus::NumericalTrouble;
    double primal_value = 0.0;
    RVector primal_point;              // full parameter vector
    std::vector<RMatrix> dual_blocks;  // per PSD constraint; Farkas ray when Infeasible
    double gap = 0.0;  // relative duality gap |p - d| / (1 + |p| + |d|)
    int iterations = 0;
    std::string note;

    double eval(const ScalarExpr& e) const;
    CMatrix eval(const HermExpr& e) const;
};

/// Linear objective over scalar parameters, with affine-in-parameter PSD
/// constraints and scalar equality constraints. Matrix variables are
/// represented by their Hermitian parameterization (add_hermitian).
class ConicProblem {
  public:
    int add_scalars(int count);
    /// Adds d*d real parameters for a d x d complex Hermitian variable and
    /// returns the affine expression representing it.
    HermExpr add_hermitian(int d);

    void minimize(ScalarExpr objective);
    int require_psd(SymExpr expr, std::string label);
    int require_psd(const HermExpr& expr, std::string label);
    void require_eq(ScalarExpr expr);       // expr == 0
    void require_eq_zero(const HermExpr& expr);  // every entry == 0

    int num_params() const { return num_params_; }
    const std::vector<SymExpr>& psd_constraints() const { return psd_; }
    const std::vector<std::string>& psd_labels() const { return psd_labels_; }
    const std::vector<ScalarExpr>& eq_constraints() const { return eqs_; }
    const ScalarExpr& objective() const { return objective_; }

  private:
    int num_params_ = 0;
    ScalarExpr objective_;
    std::vector<SymExpr> psd_;
    std::vector<std::string> psd_labels_;
    std::vector<ScalarExpr> eqs_;
};

ConicSolution solve(const ConicProblem& problem, const SolveConfig& cfg = {});

/// Feasibility classification: minimizes the uniform PSD slack t needed to
/// satisfy all constraints. feasible iff the optimal t <= feas_tol.
struct FeasibilityResult {
    bool feasible = false;
    double margin = 0.0;  // -t*, positive means strictly feasible
    ConicSolution solution;
};
FeasibilityResult classify_feasibility(const ConicProblem& problem, const SolveConfig& cfg = {});

struct BisectResult {
    double gamma_star = 0.0;
    ConicSolution witness;
};

/// Bisection for quasiconvex thresholds: smallest gamma at which
/// feasible_at(gamma) is feasible. Requires feasible_at(hi) feasible and
/// feasible_at(lo) infeasible (or lo == 0).
BisectResult bisect_quasiconvex(const std::function<ConicProblem(double)>& feasible_at,
                                double lo, double hi, double tol,
                                const SolveConfig& cfg = {});

struct WitnessCheck {
    double lower_bound = 0.0;  // certified lower bound on Omega (non-logarithmic)
    bool feasible = false;
};

/// Checks the dual-witness conditions A, B >= 0 and B - A in the dual cone,
/// and returns the certified lower bound Tr(A rho)/Tr(B rho) on Omega(rho).
WitnessCheck verify_dual_witness(const FreeCone& cone, const DensityMatrix& rho,
                                 const HermitianOperator& a, const HermitianOperator& b,
                                 double tol = 1e-9);

nlohmann::json to_debug_json(const ConicProblem& problem);

}  // namespace conic
}  // namespace projent

#endif  // PROJENT_CONIC_HPP
