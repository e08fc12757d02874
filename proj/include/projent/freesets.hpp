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

#ifndef PROJENT_FREESETS_HPP
#define PROJENT_FREESETS_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "projent/conic.hpp"
#include "projent/qlinalg.hpp"

namespace projent {

/// Conic representation of cone(F) for one system size. Membership is
/// "x lies in the span of basis() and every constraint map of x is PSD".
class FreeCone {
  public:
    enum class Kind { Ppt, Diagonal, Singleton, Custom };

    struct ConstraintMap {
        std::string name;
        std::function<CMatrix(const CMatrix&)> map;  // linear, Hermitian-preserving
    };

    static FreeCone ppt(int d_a, int d_b);
    /// PPT across the n-fold bipartition with grouped local parties: a single
    /// global partial transposition over all B factors.
    static FreeCone ppt_copies(int d_a, int d_b, int copies);
    static FreeCone diagonal(int d);
    static FreeCone singleton(const DensityMatrix& sigma);
    static FreeCone custom(int dim, std::vector<HermitianOperator> span_basis,
                           std::vector<ConstraintMap> maps, bool affine, bool full_dimensional);

    Kind kind() const { return kind_; }
    int dim() const { return dim_; }
    const std::vector<ConstraintMap>& constraint_maps() const { return maps_; }
    /// Span parameterization of the cone; empty means the full Hermitian space.
    const std::vector<HermitianOperator>& span_basis() const { return basis_; }
    bool spans_full_space() const { return basis_.empty(); }
    const std::vector<int>& subsystem_dims() const { return subsystem_dims_; }
    const std::optional<DensityMatrix>& singleton_state() const { return sigma_; }

    /// Axiom II: a full-rank member exists. Singleton cones with singular
    /// states are flagged here rather than rejected.
    bool has_full_rank_member() const { return has_full_rank_member_; }

    bool is_member(const HermitianOperator& x, double tol) const;
    bool is_affine() const;
    bool is_full_dimensional() const;

    /// Adds a fresh cone-member variable to a conic problem (parameters plus
    /// the PSD constraints that define membership).
    conic::HermExpr add_member_variable(conic::ConicProblem& prob, const std::string& label) const;

    /// Constrains an existing affine expression to lie in the cone.
    void add_membership(conic::ConicProblem& prob, const conic::HermExpr& x,
                        const std::string& label) const;

    nlohmann::json to_json() const;
    static FreeCone from_json(const nlohmann::json& j);

  private:
    FreeCone() = default;

    Kind kind_ = Kind::Custom;
    int dim_ = 0;
    std::vector<int> subsystem_dims_;
    std::vector<int> transpose_subsystems_;  // Ppt only
    std::optional<DensityMatrix> sigma_;     // Singleton only
    std::vector<HermitianOperator> basis_;   // empty = full space
    std::vector<ConstraintMap> maps_;
    bool affine_ = false;
    bool full_dimensional_ = false;
    bool has_full_rank_member_ = false;
};

bool is_member(const FreeCone& cone, const HermitianOperator& x, double tol);
bool is_affine(const FreeCone& cone);
bool is_full_dimensional(const FreeCone& cone);

/// A free-state family (F_n)_n: a base cone plus the rule for n copies.
class FreeConeFamily {
  public:
    explicit FreeConeFamily(FreeCone base);

    const FreeCone& base() const { return base_; }
    /// Cone on n copies: PPT keeps a single grouped A^n : B^n bipartition,
    /// Diagonal extends in the product basis, Singleton tensors its state.
    FreeCone extend(int n) const;

  private:
    FreeCone base_;
};

nlohmann::json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const nlohmann::json& j);

}  // namespace projent

#endif  // PROJENT_FREESETS_HPP
