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

#include <nlohmann/json.hpp>
#include <random>

#include "doctest.h"
#include "projent/models.hpp"
#include "test_util.hpp"

using namespace projent;

TEST_CASE("ppt membership") {
    auto cone = FreeCone::ppt(2, 2);
    CHECK(cone.dim() == 4);
    CHECK(cone.is_full_dimensional());
    CHECK(!cone.is_affine());
    CHECK(cone.has_full_rank_member());

    // rho_{1/d} is PPT; the maximally entangled state is not.
    CHECK(cone.is_member(isotropic({2, 0.5}).op(), 1e-9));
    CHECK(!cone.is_member(max_entangled(2).op(), 1e-9));
    // Werner-type check across the isotropic family: members iff p <= 1/d.
    for (double p : {0.1, 0.3, 0.5}) CHECK(cone.is_member(isotropic({2, p}).op(), 1e-9));
    for (double p : {0.51, 0.75, 0.9}) CHECK(!cone.is_member(isotropic({2, p}).op(), 1e-9));

    // Cone property (Axiom III): positive scalar multiples stay inside.
    auto sep = isotropic({2, 0.4});
    CHECK(cone.is_member(HermitianOperator(3.7 * sep.entries()), 1e-9));

    // Convexity (Axiom I) on a random free pair.
    auto a = isotropic({2, 0.2}).entries();
    auto b = isotropic({2, 0.45}).entries();
    CHECK(cone.is_member(HermitianOperator(0.3 * a + 0.7 * b), 1e-9));
}

TEST_CASE("ppt_copies uses the grouped bipartition") {
    auto cone2 = FreeCone::ppt_copies(2, 2, 2);
    CHECK(cone2.dim() == 16);
    CHECK(cone2.subsystem_dims() == std::vector<int>{2, 2, 2, 2});

    // Product of PPT states stays in the two-copy cone; the tensor square of
    // an entangled state does not.
    auto sep = isotropic({2, 0.4});
    CHECK(cone2.is_member(tensor(sep, sep).op(), 1e-9));
    auto ent = isotropic({2, 0.9});
    CHECK(!cone2.is_member(tensor(ent, ent).op(), 1e-9));
}

TEST_CASE("diagonal cone") {
    auto cone = FreeCone::diagonal(2);
    CHECK(cone.is_affine());
    CHECK(!cone.is_full_dimensional());
    RVector d(2);
    d << 0.3, 0.7;
    CHECK(cone.is_member(HermitianOperator::diagonal(d), 1e-9));
    CMatrix plus(2, 2);
    plus << 0.5, 0.5, 0.5, 0.5;
    CHECK(!cone.is_member(HermitianOperator(plus), 1e-9));
    // Negative diagonal entries are outside the cone even within the span.
    RVector neg(2);
    neg << 1.5, -0.5;
    CHECK(!cone.is_member(HermitianOperator::diagonal(neg), 1e-9));
}

TEST_CASE("singleton cone") {
    std::mt19937 rng(31);
    auto sigma = testing::random_state(3, rng);
    auto cone = FreeCone::singleton(sigma);
    CHECK(cone.is_affine());
    CHECK(cone.has_full_rank_member());
    CHECK(cone.is_member(sigma.op(), 1e-9));
    CHECK(cone.is_member(HermitianOperator(2.5 * sigma.entries()), 1e-9));
    auto other = testing::random_state(3, rng);
    CHECK(!cone.is_member(other.op(), 1e-9));

    // Singular singleton states are flagged (Axiom II) but not rejected.
    auto pure = FreeCone::singleton(max_entangled(2));
    CHECK(!pure.has_full_rank_member());
}

TEST_CASE("custom cone probe") {
    // Custom clone of the diagonal qubit cone: the probe should find the
    // full-rank uniform member.
    std::vector<HermitianOperator> basis;
    for (int k = 0; k < 2; ++k) {
        CMatrix e = CMatrix::Zero(2, 2);
        e(k, k) = 1.0;
        basis.emplace_back(std::move(e));
    }
    std::vector<FreeCone::ConstraintMap> maps;
    maps.push_back({"psd", [](const CMatrix& m) { return m; }});
    auto cone = FreeCone::custom(2, basis, maps, /*affine=*/true, /*full_dimensional=*/false);
    CHECK(cone.has_full_rank_member());
    RVector d(2);
    d << 0.5, 0.5;
    CHECK(cone.is_member(HermitianOperator::diagonal(d), 1e-9));
}

TEST_CASE("family extension") {
    FreeConeFamily ppt(FreeCone::ppt(2, 2));
    CHECK(ppt.extend(1).dim() == 4);
    CHECK(ppt.extend(2).dim() == 16);

    FreeConeFamily diag(FreeCone::diagonal(2));
    CHECK(diag.extend(3).dim() == 8);

    FreeConeFamily single(FreeCone::singleton(isotropic({2, 0.4})));
    auto two = single.extend(2);
    CHECK(two.dim() == 16);
    auto prod = tensor(isotropic({2, 0.4}), isotropic({2, 0.4}));
    CHECK(two.is_member(prod.op(), 1e-9));
}

TEST_CASE("json round trip") {
    auto ppt = FreeCone::ppt(2, 3);
    auto back = FreeCone::from_json(ppt.to_json());
    CHECK(back.kind() == FreeCone::Kind::Ppt);
    CHECK(back.dim() == 6);

    auto diag = FreeCone::diagonal(4);
    CHECK(FreeCone::from_json(diag.to_json()).dim() == 4);

    std::mt19937 rng(41);
    auto sigma = testing::random_state(2, rng);
    auto single = FreeCone::singleton(sigma);
    auto back2 = FreeCone::from_json(single.to_json());
    CHECK((back2.singleton_state()->entries() - sigma.entries()).norm() <= 1e-12);

    // Descriptor form used by the CLI.
    auto j = nlohmann::json{{"kind", "ppt"}, {"dims", {2, 2}}};
    CHECK(FreeCone::from_json(j).dim() == 4);
    CHECK_THROWS_AS(FreeCone::from_json(nlohmann::json{{"kind", "nope"}}), InvalidArgument);
}

TEST_CASE("matrix json round trip") {
    std::mt19937 rng(43);
    auto h = testing::random_hermitian(3, rng);
    CMatrix back = matrix_from_json(matrix_to_json(h.entries()));
    CHECK((back - h.entries()).norm() <= 1e-14);
}
