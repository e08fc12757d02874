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

#include <random>

#include "doctest.h"
#include "test_util.hpp"

using namespace projent;

TEST_CASE("isotropic state spectrum") {
    auto phi = isotropic({2, 1.0});
    CHECK((phi.entries() - max_entangled(2).entries()).norm() <= 1e-12);

    auto mm = isotropic({2, 0.25});
    CHECK((mm.entries() - CMatrix::Identity(4, 4) / 4.0).norm() <= 1e-12);

    auto r3 = isotropic({3, 0.5});
    auto e = eigh(r3.op());
    CHECK(e.eigenvalues(8) == doctest::Approx(0.5));
    for (int i = 0; i < 8; ++i) CHECK(e.eigenvalues(i) == doctest::Approx(0.0625));

    CHECK(IsotropicParams{2, 0.4}.separable());
    CHECK(!IsotropicParams{2, 0.6}.separable());
}

TEST_CASE("max entangled state") {
    auto phi = max_entangled(2);
    auto red = partial_trace(phi.op(), {0});
    CHECK((red.entries() - 0.5 * CMatrix::Identity(2, 2)).norm() <= 1e-12);
    // Overlap with rho_p equals p.
    for (double p : {0.3, 0.75, 0.9}) {
        auto rho = isotropic({2, p});
        CHECK((phi.entries() * rho.entries()).trace().real() == doctest::Approx(p));
    }
}

TEST_CASE("binary entropy") {
    CHECK(binary_entropy(0.5) == doctest::Approx(1.0));
    CHECK(binary_entropy(0.0) == doctest::Approx(0.0));
    CHECK(binary_entropy(1.0) == doctest::Approx(0.0));
    CHECK(binary_entropy(0.9) == doctest::Approx(0.46899559).epsilon(1e-6));
}

TEST_CASE("coherence relative entropy") {
    std::mt19937 rng(19);
    RVector d(2);
    d << 0.3, 0.7;
    CHECK(coherence_rel_entropy(DensityMatrix(HermitianOperator::diagonal(d))) ==
          doctest::Approx(0.0));

    CMatrix plus(2, 2);
    plus << 0.5, 0.5, 0.5, 0.5;
    CHECK(coherence_rel_entropy(DensityMatrix(HermitianOperator(plus))) == doctest::Approx(1.0));

    // 0.5|+><+| + 0.5 I/2: eigenvalues 0.75, 0.25; diagonal is maximally mixed.
    CMatrix mixed = 0.5 * plus + 0.25 * CMatrix::Identity(2, 2);
    const double expected = 1.0 - binary_entropy(0.75);
    CHECK(coherence_rel_entropy(DensityMatrix(HermitianOperator(mixed))) ==
          doctest::Approx(expected));

    // Additivity under tensor powers.
    auto rho = testing::random_state(2, rng);
    auto rho2 = tensor(rho, rho);
    CHECK(coherence_rel_entropy(rho2) == doctest::Approx(2.0 * coherence_rel_entropy(rho)).epsilon(1e-9));
}

TEST_CASE("isotropic witnesses") {
    auto [a, b] = isotropic_witnesses({2, 0.75});
    CHECK((a.entries() - 4.0 * max_entangled(2).entries()).norm() <= 1e-12);
    CHECK((b.entries() -
           4.0 * (CMatrix::Identity(4, 4) - max_entangled(2).entries()))
              .norm() <= 1e-12);
    auto rho = isotropic({2, 0.75});
    CHECK((b.entries() * rho.entries()).trace().real() == doctest::Approx(1.0));
    CHECK((a.entries() * rho.entries()).trace().real() == doctest::Approx(3.0));

    CHECK_THROWS_AS(isotropic_witnesses({2, 0.4}), WrongRegime);
    CHECK_THROWS_AS(isotropic_witnesses({2, 1.0}), WrongRegime);
}

TEST_CASE("isotropic closed forms") {
    CHECK(isotropic_dproj_bits({2, 0.75}) == doctest::Approx(std::log2(3.0)));
    CHECK(isotropic_dproj_bits({2, 0.5}) == doctest::Approx(0.0));
    CHECK(isotropic_dproj_bits({3, 0.75}) == doctest::Approx(std::log2(6.0)));
    CHECK(isotropic_rel_entropy_bits({2, 0.9}) == doctest::Approx(0.531004).epsilon(1e-5));
    CHECK(isotropic_rel_entropy_bits({2, 0.75}) == doctest::Approx(0.188722).epsilon(1e-4));
    CHECK(isotropic_rel_entropy_bits({2, 0.5}) == doctest::Approx(0.0));
}
