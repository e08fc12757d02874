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

#ifndef PROJENT_TESTS_TEST_UTIL_HPP
#define PROJENT_TESTS_TEST_UTIL_HPP

#include <random>

#include "projent/qlinalg.hpp"

namespace projent::testing {

inline CMatrix random_complex(int d, std::mt19937& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    CMatrix m(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) m(i, j) = Complex(g(rng), g(rng));
    }
    return m;
}

inline HermitianOperator random_hermitian(int d, std::mt19937& rng,
                                          std::vector<int> dims = {}) {
    CMatrix m = random_complex(d, rng);
    return HermitianOperator((m + m.adjoint().eval()) / 2.0, std::move(dims));
}

/// Full-rank random state: Wishart plus a floor on the spectrum.
inline DensityMatrix random_state(int d, std::mt19937& rng, std::vector<int> dims = {},
                                  double floor = 0.01) {
    CMatrix g = random_complex(d, rng);
    CMatrix w = g * g.adjoint() + floor * static_cast<double>(d) * CMatrix::Identity(d, d);
    w /= w.trace().real();
    return DensityMatrix(HermitianOperator(std::move(w), std::move(dims)));
}

inline DensityMatrix random_pure_state(int d, std::mt19937& rng, std::vector<int> dims = {}) {
    std::normal_distribution<double> g(0.0, 1.0);
    CVector v(d);
    for (int i = 0; i < d; ++i) v(i) = Complex(g(rng), g(rng));
    v.normalize();
    return DensityMatrix(HermitianOperator(v * v.adjoint(), std::move(dims)));
}

}  // namespace projent::testing

#endif  // PROJENT_TESTS_TEST_UTIL_HPP
