// Copyright 2026 The cqc-bounds Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cqc/mubs.hpp"

#include <cmath>
#include <stdexcept>

#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace cqc;

namespace {

Basis basis_of(const oracle::Mat& m, const char* label) { return Basis::create(oracle::from_eigen(m), label); }

}  // namespace

TEST(mubs, fourier_qubit_is_hadamard) {
    const auto f = fourier(2).matrix();
    const double s = 1 / std::sqrt(2.0);
    EXPECT_NEAR(std::abs(f(0, 0) - s), 0, 1e-15);
    EXPECT_NEAR(std::abs(f(0, 1) - s), 0, 1e-15);
    EXPECT_NEAR(std::abs(f(1, 0) - s), 0, 1e-15);
    EXPECT_NEAR(std::abs(f(1, 1) + s), 0, 1e-15);
}

TEST(mubs, fourier_matches_reference_tables) {
    EXPECT_LT((oracle::to_eigen(fourier(3).matrix()) - oracle::reference_d3()[1]).norm(), 1e-14);
    EXPECT_LT((oracle::to_eigen(fourier(5).matrix()) - oracle::reference_d5()[0]).norm(), 1e-14);
}

TEST(mubs, fourier_is_unitary) {
    const auto f = fourier(3).matrix();
    EXPECT_LT(frobenius_norm(matmul(f, dagger(f)) - ComplexMatrix::identity(3)), 1e-12);
}

TEST(mubs, family_size_and_unbiasedness) {
    for (std::size_t d : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 23u}) {
        const auto fam = mub_family(d);
        ASSERT_EQ(fam.size(), d + 1);
        for (const auto& b : fam.bases()) {
            EXPECT_LT(frobenius_norm(matmul(dagger(b.matrix()), b.matrix()) - ComplexMatrix::identity(d)), 1e-10);
        }
        for (std::size_t i = 0; i < fam.size(); ++i) {
            for (std::size_t j = i + 1; j < fam.size(); ++j) {
                for (double v : overlap_table(fam[i], fam[j])) EXPECT_NEAR(v, 1.0 / d, 1e-10);
            }
        }
    }
}

TEST(mubs, family_order) {
    const auto fam = mub_family(5);
    EXPECT_EQ(fam.z().label(), "Z");
    EXPECT_EQ(fam.x().label(), "X");
    EXPECT_EQ(fam[2].label(), "D1F");
    EXPECT_EQ(fam[5].label(), "D4F");
    EXPECT_EQ(mub_family(2)[2].label(), "Y");
}

TEST(mubs, rejects_composite_dimensions) {
    EXPECT_THROW(mub_family(4), std::invalid_argument);
    EXPECT_THROW(mub_family(1), std::invalid_argument);
}

TEST(mubs, d3_matches_reference_bases) {
    const auto fam = mub_family(3);
    const auto pub = oracle::reference_d3();
    // Reference M0..M3 are our indices 0, 1, 3, 2.
    const std::size_t ours[] = {0, 1, 3, 2};
    for (std::size_t k = 0; k < 4; ++k) {
        EXPECT_TRUE(oracle::equal_up_to_phase_and_order(pub[k], oracle::to_eigen(fam[ours[k]].matrix()))) << k;
        EXPECT_TRUE(same_basis_up_to_phase_and_order(basis_of(pub[k], "pub"), fam[ours[k]]));
    }
    EXPECT_TRUE(is_mutually_unbiased(basis_of(pub[2], "M2"), basis_of(pub[3], "M3")));
}

TEST(mubs, d5_matches_reference_bases) {
    const auto fam = mub_family(5);
    const auto pub = oracle::reference_d5();
    // Reference order is Fourier, identity, then D^k F.
    const std::size_t ours[] = {1, 0, 2, 3, 4, 5};
    for (std::size_t k = 0; k < 6; ++k) {
        EXPECT_TRUE(oracle::equal_up_to_phase_and_order(pub[k], oracle::to_eigen(fam[ours[k]].matrix()))) << k;
    }
}

TEST(mubs, reference_d5_diagonal_is_quadratic_phase) {
    // D F F^dagger recovers D = diag(1, w, w^4, w^4, w).
    const auto fam = mub_family(5);
    const auto d = matmul(fam[2].matrix(), dagger(fam.x().matrix()));
    const int expected[] = {0, 1, 4, 4, 1};
    for (std::size_t j = 0; j < 5; ++j) {
        for (std::size_t k = 0; k < 5; ++k) {
            const Complex want = j == k ? oracle::omega(5, expected[j]) : Complex{};
            EXPECT_NEAR(std::abs(d(j, k) - want), 0.0, 1e-12);
        }
    }
}

TEST(mubs, unbiasedness_predicate) {
    EXPECT_TRUE(is_mutually_unbiased(computational(3), fourier(3)));
    EXPECT_FALSE(is_mutually_unbiased(computational(3), computational(3)));
    EXPECT_THROW(is_mutually_unbiased(computational(2), computational(3)), std::invalid_argument);
}

TEST(mubs, phase_and_order_equivalence) {
    const auto f = fourier(3).matrix();
    ComplexMatrix g(3, 3);
    const std::size_t perm[] = {2, 0, 1};
    for (std::size_t c = 0; c < 3; ++c) {
        const Complex ph = std::polar(1.0, 0.3 * static_cast<double>(c + 1));
        for (std::size_t r = 0; r < 3; ++r) g(r, c) = ph * f(r, perm[c]);
    }
    EXPECT_TRUE(same_basis_up_to_phase_and_order(fourier(3), Basis::create(g, "g")));
    EXPECT_FALSE(same_basis_up_to_phase_and_order(fourier(3), computational(3)));
}

TEST(mubs, basis_requires_unitary) {
    ComplexMatrix m = ComplexMatrix::identity(2);
    m(0, 1) = 0.5;
    EXPECT_THROW(Basis::create(m, "bad"), std::invalid_argument);
    EXPECT_THROW(Basis::create(ComplexMatrix(2, 3), "rect"), std::invalid_argument);
}

TEST(mubs, set_validation) {
    EXPECT_THROW(MubSet::create(3, {computational(3), fourier(3)}), std::invalid_argument);
    EXPECT_THROW(MubSet::create(2, {computational(2), fourier(2), computational(2)}), std::invalid_argument);
}

TEST(mubs, root_of_unity_reduces_exponent) {
    EXPECT_NEAR(std::abs(root_of_unity(7, 7 * 1000 + 3) - root_of_unity(7, 3)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(root_of_unity(4, 2) + 1.0), 0.0, 1e-15);
}
