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

#include "cqc/states.hpp"

#include <cmath>
#include <stdexcept>

#include <gtest/gtest.h>

#include "cqc/mubs.hpp"
#include "oracles.hpp"

using namespace cqc;

namespace {

ComplexMatrix scaled_identity(std::size_t n, double s) { return ComplexMatrix::identity(n) * Complex(s); }

}  // namespace

TEST(states, from_matrix_validates) {
    EXPECT_THROW(BipartiteState::from_matrix(ComplexMatrix::identity(4), 2), std::invalid_argument);  // trace 4
    EXPECT_THROW(BipartiteState::from_matrix(scaled_identity(3, 1.0 / 3), 2), std::invalid_argument);
    ComplexMatrix skew = scaled_identity(4, 0.25);
    skew(0, 1) = 0.1;
    EXPECT_THROW(BipartiteState::from_matrix(skew, 2), std::invalid_argument);
    const std::vector<Complex> neg = {1.2, -0.2, 0.0, 0.0};
    EXPECT_THROW(BipartiteState::from_matrix(ComplexMatrix::diagonal(neg), 2), std::invalid_argument);
}

TEST(states, tiny_negative_eigenvalues_are_clamped) {
    const std::vector<Complex> diag = {1.0 + 5e-10, -5e-10, 0.0, 0.0};
    const auto rho = BipartiteState::from_matrix(ComplexMatrix::diagonal(diag), 2);
    EXPECT_EQ(rho.spectrum().min(), 0.0);
    const std::vector<Complex> bad = {1.0 + 2e-9, -2e-9, 0.0, 0.0};
    EXPECT_THROW(BipartiteState::from_matrix(ComplexMatrix::diagonal(bad), 2), std::invalid_argument);
}

TEST(states, pure_state_examples) {
    const std::vector<Complex> v00 = {1.0, 0.0, 0.0, 0.0};
    const auto rho = pure_state(v00, 2);
    EXPECT_EQ(rho.matrix()(0, 0), Complex(1.0));
    EXPECT_NEAR(von_neumann_entropy(rho), 0.0, 1e-12);

    const auto bell = maximally_entangled(2);
    EXPECT_NEAR(bell.matrix()(0, 3).real(), 0.5, 1e-15);
    EXPECT_NEAR(bell.matrix()(3, 0).real(), 0.5, 1e-15);
    EXPECT_NEAR(conditional_entropy(bell), -1.0, 1e-12);
    EXPECT_THROW(pure_state(std::vector<Complex>(4), 2), std::invalid_argument);
    EXPECT_THROW(pure_state(std::vector<Complex>(3, 1.0), 2), std::invalid_argument);
}

TEST(states, pure_states_have_rank_one) {
    for (std::size_t d : {2u, 3u, 5u}) {
        Rng rng(d);
        for (int t = 0; t < 20; ++t) {
            const auto rho = random_pure(d, rng);
            const auto& s = rho.spectrum().values;
            EXPECT_NEAR(s[0], 1.0, 1e-10);
            for (std::size_t k = 1; k < s.size(); ++k) EXPECT_NEAR(s[k], 0.0, 1e-10);
            EXPECT_NEAR(trace(rho.matrix()).real(), 1.0, 1e-10);
            // Schmidt symmetry
            EXPECT_NEAR(subsystem_entropy(rho, Subsystem::A), subsystem_entropy(rho, Subsystem::B), 1e-9);
        }
    }
}

TEST(states, maximally_entangled_entropies) {
    for (std::size_t d : {2u, 3u, 5u}) {
        const auto rho = maximally_entangled(d);
        const double log_d = std::log2(static_cast<double>(d));
        EXPECT_NEAR(quantum_mutual_information(rho), 2 * log_d, 1e-10);
        EXPECT_NEAR(conditional_entropy(rho), -log_d, 1e-10);
        EXPECT_NEAR(purity(rho), 1.0, 1e-12);
        const auto ra = rho.reduced(Subsystem::A);
        EXPECT_LT(frobenius_norm(ra - scaled_identity(d, 1.0 / d)), 1e-12);
    }
}

TEST(states, isotropic_spectrum) {
    const auto zero = isotropic(3, 0.0);
    EXPECT_LT(frobenius_norm(zero.matrix() - scaled_identity(9, 1.0 / 9)), 1e-15);

    const auto one = isotropic(3, 1.0);
    EXPECT_NEAR(one.spectrum().values[0], 1.0, 1e-12);
    for (std::size_t k = 1; k < 9; ++k) EXPECT_NEAR(one.spectrum().values[k], 0.0, 1e-12);

    const auto half = isotropic(3, 0.5);
    EXPECT_NEAR(half.spectrum().values[0], 0.5 + 1.0 / 18, 1e-12);
    for (std::size_t k = 1; k < 9; ++k) EXPECT_NEAR(half.spectrum().values[k], 1.0 / 18, 1e-12);
    const double want = -(10.0 / 18) * std::log2(10.0 / 18) - 8 * (1.0 / 18) * std::log2(1.0 / 18);
    EXPECT_NEAR(von_neumann_entropy(half), want, 1e-10);
}

TEST(states, isotropic_rejects_bad_inputs) {
    EXPECT_THROW(isotropic(4, 0.5), std::invalid_argument);
    EXPECT_THROW(isotropic(3, 1.01), std::invalid_argument);
    EXPECT_THROW(isotropic(3, -0.2), std::invalid_argument);
    EXPECT_NO_THROW(isotropic(3, isotropic_p_min(3)));
}

TEST(states, isotropic_marginals_are_maximally_mixed) {
    for (std::size_t d : {2u, 3u, 5u}) {
        for (int i = 0; i <= 10; ++i) {
            const double p = isotropic_p_min(d) + (1.0 - isotropic_p_min(d)) * i / 10.0;
            const auto rho = isotropic(d, p);
            for (auto side : {Subsystem::A, Subsystem::B}) {
                EXPECT_LT(frobenius_norm(rho.reduced(side) - scaled_identity(d, 1.0 / d)), 1e-10);
            }
            EXPECT_TRUE(has_maximally_mixed_subsystem(rho));
        }
    }
}

TEST(states, rng_is_deterministic) {
    Rng a(42), b(42);
    EXPECT_EQ(random_pure(2, a).matrix(), random_pure(2, b).matrix());
    Rng c(7), e(7);
    EXPECT_EQ(random_mixed(3, c).matrix(), random_mixed(3, e).matrix());
    Rng f(8);
    Rng g(7);
    EXPECT_NE(random_mixed(3, f).matrix(), random_mixed(3, g).matrix());
}

TEST(states, trial_streams_are_distinct) {
    auto x = Rng::for_trial(1, 0);
    auto y = Rng::for_trial(1, 1);
    auto z = Rng::for_trial(2, 0);
    const double a = x.uniform(), b = y.uniform(), c = z.uniform();
    EXPECT_NE(a, b);
    EXPECT_NE(a, c);
    auto x2 = Rng::for_trial(1, 0);
    EXPECT_EQ(a, x2.uniform());
}

TEST(states, haar_average_is_maximally_mixed) {
    Rng rng(123);
    const std::size_t d = 2;
    const int n = 100000;
    ComplexMatrix mean(4, 4);
    for (int t = 0; t < n; ++t) mean += random_pure(d, rng).matrix();
    mean *= 1.0 / n;
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 4; ++c) {
            EXPECT_NEAR(std::abs(mean(r, c) - (r == c ? Complex(0.25) : Complex(0.0))), 0.0, 2e-2);
        }
    }
}

TEST(states, ginibre_full_rank_is_positive) {
    Rng rng(5);
    for (int t = 0; t < 50; ++t) {
        const auto rho = random_mixed(3, rng);
        EXPECT_GE(rho.spectrum().min(), -1e-9);
        EXPECT_NEAR(trace(rho.matrix()).real(), 1.0, 1e-10);
    }
    EXPECT_THROW(random_mixed(3, 0, rng), std::invalid_argument);
    EXPECT_THROW(random_mixed(3, 10, rng), std::invalid_argument);
    const auto r1 = random_mixed(3, 1, rng);
    EXPECT_NEAR(purity(r1), 1.0, 1e-10);
}

TEST(states, entropies_match_oracle) {
    Rng rng(77);
    for (std::size_t d : {2u, 3u}) {
        for (int t = 0; t < 20; ++t) {
            const auto rho = random_mixed(d, rng);
            const auto m = oracle::to_eigen(rho.matrix());
            const int di = static_cast<int>(d);
            EXPECT_NEAR(von_neumann_entropy(rho), oracle::entropy(m), 1e-10);
            EXPECT_NEAR(quantum_mutual_information(rho), oracle::mutual_information(m, di), 1e-10);
            EXPECT_NEAR(conditional_entropy(rho), oracle::entropy(m) - oracle::entropy(oracle::ptrace(m, di, false)),
                        1e-10);
        }
    }
}

TEST(states, mutual_information_bounds) {
    Rng rng(99);
    for (std::size_t d : {2u, 3u}) {
        for (int t = 0; t < 100; ++t) {
            const auto rho = t % 2 ? random_pure(d, rng) : random_mixed(d, rng);
            const double i = quantum_mutual_information(rho);
            const double ha = subsystem_entropy(rho, Subsystem::A);
            const double hb = subsystem_entropy(rho, Subsystem::B);
            EXPECT_GE(i, -2e-9);
            EXPECT_LE(i, 2 * std::min(ha, hb) + 1e-9);
            EXPECT_GE(std::log2(double(d)) - conditional_entropy(rho), i - 1e-9);
        }
    }
}

TEST(states, entropy_is_invariant_under_local_mub_unitaries) {
    Rng rng(31);
    const auto fam = mub_family(3);
    for (int t = 0; t < 10; ++t) {
        const auto rho = random_mixed(3, rng);
        for (std::size_t k = 0; k < fam.size(); ++k) {
            const auto u = kron(fam[k].matrix(), fam[(k + 1) % fam.size()].matrix());
            const auto rotated = BipartiteState::from_matrix(matmul(matmul(u, rho.matrix()), dagger(u)), 3);
            EXPECT_NEAR(von_neumann_entropy(rotated), von_neumann_entropy(rho), 1e-9);
            EXPECT_NEAR(quantum_mutual_information(rotated), quantum_mutual_information(rho), 1e-9);
        }
    }
}

TEST(states, ppt_examples) {
    EXPECT_FALSE(is_ppt(maximally_entangled(2)));
    const auto pt = partial_transpose(maximally_entangled(2).matrix(), 2, 2, Subsystem::B);
    EXPECT_NEAR(hermitian_eigenvalues(pt).min(), -0.5, 1e-12);
    Rng rng(3);
    for (int t = 0; t < 10; ++t) {
        const auto a = random_mixed(2, rng).reduced(Subsystem::A);
        const auto b = random_mixed(2, rng).reduced(Subsystem::B);
        EXPECT_TRUE(is_ppt(product_state(a, b)));
    }
    EXPECT_THROW(is_separable_2x2(maximally_mixed(3)), std::invalid_argument);
}

TEST(states, isotropic_qubit_separability_threshold) {
    for (int i = 0; i <= 60; ++i) {
        const double p = -1.0 / 3 + (4.0 / 3) * i / 60.0;
        const bool sep = is_separable_2x2(isotropic(2, p));
        if (p < 1.0 / 3 - 1e-6) {
            EXPECT_TRUE(sep) << p;
        }
        if (p > 1.0 / 3 + 1e-6) {
            EXPECT_FALSE(sep) << p;
        }
    }
}

TEST(states, maximally_mixed_subsystem_examples) {
    const std::vector<Complex> v00 = {1.0, 0.0, 0.0, 0.0};
    EXPECT_FALSE(has_maximally_mixed_subsystem(pure_state(v00, 2)));
    const ComplexMatrix a{{0.6, 0.0}, {0.0, 0.4}};
    EXPECT_TRUE(has_maximally_mixed_subsystem(product_state(a, scaled_identity(2, 0.5))));
}

TEST(states, primes) {
    EXPECT_TRUE(is_prime(2));
    EXPECT_FALSE(is_prime(9));
    EXPECT_TRUE(is_prime(23));
    EXPECT_FALSE(is_prime(0));
    EXPECT_FALSE(is_prime(1));
}
