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

#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cqc/matcore.hpp"

namespace cqc {

inline constexpr double kTraceTol = 1e-10;
/// Eigenvalues in [-kNegativeEigenTol, 0) are treated as zero; anything lower is invalid.
inline constexpr double kNegativeEigenTol = 1e-9;

/// Seeded pseudo-random source. Equal seeds give equal streams.
class Rng {
   public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Counter-based child stream for trial `index` of a run seeded with `master`.
    static Rng for_trial(std::uint64_t master, std::uint64_t index) {
        return Rng(splitmix64(splitmix64(master) ^ splitmix64(index + 0x632be59bd9b4e019ULL)));
    }

    double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
    double normal() { return normal_(engine_); }
    /// Standard complex Gaussian with independent N(0, 1) real and imaginary parts.
    Complex complex_normal() {
        const double re = normal();
        const double im = normal();
        return {re, im};
    }

    static constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

   private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Von Neumann entropy (bits) of a spectrum; 0 log 0 = 0.
inline double spectrum_entropy(std::span<const double> eigenvalues) {
    double h = 0.0;
    for (double v : eigenvalues) {
        if (v > 0.0) h -= v * std::log2(v);
    }
    return h;
}

/// Entropy of a Hermitian, positive semidefinite operator of unit trace.
/// Eigenvalues in the clamping band are zeroed; lower ones raise.
inline double density_entropy(const ComplexMatrix& rho) {
    auto spec = hermitian_eigenvalues(rho);
    if (spec.min() < -kNegativeEigenTol) {
        throw std::invalid_argument("density_entropy: eigenvalue " + std::to_string(spec.min()) + " below -1e-9");
    }
    for (auto& v : spec.values) v = std::max(v, 0.0);
    return spectrum_entropy(spec.values);
}

/// A validated density operator on C^d (x) C^d.
class BipartiteState {
   public:
    /// Validates Hermiticity, unit trace and positivity; throws std::invalid_argument otherwise.
    static BipartiteState from_matrix(ComplexMatrix m, std::size_t local_dim) {
        if (local_dim < 1) throw std::invalid_argument("BipartiteState: local dimension must be >= 1");
        if (!m.is_square() || m.rows() != local_dim * local_dim) {
            throw std::invalid_argument("BipartiteState: expected a " + std::to_string(local_dim * local_dim) +
                                        "-dimensional square matrix");
        }
        if (const double dev = max_hermitian_deviation(m); dev > kHermitianTol) {
            throw std::invalid_argument("BipartiteState: not Hermitian (deviation " + std::to_string(dev) + ")");
        }
        const Complex tr = trace(m);
        if (std::abs(tr.real() - 1.0) > kTraceTol || std::abs(tr.imag()) > kTraceTol) {
            throw std::invalid_argument("BipartiteState: trace " + std::to_string(tr.real()) + " != 1");
        }
        auto spec = hermitian_eigenvalues(m);
        if (spec.min() < -kNegativeEigenTol) {
            throw std::invalid_argument("BipartiteState: negative eigenvalue " + std::to_string(spec.min()));
        }
        for (auto& v : spec.values) v = std::max(v, 0.0);
        return BipartiteState(std::move(m), local_dim, std::move(spec));
    }

    const ComplexMatrix& matrix() const noexcept { return matrix_; }
    std::size_t local_dim() const noexcept { return local_dim_; }
    /// Clamped spectrum of the joint operator, descending.
    const EigenSpectrum& spectrum() const noexcept { return spectrum_; }

    ComplexMatrix reduced(Subsystem keep) const { return partial_trace(matrix_, local_dim_, local_dim_, keep); }

   private:
    BipartiteState(ComplexMatrix m, std::size_t d, EigenSpectrum spec)
        : matrix_(std::move(m)), local_dim_(d), spectrum_(std::move(spec)) {}

    ComplexMatrix matrix_;
    std::size_t local_dim_;
    EigenSpectrum spectrum_;
};

/// |v><v| / <v|v> for an amplitude vector of length d^2.
inline BipartiteState pure_state(std::span<const Complex> vec, std::size_t d) {
    if (vec.size() != d * d) {
        throw std::invalid_argument("pure_state: expected " + std::to_string(d * d) + " amplitudes");
    }
    double norm2 = 0.0;
    for (const auto& z : vec) norm2 += std::norm(z);
    if (norm2 == 0.0) throw std::invalid_argument("pure_state: zero vector");
    auto rho = ComplexMatrix::outer(vec);
    rho *= 1.0 / norm2;
    return BipartiteState::from_matrix(std::move(rho), d);
}

/// Amplitudes of |Psi+> = sum_i |ii> / sqrt(d).
inline std::vector<Complex> maximally_entangled_vector(std::size_t d) {
    std::vector<Complex> v(d * d);
    const double amp = 1.0 / std::sqrt(static_cast<double>(d));
    for (std::size_t i = 0; i < d; ++i) v[i * d + i] = amp;
    return v;
}

inline BipartiteState maximally_entangled(std::size_t d) {
    if (d < 2) throw std::invalid_argument("maximally_entangled: d must be >= 2");
    return pure_state(maximally_entangled_vector(d), d);
}

/// rho_A (x) rho_B; both factors must be d x d density matrices.
inline BipartiteState product_state(const ComplexMatrix& rho_a, const ComplexMatrix& rho_b) {
    if (!rho_a.is_square() || rho_a.rows() != rho_b.rows() || !rho_b.is_square()) {
        throw std::invalid_argument("product_state: factors must be square with equal dimension");
    }
    return BipartiteState::from_matrix(kron(rho_a, rho_b), rho_a.rows());
}

inline BipartiteState maximally_mixed(std::size_t d) {
    auto m = ComplexMatrix::identity(d * d);
    m *= 1.0 / static_cast<double>(d * d);
    return BipartiteState::from_matrix(std::move(m), d);
}

inline bool is_prime(std::size_t n) {
    if (n < 2) return false;
    for (std::size_t k = 2; k * k <= n; ++k) {
        if (n % k == 0) return false;
    }
    return true;
}

inline double isotropic_p_min(std::size_t d) { return -1.0 / static_cast<double>(d * d - 1); }

/// p |Psi+><Psi+| + (1 - p) I / d^2 for prime d and -1/(d^2-1) <= p <= 1.
inline BipartiteState isotropic(std::size_t d, double p) {
    if (!is_prime(d)) throw std::invalid_argument("isotropic: d = " + std::to_string(d) + " is not prime");
    constexpr double slack = 1e-12;
    if (!std::isfinite(p) || p < isotropic_p_min(d) - slack || p > 1.0 + slack) {
        throw std::invalid_argument("isotropic: p = " + std::to_string(p) + " outside [-1/(d^2-1), 1]");
    }
    const auto psi = maximally_entangled_vector(d);
    auto rho = ComplexMatrix::outer(psi);
    rho *= p;
    const double mixed = (1.0 - p) / static_cast<double>(d * d);
    for (std::size_t i = 0; i < d * d; ++i) rho(i, i) += mixed;
    return BipartiteState::from_matrix(std::move(rho), d);
}

/// Haar-random pure state: normalized vector of i.i.d. complex Gaussians.
inline BipartiteState random_pure(std::size_t d, Rng& rng) {
    if (d < 2) throw std::invalid_argument("random_pure: d must be >= 2");
    std::vector<Complex> v(d * d);
    for (auto& z : v) z = rng.complex_normal();
    return pure_state(v, d);
}

/// Ginibre-ensemble mixed state G G^dagger / tr(G G^dagger) with G of shape d^2 x rank.
inline BipartiteState random_mixed(std::size_t d, std::size_t rank, Rng& rng) {
    const std::size_t n = d * d;
    if (d < 2) throw std::invalid_argument("random_mixed: d must be >= 2");
    if (rank < 1 || rank > n) throw std::invalid_argument("random_mixed: rank must be in [1, d^2]");
    ComplexMatrix g(n, rank);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < rank; ++k) g(i, k) = rng.complex_normal();
    }
    ComplexMatrix rho(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            Complex s{};
            for (std::size_t k = 0; k < rank; ++k) s += g(i, k) * std::conj(g(j, k));
            rho(i, j) = s;
            rho(j, i) = std::conj(s);
        }
        rho(i, i) = rho(i, i).real();
    }
    rho *= 1.0 / trace(rho).real();
    return BipartiteState::from_matrix(std::move(rho), d);
}

inline BipartiteState random_mixed(std::size_t d, Rng& rng) { return random_mixed(d, d * d, rng); }

inline double von_neumann_entropy(const BipartiteState& rho) { return spectrum_entropy(rho.spectrum().values); }

inline double subsystem_entropy(const BipartiteState& rho, Subsystem side) {
    return density_entropy(rho.reduced(side));
}

/// H(A|B) = H(AB) - H(B)
inline double conditional_entropy(const BipartiteState& rho) {
    return von_neumann_entropy(rho) - subsystem_entropy(rho, Subsystem::B);
}

/// I(A:B) = H(A) + H(B) - H(AB)
inline double quantum_mutual_information(const BipartiteState& rho) {
    return subsystem_entropy(rho, Subsystem::A) + subsystem_entropy(rho, Subsystem::B) - von_neumann_entropy(rho);
}

inline double purity(const BipartiteState& rho) {
    double s = 0.0;
    for (const auto& z : rho.matrix().entries()) s += std::norm(z);
    return s;
}

/// Positive partial transpose test with eigenvalue floor -1e-9.
inline bool is_ppt(const BipartiteState& rho) {
    const std::size_t d = rho.local_dim();
    return hermitian_eigenvalues(partial_transpose(rho.matrix(), d, d, Subsystem::B)).min() >= -kNegativeEigenTol;
}

/// Exact separability test for two qubits (Peres-Horodecki).
inline bool is_separable_2x2(const BipartiteState& rho) {
    if (rho.local_dim() != 2) {
        throw std::invalid_argument("is_separable_2x2: requires local dimension 2, got " +
                                    std::to_string(rho.local_dim()));
    }
    return is_ppt(rho);
}

inline bool has_maximally_mixed_subsystem(const BipartiteState& rho, double eps = 1e-6) {
    const std::size_t d = rho.local_dim();
    auto mixed = ComplexMatrix::identity(d);
    mixed *= 1.0 / static_cast<double>(d);
    return frobenius_norm(rho.reduced(Subsystem::A) - mixed) <= eps ||
           frobenius_norm(rho.reduced(Subsystem::B) - mixed) <= eps;
}

}  // namespace cqc
