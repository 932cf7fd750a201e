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
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cqc/matcore.hpp"
#include "cqc/states.hpp"

namespace cqc {

inline constexpr double kUnbiasedTol = 1e-10;

/// Orthonormal measurement basis stored as a unitary whose columns are the basis states.
class Basis {
   public:
    static Basis create(ComplexMatrix m, std::string label) {
        if (!m.is_square()) throw std::invalid_argument("Basis: matrix must be square");
        const double err = frobenius_norm(matmul(dagger(m), m) - ComplexMatrix::identity(m.rows()));
        if (!(err < 1e-10)) {
            throw std::invalid_argument("Basis '" + label + "': not unitary (||B^dagger B - I||_F = " +
                                        std::to_string(err) + ")");
        }
        return Basis(std::move(m), std::move(label));
    }

    const ComplexMatrix& matrix() const noexcept { return matrix_; }
    const std::string& label() const noexcept { return label_; }
    std::size_t dim() const noexcept { return matrix_.rows(); }
    std::vector<Complex> state(std::size_t k) const { return matrix_.column(k); }

   private:
    Basis(ComplexMatrix m, std::string label) : matrix_(std::move(m)), label_(std::move(label)) {}

    ComplexMatrix matrix_;
    std::string label_;
};

/// |<a_i|b_j>|^2 for every column pair.
inline std::vector<double> overlap_table(const Basis& a, const Basis& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("overlap_table: basis dimensions differ");
    const auto g = matmul(dagger(a.matrix()), b.matrix());
    std::vector<double> out;
    out.reserve(g.rows() * g.cols());
    for (const auto& z : g.entries()) out.push_back(std::norm(z));
    return out;
}

inline bool is_mutually_unbiased(const Basis& a, const Basis& b, double tol = kUnbiasedTol) {
    if (a.dim() != b.dim()) throw std::invalid_argument("is_mutually_unbiased: basis dimensions differ");
    const double target = 1.0 / static_cast<double>(a.dim());
    for (double v : overlap_table(a, b)) {
        if (std::abs(v - target) > tol) return false;
    }
    return true;
}

/// True when b is a column permutation of a with per-column phases.
inline bool same_basis_up_to_phase_and_order(const Basis& a, const Basis& b, double tol = 1e-10) {
    if (a.dim() != b.dim()) return false;
    const std::size_t d = a.dim();
    const auto ov = overlap_table(a, b);
    std::vector<bool> used(d, false);
    for (std::size_t i = 0; i < d; ++i) {
        std::size_t hits = 0;
        for (std::size_t j = 0; j < d; ++j) {
            const double v = ov[i * d + j];
            if (std::abs(v - 1.0) <= tol) {
                if (used[j]) return false;
                used[j] = true;
                ++hits;
            } else if (v > tol) {
                return false;
            }
        }
        if (hits != 1) return false;
    }
    return true;
}

/// e^{2 pi i k / d}, reducing k mod d first so large exponents stay exact.
inline Complex root_of_unity(std::size_t d, std::size_t k) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(k % d) / static_cast<double>(d);
    return std::polar(1.0, angle);
}

inline Basis computational(std::size_t d) {
    if (d < 1) throw std::invalid_argument("computational: d must be >= 1");
    return Basis::create(ComplexMatrix::identity(d), "Z");
}

/// F = (1/sqrt d) sum_{x,y} e^{2 pi i x y / d} |x><y|
inline Basis fourier(std::size_t d) {
    if (d < 2) throw std::invalid_argument("fourier: d must be >= 2");
    ComplexMatrix f(d, d);
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    for (std::size_t x = 0; x < d; ++x) {
        for (std::size_t y = 0; y < d; ++y) f(x, y) = scale * root_of_unity(d, x * y);
    }
    return Basis::create(std::move(f), "X");
}

/// A complete family of d + 1 pairwise mutually unbiased bases.
class MubSet {
   public:
    /// Validates basis count, dimensions, unitarity and pairwise unbiasedness.
    static MubSet create(std::size_t dim, std::vector<Basis> bases, double tol = kUnbiasedTol) {
        if (bases.size() != dim + 1) {
            throw std::invalid_argument("MubSet: expected " + std::to_string(dim + 1) + " bases, got " +
                                        std::to_string(bases.size()));
        }
        for (const auto& b : bases) {
            if (b.dim() != dim) throw std::invalid_argument("MubSet: basis '" + b.label() + "' has wrong dimension");
        }
        for (std::size_t i = 0; i < bases.size(); ++i) {
            for (std::size_t j = i + 1; j < bases.size(); ++j) {
                if (!is_mutually_unbiased(bases[i], bases[j], tol)) {
                    throw std::invalid_argument("MubSet: bases '" + bases[i].label() + "' and '" +
                                                bases[j].label() + "' are not mutually unbiased");
                }
            }
        }
        return MubSet(dim, std::move(bases));
    }

    std::size_t dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return bases_.size(); }
    const std::vector<Basis>& bases() const noexcept { return bases_; }
    const Basis& operator[](std::size_t i) const { return bases_.at(i); }

    /// Computational basis; always index 0.
    const Basis& z() const { return bases_[0]; }
    /// Fourier basis; always index 1.
    const Basis& x() const { return bases_[1]; }

   private:
    MubSet(std::size_t dim, std::vector<Basis> bases) : dim_(dim), bases_(std::move(bases)) {}

    std::size_t dim_;
    std::vector<Basis> bases_;
};

/// Ordered [identity, F, D F, D^2 F, ..., D^{d-1} F] with D = diag(w^{j^2}) for odd
/// prime d; for d = 2 the third basis is the circular one (1/sqrt2)[[1, 1], [i, -i]].
inline MubSet mub_family(std::size_t d) {
    if (!is_prime(d)) throw std::invalid_argument("mub_family: d = " + std::to_string(d) + " is not prime");
    std::vector<Basis> bases;
    bases.reserve(d + 1);
    bases.push_back(computational(d));
    bases.push_back(fourier(d));
    if (d == 2) {
        const double s = 1.0 / std::sqrt(2.0);
        const Complex i{0.0, 1.0};
        bases.push_back(Basis::create(ComplexMatrix{{s, s}, {s * i, -s * i}}, "Y"));
        return MubSet::create(d, std::move(bases));
    }
    // (D^k F)_{jc} = w^{k j^2 + j c} / sqrt(d), evaluated from the integer exponent.
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    for (std::size_t k = 1; k < d; ++k) {
        ComplexMatrix m(d, d);
        for (std::size_t j = 0; j < d; ++j) {
            for (std::size_t c = 0; c < d; ++c) m(j, c) = scale * root_of_unity(d, (k * j * j + j * c) % d);
        }
        bases.push_back(Basis::create(std::move(m), "D" + std::to_string(k) + "F"));
    }
    return MubSet::create(d, std::move(bases));
}

}  // namespace cqc
