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

// Test-side reference implementations. These deliberately avoid the library's
// own eigensolver and measurement code: spectra come from Eigen, and measured
// quantities are built from explicit projectors and dense Kronecker products.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "cqc/matcore.hpp"
#include "cqc/mubs.hpp"

namespace oracle {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;

inline Mat to_eigen(const cqc::ComplexMatrix& m) {
    Mat out(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m(r, c);
    }
    return out;
}

inline cqc::ComplexMatrix from_eigen(const Mat& m) {
    cqc::ComplexMatrix out(m.rows(), m.cols());
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) out(r, c) = m(r, c);
    }
    return out;
}

/// Ascending eigenvalues from Eigen's Householder + QR solver.
inline std::vector<double> eigenvalues(const Mat& m) {
    Eigen::SelfAdjointEigenSolver<Mat> es(m, Eigen::EigenvaluesOnly);
    std::vector<double> v(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    return v;
}

inline double entropy(const Mat& rho) {
    double h = 0;
    for (double l : eigenvalues(rho)) {
        if (l > 1e-15) h -= l * std::log2(l);
    }
    return h;
}

inline double shannon(const std::vector<double>& p) {
    double h = 0;
    for (double x : p) {
        if (x > 0) h -= x * std::log2(x);
    }
    return h;
}

/// Partial trace by explicit index sums; keep_a selects the surviving factor.
inline Mat ptrace(const Mat& rho, int d, bool keep_a) {
    Mat out = Mat::Zero(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            for (int k = 0; k < d; ++k) {
                out(i, j) += keep_a ? rho(i * d + k, j * d + k) : rho(k * d + i, k * d + j);
            }
        }
    }
    return out;
}

inline Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
    return out;
}

inline double mutual_information(const Mat& rho, int d) {
    return entropy(ptrace(rho, d, true)) + entropy(ptrace(rho, d, false)) - entropy(rho);
}

/// I(M^A : M^B) from Tr[(P_i (x) P_j) rho] with P_k = |b_k><b_k|.
inline double two_sided_mi(const Mat& rho, const Mat& basis, int d) {
    std::vector<double> joint(d * d), pa(d, 0.0), pb(d, 0.0);
    for (int i = 0; i < d; ++i) {
        const Mat pi = basis.col(i) * basis.col(i).adjoint();
        for (int j = 0; j < d; ++j) {
            const Mat pj = basis.col(j) * basis.col(j).adjoint();
            const double p = (kron(pi, pj) * rho).trace().real();
            joint[i * d + j] = std::max(p, 0.0);
            pa[i] += joint[i * d + j];
            pb[j] += joint[i * d + j];
        }
    }
    return shannon(pa) + shannon(pb) - shannon(joint);
}

/// I(M^A : B) as the quantum MI of sum_k |k><k| (x) Tr_A[(P_k (x) I) rho].
inline double one_sided_mi(const Mat& rho, const Mat& basis, int d) {
    Mat cq = Mat::Zero(d * d, d * d);
    const Mat id = Mat::Identity(d, d);
    for (int k = 0; k < d; ++k) {
        const Mat pk = basis.col(k) * basis.col(k).adjoint();
        const Mat proj = kron(pk, id);
        const Mat sub = ptrace(proj * rho * proj, d, false);
        Mat ek = Mat::Zero(d, d);
        ek(k, k) = 1.0;
        cq += kron(ek, sub);
    }
    return mutual_information(cq, d);
}

/// Closed-form spectrum of a 2x2 Hermitian matrix, descending.
inline std::array<double, 2> eig2(double a, double c, cd b) {
    const double mean = (a + c) / 2;
    const double rad = std::sqrt((a - c) * (a - c) / 4 + std::norm(b));
    return {mean + rad, mean - rad};
}

inline cd omega(int d, int k) {
    return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(((k % d) + d) % d) / d);
}

/// Matrix with entries w^{e[r][c]} / sqrt(d); exponent -1 encodes a zero entry.
inline Mat from_exponents(const std::vector<std::vector<int>>& e, bool scaled) {
    const int d = static_cast<int>(e.size());
    Mat m = Mat::Zero(d, d);
    const double s = scaled ? 1.0 / std::sqrt(static_cast<double>(d)) : 1.0;
    for (int r = 0; r < d; ++r) {
        for (int c = 0; c < d; ++c) {
            if (e[r][c] >= 0) m(r, c) = s * omega(d, e[r][c]);
        }
    }
    return m;
}

/// The four reference d = 3 bases, in their tabulated order.
inline std::vector<Mat> reference_d3() {
    return {
        Mat::Identity(3, 3),
        from_exponents({{0, 0, 0}, {0, 1, 2}, {0, 2, 1}}, true),
        from_exponents({{0, 0, 0}, {2, 0, 1}, {2, 1, 0}}, true),
        from_exponents({{0, 0, 0}, {1, 2, 0}, {1, 0, 2}}, true),
    };
}

/// The six reference d = 5 bases: Fourier, identity, then D^k times Fourier for k = 1..4.
inline std::vector<Mat> reference_d5() {
    return {
        from_exponents({{0, 0, 0, 0, 0}, {0, 1, 2, 3, 4}, {0, 2, 4, 1, 3}, {0, 3, 1, 4, 2}, {0, 4, 3, 2, 1}}, true),
        Mat::Identity(5, 5),
        from_exponents({{0, 0, 0, 0, 0}, {1, 2, 3, 4, 0}, {4, 1, 3, 0, 2}, {4, 2, 0, 3, 1}, {1, 0, 4, 3, 2}}, true),
        from_exponents({{0, 0, 0, 0, 0}, {2, 3, 4, 0, 1}, {3, 0, 2, 4, 1}, {3, 1, 4, 2, 0}, {2, 1, 0, 4, 3}}, true),
        from_exponents({{0, 0, 0, 0, 0}, {3, 4, 0, 1, 2}, {2, 4, 1, 3, 0}, {2, 0, 3, 1, 4}, {3, 2, 1, 0, 4}}, true),
        from_exponents({{0, 0, 0, 0, 0}, {4, 0, 1, 2, 3}, {1, 3, 0, 2, 4}, {1, 4, 2, 0, 3}, {4, 3, 2, 1, 0}}, true),
    };
}

/// True if some column permutation with per-column phases maps a onto b.
inline bool equal_up_to_phase_and_order(const Mat& a, const Mat& b, double tol = 1e-10) {
    if (a.rows() != b.rows()) return false;
    std::vector<bool> used(b.cols(), false);
    for (Eigen::Index i = 0; i < a.cols(); ++i) {
        bool found = false;
        for (Eigen::Index j = 0; j < b.cols() && !found; ++j) {
            if (used[j]) continue;
            // Align the phase on the largest entry, then compare entrywise.
            Eigen::Index k;
            a.col(i).cwiseAbs().maxCoeff(&k);
            if (std::abs(b(k, j)) < 1e-12) continue;
            const cd phase = a(k, i) / b(k, j);
            if (std::abs(std::abs(phase) - 1.0) > tol) continue;
            if ((a.col(i) - phase * b.col(j)).cwiseAbs().maxCoeff() < tol) {
                used[j] = true;
                found = true;
            }
        }
        if (!found) return false;
    }
    return true;
}

/// Small deterministic generator for property tests (xorshift64*).
class Gen {
   public:
    explicit Gen(std::uint64_t seed) : s_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}
    std::uint64_t next() {
        s_ ^= s_ >> 12;
        s_ ^= s_ << 25;
        s_ ^= s_ >> 27;
        return s_ * 0x2545f4914f6cdd1dULL;
    }
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Random density matrix of size n: G G^dagger / Tr with uniform entries in [-1, 1].
    Mat density(int n) {
        Mat g(n, n);
        for (int r = 0; r < n; ++r) {
            for (int c = 0; c < n; ++c) g(r, c) = cd(uniform(-1, 1), uniform(-1, 1));
        }
        Mat rho = g * g.adjoint();
        return rho / rho.trace().real();
    }

    Mat hermitian(int n) {
        Mat g(n, n);
        for (int r = 0; r < n; ++r) {
            for (int c = 0; c < n; ++c) g(r, c) = cd(uniform(-1, 1), uniform(-1, 1));
        }
        return (g + g.adjoint()) / 2.0;
    }

   private:
    std::uint64_t s_;
};

}  // namespace oracle
