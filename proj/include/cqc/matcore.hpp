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

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cqc {

using Complex = std::complex<double>;

/// Which half of a bipartite system an operation acts on (or keeps).
enum class Subsystem { A, B };

inline constexpr Subsystem other(Subsystem s) noexcept {
    return s == Subsystem::A ? Subsystem::B : Subsystem::A;
}

/// Max |m - m^dagger| entry accepted as Hermitian.
inline constexpr double kHermitianTol = 1e-10;

/// Dense row-major complex matrix. Entries are always finite.
class ComplexMatrix {
   public:
    ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {
        check_dims(rows, cols);
        data_.assign(rows * cols, Complex{0.0, 0.0});
    }

    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
        : rows_(rows), cols_(cols), data_(std::move(entries)) {
        check_dims(rows, cols);
        if (data_.size() != rows * cols) {
            throw std::invalid_argument("ComplexMatrix: entry count " + std::to_string(data_.size()) +
                                        " does not match " + std::to_string(rows) + "x" +
                                        std::to_string(cols));
        }
        for (const auto& z : data_) {
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
                throw std::invalid_argument("ComplexMatrix: non-finite entry");
            }
        }
    }

    /// Row-wise nested initializer, e.g. {{1, 0}, {0, 1}}.
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
        : ComplexMatrix(from_rows(rows)) {}

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    static ComplexMatrix diagonal(std::span<const Complex> diag) {
        ComplexMatrix m(diag.size(), diag.size());
        for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
        return m;
    }

    /// |v><v| for a column vector v.
    static ComplexMatrix outer(std::span<const Complex> v) {
        ComplexMatrix m(v.size(), v.size());
        for (std::size_t i = 0; i < v.size(); ++i) {
            for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = v[i] * std::conj(v[j]);
        }
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const Complex> entries() const noexcept { return data_; }

    std::vector<Complex> column(std::size_t c) const {
        std::vector<Complex> out(rows_);
        for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
        return out;
    }

    ComplexMatrix& operator+=(const ComplexMatrix& o) {
        require_same_shape(o, "operator+=");
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
        return *this;
    }
    ComplexMatrix& operator-=(const ComplexMatrix& o) {
        require_same_shape(o, "operator-=");
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
        return *this;
    }
    ComplexMatrix& operator*=(Complex s) {
        for (auto& z : data_) z *= s;
        return *this;
    }

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
    friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }

    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

   private:
    static void check_dims(std::size_t rows, std::size_t cols) {
        if (rows == 0 || cols == 0) throw std::invalid_argument("ComplexMatrix: dimensions must be >= 1");
        if (rows > std::numeric_limits<std::size_t>::max() / cols) {
            throw std::overflow_error("ComplexMatrix: rows*cols overflows");
        }
    }

    static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
        if (rows.size() == 0) throw std::invalid_argument("ComplexMatrix: empty initializer");
        const std::size_t cols = rows.begin()->size();
        std::vector<Complex> data;
        data.reserve(rows.size() * cols);
        for (const auto& row : rows) {
            if (row.size() != cols) throw std::invalid_argument("ComplexMatrix: ragged initializer");
            data.insert(data.end(), row.begin(), row.end());
        }
        return ComplexMatrix(rows.size(), cols, std::move(data));
    }

    void require_same_shape(const ComplexMatrix& o, const char* what) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) {
            throw std::invalid_argument(std::string("ComplexMatrix::") + what + ": shape mismatch");
        }
    }

    std::size_t rows_;
    std::size_t cols_;
    std::vector<Complex> data_;
};

/// Real eigenvalues of a Hermitian matrix, sorted descending.
struct EigenSpectrum {
    std::vector<double> values;

    std::size_t size() const noexcept { return values.size(); }
    double sum() const noexcept {
        double s = 0.0;
        for (double v : values) s += v;
        return s;
    }
    double min() const { return values.back(); }
    double max() const { return values.front(); }
};

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    constexpr auto kMax = std::numeric_limits<std::size_t>::max();
    if (a.rows() > kMax / b.rows() || a.cols() > kMax / b.cols()) {
        throw std::overflow_error("kron: product dimensions overflow");
    }
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Complex aij = a(i, j);
            if (aij == Complex{}) continue;
            for (std::size_t k = 0; k < b.rows(); ++k) {
                for (std::size_t l = 0; l < b.cols(); ++l) {
                    out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
                }
            }
        }
    }
    return out;
}

/// Kronecker product of two column vectors.
inline std::vector<Complex> kron(std::span<const Complex> a, std::span<const Complex> b) {
    std::vector<Complex> out;
    out.reserve(a.size() * b.size());
    for (const auto& x : a) {
        for (const auto& y : b) out.push_back(x * y);
    }
    return out;
}

inline ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) {
        throw std::invalid_argument("matmul: inner dimensions differ (" + std::to_string(a.cols()) +
                                    " vs " + std::to_string(b.rows()) + ")");
    }
    ComplexMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
        }
    }
    return out;
}

inline ComplexMatrix dagger(const ComplexMatrix& a) {
    ComplexMatrix out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = std::conj(a(i, j));
    }
    return out;
}

inline ComplexMatrix transpose(const ComplexMatrix& a) {
    ComplexMatrix out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
    }
    return out;
}

inline Complex trace(const ComplexMatrix& a) {
    if (!a.is_square()) throw std::invalid_argument("trace: matrix is not square");
    Complex t{};
    for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
    return t;
}

inline double frobenius_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (const auto& z : a.entries()) s += std::norm(z);
    return std::sqrt(s);
}

/// <u|v> with the first argument conjugated.
inline Complex inner(std::span<const Complex> u, std::span<const Complex> v) {
    if (u.size() != v.size()) throw std::invalid_argument("inner: length mismatch");
    Complex s{};
    for (std::size_t i = 0; i < u.size(); ++i) s += std::conj(u[i]) * v[i];
    return s;
}

/// <v| m |v>
inline Complex expectation(const ComplexMatrix& m, std::span<const Complex> v) {
    if (!m.is_square() || m.rows() != v.size()) throw std::invalid_argument("expectation: dimension mismatch");
    Complex s{};
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (v[i] == Complex{}) continue;
        Complex row{};
        for (std::size_t j = 0; j < m.cols(); ++j) row += m(i, j) * v[j];
        s += std::conj(v[i]) * row;
    }
    return s;
}

inline double max_hermitian_deviation(const ComplexMatrix& m) {
    if (!m.is_square()) throw std::invalid_argument("max_hermitian_deviation: matrix is not square");
    double dev = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = i; j < m.cols(); ++j) dev = std::max(dev, std::abs(m(i, j) - std::conj(m(j, i))));
    }
    return dev;
}

inline bool is_hermitian(const ComplexMatrix& m, double tol = kHermitianTol) {
    return m.is_square() && max_hermitian_deviation(m) <= tol;
}

namespace detail {

inline void require_bipartite(const ComplexMatrix& m, std::size_t d_a, std::size_t d_b, const char* what) {
    if (d_a == 0 || d_b == 0) throw std::invalid_argument(std::string(what) + ": subsystem dimensions must be >= 1");
    if (!m.is_square() || m.rows() != d_a * d_b) {
        throw std::invalid_argument(std::string(what) + ": matrix of size " + std::to_string(m.rows()) + "x" +
                                    std::to_string(m.cols()) + " does not factor as " + std::to_string(d_a) +
                                    "*" + std::to_string(d_b));
    }
}

}  // namespace detail

/// Reduced operator on the `keep` side: keep=B traces out A and vice versa.
inline ComplexMatrix partial_trace(const ComplexMatrix& m, std::size_t d_a, std::size_t d_b, Subsystem keep) {
    detail::require_bipartite(m, d_a, d_b, "partial_trace");
    if (keep == Subsystem::A) {
        ComplexMatrix out(d_a, d_a);
        for (std::size_t i = 0; i < d_a; ++i) {
            for (std::size_t j = 0; j < d_a; ++j) {
                Complex s{};
                for (std::size_t k = 0; k < d_b; ++k) s += m(i * d_b + k, j * d_b + k);
                out(i, j) = s;
            }
        }
        return out;
    }
    ComplexMatrix out(d_b, d_b);
    for (std::size_t k = 0; k < d_b; ++k) {
        for (std::size_t l = 0; l < d_b; ++l) {
            Complex s{};
            for (std::size_t i = 0; i < d_a; ++i) s += m(i * d_b + k, i * d_b + l);
            out(k, l) = s;
        }
    }
    return out;
}

/// Transposes the `on` tensor factor, leaving the other untouched.
inline ComplexMatrix partial_transpose(const ComplexMatrix& m, std::size_t d_a, std::size_t d_b, Subsystem on) {
    detail::require_bipartite(m, d_a, d_b, "partial_transpose");
    ComplexMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < d_a; ++i) {
        for (std::size_t k = 0; k < d_b; ++k) {
            for (std::size_t j = 0; j < d_a; ++j) {
                for (std::size_t l = 0; l < d_b; ++l) {
                    const Complex v = m(i * d_b + k, j * d_b + l);
                    if (on == Subsystem::A) {
                        out(j * d_b + k, i * d_b + l) = v;
                    } else {
                        out(i * d_b + l, j * d_b + k) = v;
                    }
                }
            }
        }
    }
    return out;
}

/// Cyclic Jacobi eigenvalue solver for Hermitian matrices.
///
/// Each rotation first removes the phase of the pivot a_pq with a diagonal
/// unitary, then applies the real symmetric Jacobi rotation, so a_pq is
/// annihilated exactly. Sweeps stop once the off-diagonal Frobenius norm falls
/// below `rel_tol * ||m||_F`; after `max_sweeps` sweeps without reaching it the
/// solver throws.
inline EigenSpectrum hermitian_eigenvalues(const ComplexMatrix& m, double rel_tol = 1e-13, int max_sweeps = 100) {
    if (!m.is_square()) throw std::invalid_argument("hermitian_eigenvalues: matrix is not square");
    if (const double dev = max_hermitian_deviation(m); dev > kHermitianTol) {
        throw std::invalid_argument("hermitian_eigenvalues: matrix is not Hermitian (max deviation " +
                                    std::to_string(dev) + ")");
    }
    const std::size_t n = m.rows();
    // Work on the exactly-Hermitian part.
    ComplexMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = m(i, i).real();
        for (std::size_t j = i + 1; j < n; ++j) {
            const Complex v = 0.5 * (m(i, j) + std::conj(m(j, i)));
            a(i, j) = v;
            a(j, i) = std::conj(v);
        }
    }

    const double threshold = rel_tol * frobenius_norm(a);
    auto off_norm = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * std::norm(a(i, j));
        }
        return std::sqrt(s);
    };

    int sweep = 0;
    for (; off_norm() > threshold; ++sweep) {
        if (sweep >= max_sweeps) {
            throw std::runtime_error("hermitian_eigenvalues: no convergence after " + std::to_string(max_sweeps) +
                                     " sweeps");
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag == 0.0) continue;
                const Complex phase = apq / mag;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double theta = (aqq - app) / (2.0 * mag);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                // G = [[c, s], [-s*conj(phase), c*conj(phase)]] in the (p, q) plane; a <- G^dagger a G.
                const Complex gpp = c;
                const Complex gpq = s;
                const Complex gqp = -s * std::conj(phase);
                const Complex gqq = c * std::conj(phase);
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex akp = a(k, p);
                    const Complex akq = a(k, q);
                    a(k, p) = akp * gpp + akq * gqp;
                    a(k, q) = akp * gpq + akq * gqq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex apk = a(p, k);
                    const Complex aqk = a(q, k);
                    a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
                    a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
            }
        }
    }

    EigenSpectrum spec;
    spec.values.reserve(n);
    for (std::size_t i = 0; i < n; ++i) spec.values.push_back(a(i, i).real());
    std::sort(spec.values.begin(), spec.values.end(), std::greater<>());
    return spec;
}

}  // namespace cqc
