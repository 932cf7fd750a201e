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
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cqc/matcore.hpp"
#include "cqc/mubs.hpp"
#include "cqc/states.hpp"

namespace cqc {

/// Round-off band for outcome probabilities.
inline constexpr double kProbClampTol = 1e-12;

/// Shannon entropy in bits, 0 log 0 = 0.
inline double shannon_entropy(std::span<const double> probs) {
    double h = 0.0;
    for (double p : probs) {
        if (p > 0.0) h -= p * std::log2(p);
    }
    return h;
}

/// d x d table p[i][j] = P(A outcome i, B outcome j).
class JointDistribution {
   public:
    /// Clamps round-off negatives to 0; throws on anything outside the tolerance bands.
    static JointDistribution create(std::size_t dim, std::vector<double> probs) {
        if (dim < 1 || probs.size() != dim * dim) {
            throw std::invalid_argument("JointDistribution: expected " + std::to_string(dim * dim) + " cells");
        }
        double total = 0.0;
        for (auto& p : probs) {
            if (!std::isfinite(p) || p < -kProbClampTol || p > 1.0 + kProbClampTol) {
                throw std::invalid_argument("JointDistribution: cell probability " + std::to_string(p) +
                                            " out of range");
            }
            p = std::clamp(p, 0.0, 1.0);
            total += p;
        }
        if (std::abs(total - 1.0) > 1e-9) {
            throw std::invalid_argument("JointDistribution: probabilities sum to " + std::to_string(total));
        }
        return JointDistribution(dim, std::move(probs));
    }

    std::size_t dim() const noexcept { return dim_; }
    double operator()(std::size_t i, std::size_t j) const { return probs_[i * dim_ + j]; }
    std::span<const double> cells() const noexcept { return probs_; }

    std::vector<double> marginal(Subsystem side) const {
        std::vector<double> m(dim_, 0.0);
        for (std::size_t i = 0; i < dim_; ++i) {
            for (std::size_t j = 0; j < dim_; ++j) m[side == Subsystem::A ? i : j] += probs_[i * dim_ + j];
        }
        return m;
    }

   private:
    JointDistribution(std::size_t dim, std::vector<double> probs) : dim_(dim), probs_(std::move(probs)) {}

    std::size_t dim_;
    std::vector<double> probs_;
};

inline double shannon_entropy(const JointDistribution& joint) { return shannon_entropy(joint.cells()); }

/// H(row marginal) + H(column marginal) - H(joint)
inline double classical_mi(const JointDistribution& joint) {
    return shannon_entropy(joint.marginal(Subsystem::A)) + shannon_entropy(joint.marginal(Subsystem::B)) -
           shannon_entropy(joint);
}

/// Outcome table for measuring A in `basis_a` and B in `basis_b`.
inline JointDistribution joint_distribution(const BipartiteState& rho, const Basis& basis_a, const Basis& basis_b) {
    const std::size_t d = rho.local_dim();
    if (basis_a.dim() != d || basis_b.dim() != d) {
        throw std::invalid_argument("joint_distribution: basis dimension does not match state");
    }
    std::vector<double> probs(d * d);
    for (std::size_t i = 0; i < d; ++i) {
        const auto a = basis_a.state(i);
        for (std::size_t j = 0; j < d; ++j) {
            const auto b = basis_b.state(j);
            const Complex v = expectation(rho.matrix(), kron(std::span<const Complex>(a), std::span<const Complex>(b)));
            if (std::abs(v.imag()) > 1e-10) {
                throw std::runtime_error("joint_distribution: probability has imaginary residue " +
                                         std::to_string(v.imag()));
            }
            probs[i * d + j] = v.real();
        }
    }
    return JointDistribution::create(d, std::move(probs));
}

/// Classical-quantum state left after measuring one side projectively.
struct CqEnsemble {
    struct Branch {
        double probability;
        /// Post-measurement state of the unmeasured side; zero when probability <= 1e-12.
        ComplexMatrix conditional;
    };

    std::size_t dim;
    Subsystem measured;
    std::vector<Branch> branches;

    std::vector<double> probabilities() const {
        std::vector<double> p;
        p.reserve(branches.size());
        for (const auto& b : branches) p.push_back(b.probability);
        return p;
    }
};

inline CqEnsemble measure_one_side(const BipartiteState& rho, const Basis& basis, Subsystem side) {
    const std::size_t d = rho.local_dim();
    if (basis.dim() != d) throw std::invalid_argument("measure_one_side: basis dimension does not match state");
    const auto& m = rho.matrix();
    CqEnsemble out{d, side, {}};
    out.branches.reserve(d);
    double total = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
        const auto v = basis.state(k);
        // (<v| (x) I) rho (|v> (x) I), or the mirrored contraction when measuring B.
        ComplexMatrix cond(d, d);
        for (std::size_t r = 0; r < d; ++r) {
            for (std::size_t c = 0; c < d; ++c) {
                Complex s{};
                for (std::size_t i = 0; i < d; ++i) {
                    if (v[i] == Complex{}) continue;
                    for (std::size_t j = 0; j < d; ++j) {
                        if (v[j] == Complex{}) continue;
                        const Complex e = side == Subsystem::A ? m(i * d + r, j * d + c) : m(r * d + i, c * d + j);
                        s += std::conj(v[i]) * e * v[j];
                    }
                }
                cond(r, c) = s;
            }
        }
        double p = trace(cond).real();
        if (p < -kProbClampTol) {
            throw std::runtime_error("measure_one_side: negative branch probability " + std::to_string(p));
        }
        if (p <= kProbClampTol) {
            p = std::max(p, 0.0);
            out.branches.push_back({p, ComplexMatrix(d, d)});
        } else {
            cond *= 1.0 / p;
            out.branches.push_back({p, std::move(cond)});
        }
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw std::runtime_error("measure_one_side: branch probabilities sum to " + std::to_string(total));
    }
    return out;
}

/// Holevo-type quantity of a cq ensemble: H(sum_k p_k rho_k) - sum_k p_k H(rho_k).
inline double ensemble_mi(const CqEnsemble& ens, const ComplexMatrix& unmeasured_marginal) {
    double avg = 0.0;
    for (const auto& br : ens.branches) {
        if (br.probability <= kProbClampTol) continue;
        // Normalizing by a small p_k magnifies round-off; the weighted error p_k * dH stays tiny.
        auto spec = hermitian_eigenvalues(br.conditional);
        if (spec.min() < -kNegativeEigenTol / br.probability) {
            throw std::runtime_error("ensemble_mi: conditional state has eigenvalue " + std::to_string(spec.min()));
        }
        for (auto& v : spec.values) v = std::max(v, 0.0);
        avg += br.probability * spectrum_entropy(spec.values);
    }
    return density_entropy(unmeasured_marginal) - avg;
}

/// I(M^side : other side) after measuring `side` in `basis`.
inline double one_sided_mi(const BipartiteState& rho, const Basis& basis, Subsystem side) {
    return ensemble_mi(measure_one_side(rho, basis, side), rho.reduced(other(side)));
}

}  // namespace cqc
