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

// Conjecture engine: gaps for the two-basis (CQC) and all-basis (ECQC)
// mutual-information conjectures, their sufficient conditions, the kappa
// residuals, and the proven entropic uncertainty bounds used as internal
// oracles.
//
// Everything is evaluated from a StateProfile, which holds every entropy of a
// state and its measured versions once, so a single Monte-Carlo trial only
// pays for the eigenproblems once.

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cqc/measure.hpp"
#include "cqc/mubs.hpp"
#include "cqc/states.hpp"

namespace cqc {

/// Gap at or above -kHoldTol counts as "holds".
inline constexpr double kHoldTol = 1e-9;
/// Gaps in (-kWarnTol, -kHoldTol) are flagged as round-off warnings.
inline constexpr double kWarnTol = 1e-6;

enum class Verdict { Hold, Warn, Violation };

inline constexpr std::string_view to_string(Verdict v) noexcept {
    switch (v) {
        case Verdict::Hold: return "HOLD";
        case Verdict::Warn: return "WARN";
        case Verdict::Violation: return "VIOLATION";
    }
    return "?";
}

inline Verdict classify(double gap, double hold_tol = kHoldTol, double warn_tol = kWarnTol) {
    if (gap >= -hold_tol) return Verdict::Hold;
    if (gap > -warn_tol) return Verdict::Warn;
    return Verdict::Violation;
}

/// Which constant to use in the (d+1)-basis Maassen-Uffink generalization.
enum class SanchezConstant {
    LogDPlusOne,  ///< (d+1)(log2(d+1) - 1)
    LogD,         ///< (d+1)(log2 d - 1)
};

inline double sanchez_bound(std::size_t d, SanchezConstant c = SanchezConstant::LogDPlusOne) {
    const double dd = static_cast<double>(d);
    return (dd + 1.0) * ((c == SanchezConstant::LogDPlusOne ? std::log2(dd + 1.0) : std::log2(dd)) - 1.0);
}

/// Entropic quantities for one basis applied to a state.
struct BasisProfile {
    double h_a = 0;             ///< H(M^A)
    double h_b = 0;             ///< H(M^B)
    double h_joint = 0;         ///< H(M^A M^B)
    double mi_two_sided = 0;    ///< I(M^A : M^B)
    double mi_one_sided = 0;    ///< I(M^A : B)
    double h_a_given_b = 0;     ///< H(M^A | B), quantum side information
    double h_a_given_mb = 0;    ///< H(M^A | M^B)
};

/// Every entropy needed by the reports, computed once per state.
struct StateProfile {
    std::size_t dim = 0;
    double h_ab = 0;
    double h_a = 0;
    double h_b = 0;
    double i_ab = 0;
    double h_a_given_b = 0;
    std::vector<BasisProfile> bases;
};

inline StateProfile measurement_profile(const BipartiteState& rho, std::span<const Basis> bases) {
    StateProfile prof;
    prof.dim = rho.local_dim();
    const auto rho_b = rho.reduced(Subsystem::B);
    prof.h_ab = von_neumann_entropy(rho);
    prof.h_a = density_entropy(rho.reduced(Subsystem::A));
    prof.h_b = density_entropy(rho_b);
    prof.i_ab = prof.h_a + prof.h_b - prof.h_ab;
    prof.h_a_given_b = prof.h_ab - prof.h_b;
    prof.bases.reserve(bases.size());
    for (const auto& basis : bases) {
        BasisProfile bp;
        const auto joint = joint_distribution(rho, basis, basis);
        bp.h_a = shannon_entropy(joint.marginal(Subsystem::A));
        bp.h_b = shannon_entropy(joint.marginal(Subsystem::B));
        bp.h_joint = shannon_entropy(joint);
        bp.mi_two_sided = bp.h_a + bp.h_b - bp.h_joint;
        bp.h_a_given_mb = bp.h_joint - bp.h_b;
        bp.mi_one_sided = ensemble_mi(measure_one_side(rho, basis, Subsystem::A), rho_b);
        bp.h_a_given_b = bp.h_a - bp.mi_one_sided;
        prof.bases.push_back(bp);
    }
    return prof;
}

inline StateProfile measurement_profile(const BipartiteState& rho, const MubSet& mubs) {
    return measurement_profile(rho, std::span<const Basis>(mubs.bases()));
}

namespace detail {

inline void require_dims(const BipartiteState& rho, const Basis& z, const Basis& x, const char* what) {
    if (z.dim() != rho.local_dim() || x.dim() != rho.local_dim()) {
        throw std::invalid_argument(std::string(what) + ": basis dimension does not match state");
    }
}

inline void require_family(const BipartiteState& rho, const MubSet& mubs, const char* what) {
    if (mubs.dim() != rho.local_dim()) {
        throw std::invalid_argument(std::string(what) + ": MUB family dimension " + std::to_string(mubs.dim()) +
                                    " does not match state dimension " + std::to_string(rho.local_dim()));
    }
    if (!is_prime(mubs.dim())) throw std::invalid_argument(std::string(what) + ": dimension must be prime");
}

inline StateProfile pair_profile(const BipartiteState& rho, const Basis& z, const Basis& x) {
    const Basis pair[] = {z, x};
    return measurement_profile(rho, std::span<const Basis>(pair));
}

}  // namespace detail

/// Smallest sum over all size-(n-1) subsets, by explicit enumeration.
inline double min_subset_sum(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n < 2) throw std::invalid_argument("min_subset_sum: need at least two values");
    std::vector<bool> pick(n, true);
    pick[n - 1] = false;
    std::sort(pick.begin(), pick.end());
    double best = std::numeric_limits<double>::infinity();
    do {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (pick[i]) s += values[i];
        }
        best = std::min(best, s);
    } while (std::next_permutation(pick.begin(), pick.end()));
    return best;
}

/// Per-state record of the CQC / ECQC quantities.
struct ConjectureReport {
    std::size_t dim = 0;
    double i_ab = 0;
    std::vector<double> per_basis_mi;
    double mi_sum_all = 0;
    double mi_max = 0;
    double ecqc_rhs = 0;  ///< sum of all per-basis MIs minus the largest
    double cqc_gap = 0;   ///< I(A:B) - I(Z:Z) - I(X:X) with Z, X = family members 0, 1
    double ecqc_gap = 0;  ///< I(A:B) - ecqc_rhs
    double kappa1 = 0;
    double kappa2 = 0;
    double suff_cqc_lhs = 0;
    double suff_cqc_rhs = 0;
    double suff_ecqc_lhs = 0;
    double suff_ecqc_rhs = 0;

    struct Flags {
        bool cqc = false;
        bool ecqc = false;
        bool suff_cqc = false;
        bool suff_ecqc = false;
    } holds;
};

inline double kappa1_from(const StateProfile& prof, std::size_t z = 0, std::size_t x = 1) {
    return prof.bases.at(z).h_a + prof.bases.at(x).h_a - std::log2(static_cast<double>(prof.dim)) - prof.h_a;
}

inline double kappa2_from(const StateProfile& prof) {
    const double d = static_cast<double>(prof.dim);
    const double half = (d + 1.0) / 2.0;
    double sum_h = 0.0;
    double mi_max = -std::numeric_limits<double>::infinity();
    for (const auto& b : prof.bases) {
        sum_h += b.h_a;
        mi_max = std::max(mi_max, b.mi_two_sided);
    }
    return -half * std::log2(d) - half * prof.h_a_given_b + sum_h - prof.i_ab - mi_max;
}

inline ConjectureReport conjecture_report(const StateProfile& prof) {
    if (prof.bases.size() != prof.dim + 1) {
        throw std::invalid_argument("conjecture_report: profile must cover a complete MUB family");
    }
    ConjectureReport r;
    r.dim = prof.dim;
    r.i_ab = prof.i_ab;
    const double log_d = std::log2(static_cast<double>(prof.dim));
    const double half = (static_cast<double>(prof.dim) + 1.0) / 2.0;

    double sum_one_sided = 0.0;
    double sum_h = 0.0;
    for (const auto& b : prof.bases) {
        r.per_basis_mi.push_back(b.mi_two_sided);
        sum_one_sided += b.mi_one_sided;
        sum_h += b.h_a;
    }
    r.mi_sum_all = std::accumulate(r.per_basis_mi.begin(), r.per_basis_mi.end(), 0.0);
    r.mi_max = *std::max_element(r.per_basis_mi.begin(), r.per_basis_mi.end());
    r.ecqc_rhs = r.mi_sum_all - r.mi_max;
    r.ecqc_gap = r.i_ab - r.ecqc_rhs;
    r.cqc_gap = r.i_ab - r.per_basis_mi[0] - r.per_basis_mi[1];
    r.kappa1 = kappa1_from(prof);
    r.kappa2 = kappa2_from(prof);

    const auto& z = prof.bases[0];
    const auto& x = prof.bases[1];
    r.suff_cqc_lhs = (z.mi_one_sided - z.mi_two_sided) + (x.mi_one_sided - x.mi_two_sided);
    r.suff_cqc_rhs = log_d - prof.h_a;
    r.suff_ecqc_lhs = sum_one_sided - r.mi_sum_all;
    r.suff_ecqc_rhs = sum_h - half * log_d - half * prof.h_a_given_b - prof.i_ab;

    r.holds.cqc = r.cqc_gap >= -kHoldTol;
    r.holds.ecqc = r.ecqc_gap >= -kHoldTol;
    r.holds.suff_cqc = r.suff_cqc_lhs >= r.suff_cqc_rhs - kHoldTol;
    r.holds.suff_ecqc = r.suff_ecqc_lhs >= r.suff_ecqc_rhs - kHoldTol;
    return r;
}

/// I(A:B) - I(Z^A:Z^B) - I(X^A:X^B)
inline double cqc_gap(const BipartiteState& rho, const Basis& z, const Basis& x) {
    detail::require_dims(rho, z, x, "cqc_gap");
    const auto prof = detail::pair_profile(rho, z, x);
    return prof.i_ab - prof.bases[0].mi_two_sided - prof.bases[1].mi_two_sided;
}

/// Full ECQC evaluation over a complete family of d + 1 MUBs.
inline ConjectureReport ecqc_gap(const BipartiteState& rho, const MubSet& mubs) {
    detail::require_family(rho, mubs, "ecqc_gap");
    return conjecture_report(measurement_profile(rho, mubs));
}

struct SufficientCqc {
    double lhs = 0;
    double rhs = 0;
    bool satisfied = false;
    double cqc_gap = 0;
    /// False only if the condition is satisfied yet the CQC gap is negative.
    bool implication_holds = true;
};

inline SufficientCqc sufficient_cqc(const BipartiteState& rho, const Basis& z, const Basis& x) {
    detail::require_dims(rho, z, x, "sufficient_cqc");
    const auto prof = detail::pair_profile(rho, z, x);
    const auto& bz = prof.bases[0];
    const auto& bx = prof.bases[1];
    SufficientCqc s;
    s.lhs = (bz.mi_one_sided - bz.mi_two_sided) + (bx.mi_one_sided - bx.mi_two_sided);
    s.rhs = std::log2(static_cast<double>(prof.dim)) - prof.h_a;
    s.satisfied = s.lhs >= s.rhs - kHoldTol;
    s.cqc_gap = prof.i_ab - bz.mi_two_sided - bx.mi_two_sided;
    s.implication_holds = !s.satisfied || s.cqc_gap >= -kHoldTol;
    return s;
}

struct SufficientEcqc {
    double lhs = 0;
    double rhs = 0;
    bool satisfied = false;
};

inline SufficientEcqc sufficient_ecqc(const BipartiteState& rho, const MubSet& mubs) {
    detail::require_family(rho, mubs, "sufficient_ecqc");
    const auto r = conjecture_report(measurement_profile(rho, mubs));
    return {r.suff_ecqc_lhs, r.suff_ecqc_rhs, r.holds.suff_ecqc};
}

/// H(Z^A) + H(X^A) - log d - H(A)
inline double kappa1(const BipartiteState& rho, const Basis& z, const Basis& x) {
    detail::require_dims(rho, z, x, "kappa1");
    return kappa1_from(detail::pair_profile(rho, z, x));
}

inline double kappa2(const BipartiteState& rho, const MubSet& mubs) {
    detail::require_family(rho, mubs, "kappa2");
    return kappa2_from(measurement_profile(rho, mubs));
}

/// Slacks (LHS - RHS, in bits) of the proven uncertainty relations. All five are
/// theorems and must be >= -1e-9; xie_optimized_slack and delta_m are informational.
struct BoundsReport {
    double maassen_uffink_slack = 0;
    double berta_slack = 0;
    double sanchez_slack = 0;
    double coles_piani_slack = 0;
    double xie_slack = 0;
    double xie_optimized_slack = 0;
    double delta_m = 0;

    double min_proven_slack() const {
        return std::min({maassen_uffink_slack, berta_slack, sanchez_slack, coles_piani_slack, xie_slack});
    }
};

inline BoundsReport bound_ladder(const StateProfile& prof, SanchezConstant c = SanchezConstant::LogDPlusOne) {
    if (prof.bases.size() != prof.dim + 1) {
        throw std::invalid_argument("bound_ladder: profile must cover a complete MUB family");
    }
    const double d = static_cast<double>(prof.dim);
    const double log_d = std::log2(d);
    const double half = (d + 1.0) / 2.0;
    const auto& z = prof.bases[0];
    const auto& x = prof.bases[1];

    double sum_h = 0.0;
    double sum_h_given_b = 0.0;
    double sum_one_sided = 0.0;
    for (const auto& b : prof.bases) {
        sum_h += b.h_a;
        sum_h_given_b += b.h_a_given_b;
        sum_one_sided += b.mi_one_sided;
    }

    BoundsReport r;
    r.maassen_uffink_slack = z.h_a + x.h_a - log_d - prof.h_a;
    r.berta_slack = z.h_a_given_b + x.h_a_given_b - log_d - prof.h_a_given_b;
    r.sanchez_slack = sum_h - sanchez_bound(prof.dim, c);
    r.coles_piani_slack = log_d - prof.h_a_given_b - z.mi_one_sided - x.mi_one_sided;
    r.xie_slack = sum_h_given_b - half * (log_d + prof.h_a_given_b);
    r.delta_m = half * prof.i_ab - sum_one_sided;
    r.xie_optimized_slack = r.xie_slack - std::max(0.0, r.delta_m);
    return r;
}

inline BoundsReport bound_ladder(const BipartiteState& rho, const MubSet& mubs,
                                 SanchezConstant c = SanchezConstant::LogDPlusOne) {
    detail::require_family(rho, mubs, "bound_ladder");
    return bound_ladder(measurement_profile(rho, mubs), c);
}

/// min{r(X,Z), r(Z,X)} with r(X,Z) = log2(d * sum_j max_k |<x_j|z_k>|^2).
inline double coles_piani_r(const Basis& a, const Basis& b) {
    const std::size_t d = a.dim();
    const auto ov = overlap_table(a, b);
    double rows = 0.0;
    double cols = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
        double row_max = 0.0;
        double col_max = 0.0;
        for (std::size_t k = 0; k < d; ++k) {
            row_max = std::max(row_max, ov[j * d + k]);
            col_max = std::max(col_max, ov[k * d + j]);
        }
        rows += row_max;
        cols += col_max;
    }
    const double dd = static_cast<double>(d);
    return std::min(std::log2(dd * rows), std::log2(dd * cols));
}

/// Fires when I(Z:Z) + I(X:X) > min(H(A), H(B)); under CQC that forces H(A|B) < 0.
inline bool entanglement_witness(const StateProfile& prof, std::size_t z = 0, std::size_t x = 1) {
    return prof.bases.at(z).mi_two_sided + prof.bases.at(x).mi_two_sided >
           std::min(prof.h_a, prof.h_b) + kHoldTol;
}

inline bool entanglement_witness(const BipartiteState& rho, const Basis& z, const Basis& x) {
    detail::require_dims(rho, z, x, "entanglement_witness");
    return entanglement_witness(detail::pair_profile(rho, z, x));
}

/// Slack of H(Z^A Z^B) + H(X^A X^B) >= 2 + H(AB) for qubit pairs (holds if CQC does).
inline double appcqc1_check(const BipartiteState& rho, const Basis& z, const Basis& x) {
    if (rho.local_dim() != 2) throw std::invalid_argument("appcqc1_check: requires local dimension 2");
    detail::require_dims(rho, z, x, "appcqc1_check");
    const auto prof = detail::pair_profile(rho, z, x);
    return prof.bases[0].h_joint + prof.bases[1].h_joint - 2.0 - prof.h_ab;
}

/// Slack of sum_i H(M_i^A M_i^B) >= 2 S - I(A:B) - I_max, S the Sanchez constant.
inline double appecqc_check(const StateProfile& prof, SanchezConstant c = SanchezConstant::LogDPlusOne) {
    double sum_joint = 0.0;
    double mi_max = -std::numeric_limits<double>::infinity();
    for (const auto& b : prof.bases) {
        sum_joint += b.h_joint;
        mi_max = std::max(mi_max, b.mi_two_sided);
    }
    return sum_joint - (2.0 * sanchez_bound(prof.dim, c) - prof.i_ab - mi_max);
}

inline double appecqc_check(const BipartiteState& rho, const MubSet& mubs,
                            SanchezConstant c = SanchezConstant::LogDPlusOne) {
    detail::require_family(rho, mubs, "appecqc_check");
    return appecqc_check(measurement_profile(rho, mubs), c);
}

}  // namespace cqc
