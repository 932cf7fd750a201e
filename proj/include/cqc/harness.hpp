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

// Experiment harness behind the `cqc` command-line tool.
//
// A run is a list of independent trials. Trial i draws its randomness from
// Rng::for_trial(seed, i), so results do not depend on how trials are spread
// over threads, and records are always emitted in trial order.

#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <limits>
#include <mutex>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <json.hpp>

#include "cqc/analytic.hpp"
#include "cqc/conjectures.hpp"
#include "cqc/measure.hpp"
#include "cqc/mubs.hpp"
#include "cqc/states.hpp"

namespace cqc {

/// Largest local dimension the harness accepts; fixes the mi_* column count.
inline constexpr std::size_t kMaxHarnessDim = 23;
inline constexpr std::size_t kMiColumns = kMaxHarnessDim + 1;

enum class Command { CheckCqc, CheckEcqc, SweepIsotropic, SuffcondScatter, DumpMubs, BoundAudit };
enum class StateKind { Pure, Mixed, Isotropic, SeparableFiltered };
enum class OutputFormat { Csv, Jsonl };

inline constexpr std::string_view to_string(Command c) noexcept {
    switch (c) {
        case Command::CheckCqc: return "check-cqc";
        case Command::CheckEcqc: return "check-ecqc";
        case Command::SweepIsotropic: return "sweep-isotropic";
        case Command::SuffcondScatter: return "suffcond-scatter";
        case Command::DumpMubs: return "dump-mubs";
        case Command::BoundAudit: return "bound-audit";
    }
    return "?";
}

inline constexpr std::string_view to_string(StateKind k) noexcept {
    switch (k) {
        case StateKind::Pure: return "pure";
        case StateKind::Mixed: return "mixed";
        case StateKind::Isotropic: return "isotropic";
        case StateKind::SeparableFiltered: return "separable-filtered";
    }
    return "?";
}

/// Bad flags or parameters; maps to exit code 2.
class ConfigError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

struct ExperimentConfig {
    Command command = Command::CheckEcqc;
    std::size_t dim = 3;
    /// 0 selects the desk-scale default for the command and dimension.
    std::size_t n_trials = 0;
    std::optional<StateKind> state_kind;
    std::optional<double> p_min;
    std::optional<double> p_max;
    std::size_t p_steps = 200;
    std::optional<std::uint64_t> seed;
    unsigned threads = 0;
    std::string out_path;
    OutputFormat format = OutputFormat::Csv;
    double hold_tol = kHoldTol;
    double warn_tol = kWarnTol;
    bool full = false;
    SanchezConstant sanchez = SanchezConstant::LogDPlusOne;
    /// sweep-isotropic: evaluate states numerically instead of via closed forms.
    bool numeric = false;
    /// Allows numeric sweeps above d = 5 (up to 7).
    bool large_numeric = false;
    bool plot = false;
};

inline std::size_t default_trials(const ExperimentConfig& c) {
    if (c.command == Command::SuffcondScatter) return c.full ? 1000 : 200;
    if (c.command == Command::BoundAudit) return c.full ? 10000 : 1000;
    if (c.dim <= 3) return c.full ? 100000 : 10000;
    return c.full ? 10000 : 1000;
}

inline StateKind effective_state_kind(const ExperimentConfig& c) {
    if (c.state_kind) return *c.state_kind;
    switch (c.command) {
        case Command::SweepIsotropic: return StateKind::Isotropic;
        case Command::SuffcondScatter: return StateKind::SeparableFiltered;
        default: return StateKind::Mixed;
    }
}

inline std::size_t effective_trials(const ExperimentConfig& c) {
    return c.n_trials > 0 ? c.n_trials : default_trials(c);
}

inline double effective_p_min(const ExperimentConfig& c) { return c.p_min.value_or(isotropic_p_min(c.dim)); }
inline double effective_p_max(const ExperimentConfig& c) { return c.p_max.value_or(1.0); }

inline void validate(const ExperimentConfig& c) {
    if (!is_prime(c.dim)) throw ConfigError("--dim " + std::to_string(c.dim) + " is not prime");
    if (c.dim > kMaxHarnessDim) throw ConfigError("--dim must be <= " + std::to_string(kMaxHarnessDim));
    if (c.n_trials == 0 && c.command != Command::DumpMubs && effective_trials(c) == 0) {
        throw ConfigError("--n must be >= 1");
    }
    // Negative tolerances are allowed and demand a strictly positive margin.
    if (!std::isfinite(c.hold_tol) || !std::isfinite(c.warn_tol) || !(c.warn_tol > c.hold_tol)) {
        throw ConfigError("tolerances must be finite with hold-tol < warn-tol");
    }
    const StateKind kind = effective_state_kind(c);
    const double lo = effective_p_min(c);
    const double hi = effective_p_max(c);
    if (kind == StateKind::Isotropic || c.command == Command::SweepIsotropic) {
        if (!(lo >= isotropic_p_min(c.dim) - 1e-12) || !(hi <= 1.0 + 1e-12) || !(lo <= hi)) {
            throw ConfigError("invalid p-range: need -1/(d^2-1) <= p-min <= p-max <= 1");
        }
    }
    switch (c.command) {
        case Command::SweepIsotropic:
            if (c.p_steps < 2) throw ConfigError("--p-steps must be >= 2");
            if (kind != StateKind::Isotropic) throw ConfigError("sweep-isotropic only supports --state isotropic");
            if (c.numeric && c.dim > 5 && !(c.large_numeric && c.dim <= 7)) {
                throw ConfigError("numeric sweeps are limited to d <= 5 (d <= 7 with --large-numeric)");
            }
            break;
        case Command::SuffcondScatter:
            if (c.dim != 2) throw ConfigError("suffcond-scatter requires --dim 2");
            if (kind != StateKind::SeparableFiltered) {
                throw ConfigError("suffcond-scatter only supports --state separable-filtered");
            }
            break;
        case Command::CheckCqc:
        case Command::CheckEcqc:
        case Command::BoundAudit:
            if (kind == StateKind::SeparableFiltered && c.dim != 2) {
                throw ConfigError("--state separable-filtered requires --dim 2");
            }
            break;
        case Command::DumpMubs: break;
    }
}

/// One output row. Optional fields serialize as empty CSV cells / JSON null.
struct TrialRecord {
    std::size_t trial_id = 0;
    std::size_t dim = 0;
    StateKind state_kind = StateKind::Mixed;
    std::optional<double> p;
    double i_ab = 0;
    std::vector<double> mi;  ///< d + 1 entries
    double mi_sum_all = 0;
    double mi_max = 0;
    double ecqc_rhs = 0;
    double ecqc_gap = 0;
    double cqc_gap = 0;
    std::optional<double> kappa1;
    std::optional<double> kappa2;
    std::optional<double> suff_cqc_lhs;
    std::optional<double> suff_cqc_rhs;
    std::optional<double> xie_slack;
    std::optional<double> berta_slack;
    std::optional<double> mu_slack;
    std::optional<double> sanchez_slack;
    std::optional<double> cp_slack;
    bool witness_fired = false;
    Verdict verdict = Verdict::Hold;
};

/// A record plus the in-memory detail the file formats leave out.
struct TrialResult {
    TrialRecord record;
    std::optional<ConjectureReport> report;
    std::optional<BoundsReport> bounds;
    /// min over bases of [I(M^A:B) - I(M^A:M^B)] and [I(A:B) - I(M^A:B)].
    std::optional<double> dpi_min_slack;
    /// The quantity the verdict was taken on.
    double checked_gap = 0;
    /// Y value for the scatter plot.
    double plot_y = 0;
    /// Kept only for VIOLATION verdicts.
    std::optional<ComplexMatrix> state;
};

struct SamplerStats {
    std::size_t attempts = 0;
    std::size_t accepted = 0;
    double acceptance_rate() const {
        return attempts == 0 ? 0.0 : static_cast<double>(accepted) / static_cast<double>(attempts);
    }
};

class SamplerExhausted : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Rejection sampler for two-qubit Ginibre states that are PPT (hence separable),
/// not pure, have no maximally mixed marginal, and satisfy the sufficient CQC condition.
inline BipartiteState separable_filtered_sampler(Rng& rng, SamplerStats* stats = nullptr,
                                                 std::size_t max_attempts = 100000) {
    const auto z = computational(2);
    const auto x = fourier(2);
    for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
        if (stats) ++stats->attempts;
        auto rho = random_mixed(2, rng);
        if (!is_ppt(rho)) continue;
        if (has_maximally_mixed_subsystem(rho, 1e-3)) continue;
        if (purity(rho) >= 1.0 - 1e-6) continue;
        if (!sufficient_cqc(rho, z, x).satisfied) continue;
        if (stats) ++stats->accepted;
        return rho;
    }
    const double rate = stats ? stats->acceptance_rate() : 0.0;
    throw SamplerExhausted("separable_filtered_sampler: no state accepted in " + std::to_string(max_attempts) +
                           " attempts (overall acceptance rate " + std::to_string(rate) + ")");
}

/// Draws the state for one trial; `p` is set for isotropic draws.
inline BipartiteState sample_state(StateKind kind, std::size_t d, Rng& rng, double p_lo, double p_hi,
                                   std::optional<double>& p, SamplerStats* stats = nullptr) {
    switch (kind) {
        case StateKind::Pure: return random_pure(d, rng);
        case StateKind::Mixed: return random_mixed(d, rng);
        case StateKind::Isotropic: {
            const double v = std::clamp(rng.uniform(p_lo, p_hi), p_lo, p_hi);
            p = v;
            return isotropic(d, v);
        }
        case StateKind::SeparableFiltered: return separable_filtered_sampler(rng, stats);
    }
    throw std::logic_error("sample_state: unknown kind");
}

/// Fills every record field from a numerical evaluation of `rho`.
inline TrialResult evaluate_state(const BipartiteState& rho, const MubSet& mubs, const ExperimentConfig& cfg) {
    const auto prof = measurement_profile(rho, mubs);
    const auto rep = conjecture_report(prof);
    const auto bounds = bound_ladder(prof, cfg.sanchez);

    TrialResult res;
    auto& r = res.record;
    r.dim = rho.local_dim();
    r.i_ab = rep.i_ab;
    r.mi = rep.per_basis_mi;
    r.mi_sum_all = rep.mi_sum_all;
    r.mi_max = rep.mi_max;
    r.ecqc_rhs = rep.ecqc_rhs;
    r.ecqc_gap = rep.ecqc_gap;
    r.cqc_gap = rep.cqc_gap;
    r.kappa1 = rep.kappa1;
    r.kappa2 = rep.kappa2;
    r.suff_cqc_lhs = rep.suff_cqc_lhs;
    r.suff_cqc_rhs = rep.suff_cqc_rhs;
    r.xie_slack = bounds.xie_slack;
    r.berta_slack = bounds.berta_slack;
    r.mu_slack = bounds.maassen_uffink_slack;
    r.sanchez_slack = bounds.sanchez_slack;
    r.cp_slack = bounds.coles_piani_slack;
    r.witness_fired = entanglement_witness(prof);

    double dpi = std::numeric_limits<double>::infinity();
    for (const auto& b : prof.bases) {
        dpi = std::min({dpi, b.mi_one_sided - b.mi_two_sided, prof.i_ab - b.mi_one_sided});
    }
    res.dpi_min_slack = dpi;
    res.report = rep;
    res.bounds = bounds;

    switch (cfg.command) {
        case Command::CheckCqc:
        case Command::SuffcondScatter: res.checked_gap = rep.cqc_gap; break;
        case Command::BoundAudit: res.checked_gap = std::min(bounds.min_proven_slack(), dpi); break;
        default: res.checked_gap = rep.ecqc_gap; break;
    }
    res.plot_y = cfg.command == Command::SweepIsotropic ? rep.i_ab - rep.mi_sum_all : res.checked_gap;
    r.verdict = classify(res.checked_gap, cfg.hold_tol, cfg.warn_tol);
    if (r.verdict == Verdict::Violation) res.state = rho.matrix();
    return res;
}

/// Sweep point from the closed forms; fields needing one-sided MIs stay empty.
inline TrialResult evaluate_isotropic_analytic(std::size_t d, double p, const ExperimentConfig& cfg) {
    TrialResult res;
    auto& r = res.record;
    const double log_d = std::log2(static_cast<double>(d));
    const double dd = static_cast<double>(d);
    r.dim = d;
    r.state_kind = StateKind::Isotropic;
    r.p = p;
    r.i_ab = iso_mutual_information(d, p);
    const double mi_zx = iso_measured_mi(d, p);
    const double mi_other = classical_mi(iso_joint_probs(d, p, IsoBasis::Other));
    r.mi.assign(d + 1, mi_other);
    r.mi[0] = mi_zx;
    r.mi[1] = mi_zx;
    for (double v : r.mi) r.mi_sum_all += v;
    r.mi_max = *std::max_element(r.mi.begin(), r.mi.end());
    r.ecqc_rhs = r.mi_sum_all - r.mi_max;
    r.ecqc_gap = r.i_ab - r.ecqc_rhs;
    r.cqc_gap = r.i_ab - 2.0 * mi_zx;
    // Marginals (and hence every single-basis outcome distribution) are uniform.
    const double h_a = log_d;
    const double h_a_given_b = log_d - r.i_ab;
    r.kappa1 = log_d + log_d - log_d - h_a;
    r.kappa2 = -(dd + 1.0) / 2.0 * log_d - (dd + 1.0) / 2.0 * h_a_given_b + (dd + 1.0) * log_d - r.i_ab - r.mi_max;
    r.mu_slack = r.kappa1;
    r.sanchez_slack = (dd + 1.0) * log_d - sanchez_bound(d, cfg.sanchez);
    r.witness_fired = 2.0 * mi_zx > h_a + kHoldTol;
    res.checked_gap = r.ecqc_gap;
    res.plot_y = r.i_ab - r.mi_sum_all;
    r.verdict = classify(res.checked_gap, cfg.hold_tol, cfg.warn_tol);
    return res;
}

namespace detail {

/// Runs body(i) for i in [0, n) on `threads` workers; rethrows the first failure.
template <typename Body>
void parallel_for(std::size_t n, unsigned threads, Body&& body) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < n && !failed; i = next++) {
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                failed = true;
            }
        }
    };
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    if (error) std::rethrow_exception(error);
}

}  // namespace detail

struct RunResults {
    std::vector<TrialResult> trials;
    SamplerStats sampler;
    std::uint64_t seed = 0;
};

/// Evaluates every trial of a check-*/bound-audit/suffcond-scatter/sweep config,
/// in trial order. Does not touch the filesystem.
inline RunResults execute(const ExperimentConfig& cfg) {
    validate(cfg);
    if (cfg.command == Command::DumpMubs) throw ConfigError("execute: dump-mubs produces no trials");
    RunResults out;
    out.seed = cfg.seed.value_or(0);
    const std::size_t d = cfg.dim;
    const StateKind kind = effective_state_kind(cfg);
    const double p_lo = effective_p_min(cfg);
    const double p_hi = effective_p_max(cfg);

    if (cfg.command == Command::SweepIsotropic) {
        const auto grid = linear_grid(p_lo, p_hi, cfg.p_steps);
        out.trials.resize(grid.size());
        std::optional<MubSet> mubs;
        if (cfg.numeric) mubs = mub_family(d);
        detail::parallel_for(grid.size(), cfg.threads, [&](std::size_t i) {
            TrialResult res = cfg.numeric ? evaluate_state(isotropic(d, grid[i]), *mubs, cfg)
                                          : evaluate_isotropic_analytic(d, grid[i], cfg);
            res.record.trial_id = i;
            res.record.state_kind = StateKind::Isotropic;
            res.record.p = grid[i];
            out.trials[i] = std::move(res);
        });
        return out;
    }

    const auto mubs = mub_family(d);
    const std::size_t n = effective_trials(cfg);
    out.trials.resize(n);
    std::vector<SamplerStats> stats(n);
    detail::parallel_for(n, cfg.threads, [&](std::size_t i) {
        Rng rng = Rng::for_trial(out.seed, i);
        std::optional<double> p;
        const auto rho = sample_state(kind, d, rng, p_lo, p_hi, p, &stats[i]);
        TrialResult res = evaluate_state(rho, mubs, cfg);
        res.record.trial_id = i;
        res.record.state_kind = kind;
        res.record.p = p;
        out.trials[i] = std::move(res);
    });
    for (const auto& s : stats) {
        out.sampler.attempts += s.attempts;
        out.sampler.accepted += s.accepted;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Serialization

inline std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline std::vector<std::string> csv_header() {
    std::vector<std::string> h = {"trial_id", "dim", "state_kind", "p", "i_ab"};
    for (std::size_t k = 0; k < kMiColumns; ++k) h.push_back("mi_" + std::to_string(k));
    for (const char* name : {"mi_sum_all", "mi_max", "ecqc_rhs", "ecqc_gap", "cqc_gap", "kappa1", "kappa2",
                             "suff_cqc_lhs", "suff_cqc_rhs", "xie_slack", "berta_slack", "mu_slack", "sanchez_slack",
                             "cp_slack", "witness_fired", "verdict"}) {
        h.emplace_back(name);
    }
    return h;
}

inline void write_csv(std::ostream& os, const std::vector<TrialRecord>& records) {
    const auto header = csv_header();
    for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
    os << '\n';
    auto opt = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string(); };
    for (const auto& r : records) {
        os << r.trial_id << ',' << r.dim << ',' << to_string(r.state_kind) << ',' << opt(r.p) << ','
           << format_number(r.i_ab);
        for (std::size_t k = 0; k < kMiColumns; ++k) {
            os << ',';
            if (k < r.mi.size()) os << format_number(r.mi[k]);
        }
        os << ',' << format_number(r.mi_sum_all) << ',' << format_number(r.mi_max) << ','
           << format_number(r.ecqc_rhs) << ',' << format_number(r.ecqc_gap) << ',' << format_number(r.cqc_gap)
           << ',' << opt(r.kappa1) << ',' << opt(r.kappa2) << ',' << opt(r.suff_cqc_lhs) << ','
           << opt(r.suff_cqc_rhs) << ',' << opt(r.xie_slack) << ',' << opt(r.berta_slack) << ','
           << opt(r.mu_slack) << ',' << opt(r.sanchez_slack) << ',' << opt(r.cp_slack) << ','
           << (r.witness_fired ? "true" : "false") << ',' << to_string(r.verdict) << '\n';
    }
}

inline nlohmann::ordered_json to_json(const TrialRecord& r) {
    auto opt = [](const std::optional<double>& v) { return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(); };
    nlohmann::ordered_json j;
    j["trial_id"] = r.trial_id;
    j["dim"] = r.dim;
    j["state_kind"] = std::string(to_string(r.state_kind));
    j["p"] = opt(r.p);
    j["i_ab"] = r.i_ab;
    j["mi"] = r.mi;
    j["mi_sum_all"] = r.mi_sum_all;
    j["mi_max"] = r.mi_max;
    j["ecqc_rhs"] = r.ecqc_rhs;
    j["ecqc_gap"] = r.ecqc_gap;
    j["cqc_gap"] = r.cqc_gap;
    j["kappa1"] = opt(r.kappa1);
    j["kappa2"] = opt(r.kappa2);
    j["suff_cqc_lhs"] = opt(r.suff_cqc_lhs);
    j["suff_cqc_rhs"] = opt(r.suff_cqc_rhs);
    j["xie_slack"] = opt(r.xie_slack);
    j["berta_slack"] = opt(r.berta_slack);
    j["mu_slack"] = opt(r.mu_slack);
    j["sanchez_slack"] = opt(r.sanchez_slack);
    j["cp_slack"] = opt(r.cp_slack);
    j["witness_fired"] = r.witness_fired;
    j["verdict"] = std::string(to_string(r.verdict));
    return j;
}

inline void write_jsonl(std::ostream& os, const std::vector<TrialRecord>& records) {
    for (const auto& r : records) os << to_json(r).dump() << '\n';
}

/// Basis entries as "re,im" pairs, one matrix row per line, blocks separated by a blank line.
inline void dump_mubs(std::ostream& os, const MubSet& mubs) {
    for (std::size_t b = 0; b < mubs.size(); ++b) {
        if (b) os << '\n';
        const auto& m = mubs[b].matrix();
        for (std::size_t r = 0; r < m.rows(); ++r) {
            for (std::size_t c = 0; c < m.cols(); ++c) {
                os << (c ? "," : "") << format_number(m(r, c).real()) << ',' << format_number(m(r, c).imag());
            }
            os << '\n';
        }
    }
}

inline void write_matrix(std::ostream& os, const ComplexMatrix& m) {
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.17g,%.17g", m(r, c).real(), m(r, c).imag());
            os << (c ? "," : "") << buf;
        }
        os << '\n';
    }
}

// ---------------------------------------------------------------------------
// Plotting

struct PlotPoint {
    double x;
    double y;
};

struct PlotLayout {
    double width = 800;
    double height = 480;
    double margin = 56;
};

/// Maps data coordinates onto the SVG canvas; y grows downward on screen.
class PlotFrame {
   public:
    PlotFrame(const std::vector<PlotPoint>& pts, PlotLayout layout) : layout_(layout) {
        x_lo_ = x_hi_ = pts.front().x;
        y_lo_ = std::min(0.0, pts.front().y);
        y_hi_ = std::max(0.0, pts.front().y);
        for (const auto& p : pts) {
            x_lo_ = std::min(x_lo_, p.x);
            x_hi_ = std::max(x_hi_, p.x);
            y_lo_ = std::min(y_lo_, p.y);
            y_hi_ = std::max(y_hi_, p.y);
        }
        if (x_hi_ == x_lo_) x_hi_ = x_lo_ + 1.0;
        if (y_hi_ == y_lo_) y_hi_ = y_lo_ + 1.0;
    }

    double sx(double x) const {
        return layout_.margin + (x - x_lo_) / (x_hi_ - x_lo_) * (layout_.width - 2 * layout_.margin);
    }
    double sy(double y) const {
        return layout_.height - layout_.margin - (y - y_lo_) / (y_hi_ - y_lo_) * (layout_.height - 2 * layout_.margin);
    }
    double y_lo() const { return y_lo_; }
    double y_hi() const { return y_hi_; }
    double x_lo() const { return x_lo_; }
    double x_hi() const { return x_hi_; }

   private:
    PlotLayout layout_;
    double x_lo_, x_hi_, y_lo_, y_hi_;
};

inline std::string scatter_svg(const std::vector<PlotPoint>& pts, std::string_view title, std::string_view x_label,
                               std::string_view y_label, PlotLayout layout = {}) {
    if (pts.empty()) throw std::invalid_argument("scatter_svg: no points");
    const PlotFrame frame(pts, layout);
    std::ostringstream os;
    auto num = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3f", v);
        return std::string(buf);
    };
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << layout.width << "\" height=\"" << layout.height
       << "\" viewBox=\"0 0 " << layout.width << ' ' << layout.height << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << layout.width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
       << "font-size=\"16\">" << title << "</text>\n";
    os << "<text x=\"" << layout.width / 2 << "\" y=\"" << layout.height - 12
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << x_label << "</text>\n";
    os << "<text x=\"16\" y=\"" << layout.height / 2 << "\" transform=\"rotate(-90 16 " << layout.height / 2
       << ")\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << y_label << "</text>\n";
    os << "<rect x=\"" << layout.margin << "\" y=\"" << layout.margin << "\" width=\""
       << layout.width - 2 * layout.margin << "\" height=\"" << layout.height - 2 * layout.margin
       << "\" fill=\"none\" stroke=\"#444\"/>\n";
    for (double v : {frame.y_lo(), frame.y_hi()}) {
        os << "<text x=\"" << layout.margin - 4 << "\" y=\"" << num(frame.sy(v))
           << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" << format_number(v) << "</text>\n";
    }
    for (double v : {frame.x_lo(), frame.x_hi()}) {
        os << "<text x=\"" << num(frame.sx(v)) << "\" y=\"" << layout.height - layout.margin + 14
           << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">" << format_number(v)
           << "</text>\n";
    }
    os << "<line id=\"zero\" x1=\"" << layout.margin << "\" y1=\"" << num(frame.sy(0.0)) << "\" x2=\""
       << layout.width - layout.margin << "\" y2=\"" << num(frame.sy(0.0))
       << "\" stroke=\"#c00\" stroke-dasharray=\"4 3\"/>\n";
    for (const auto& p : pts) {
        os << "<circle cx=\"" << num(frame.sx(p.x)) << "\" cy=\"" << num(frame.sy(p.y))
           << "\" r=\"2\" fill=\"#1f5fa8\" fill-opacity=\"0.6\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

/// Writes the scatter for a finished run; sweeps plot against p, everything else against trial index.
inline void emit_plot(const std::vector<TrialResult>& trials, const std::string& path, Command command) {
    if (trials.empty()) throw std::invalid_argument("emit_plot: no records");
    std::vector<PlotPoint> pts;
    pts.reserve(trials.size());
    const bool by_p = command == Command::SweepIsotropic;
    for (const auto& t : trials) {
        pts.push_back({by_p ? t.record.p.value_or(0.0) : static_cast<double>(t.record.trial_id), t.plot_y});
    }
    std::string y_label;
    switch (command) {
        case Command::CheckCqc:
        case Command::SuffcondScatter: y_label = "I(A:B) - I(Z:Z) - I(X:X)"; break;
        case Command::SweepIsotropic: y_label = "I(A:B) - sum of all I(M:M)"; break;
        case Command::BoundAudit: y_label = "min proven-bound slack"; break;
        default: y_label = "I(A:B) - min subset sum"; break;
    }
    const auto svg = scatter_svg(pts, std::string(to_string(command)) + ", d = " + std::to_string(trials[0].record.dim),
                                 by_p ? "p" : "trial", y_label);
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("emit_plot: cannot open " + path);
    f << svg;
    if (!f) throw std::runtime_error("emit_plot: write failed for " + path);
}

// ---------------------------------------------------------------------------
// Top level

/// Runs a configured command end to end. Returns 0 if every verdict is HOLD (or WARN),
/// 1 if any trial is a VIOLATION, 2 on configuration or I/O errors.
inline int run(ExperimentConfig cfg, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    try {
        validate(cfg);
        if (cfg.command == Command::DumpMubs) {
            const auto mubs = mub_family(cfg.dim);
            if (cfg.out_path.empty()) {
                dump_mubs(out, mubs);
            } else {
                std::ofstream f(cfg.out_path, std::ios::binary);
                if (!f) throw std::runtime_error("cannot open " + cfg.out_path + " for writing");
                dump_mubs(f, mubs);
            }
            return 0;
        }
        if (!cfg.seed) {
            cfg.seed = (static_cast<std::uint64_t>(std::random_device{}()) << 32) ^ std::random_device{}();
            err << "seed: " << *cfg.seed << '\n';
        }

        std::ofstream file;
        if (!cfg.out_path.empty()) {
            file.open(cfg.out_path, std::ios::binary);
            if (!file) throw std::runtime_error("cannot open " + cfg.out_path + " for writing");
        }
        std::ostream& sink = cfg.out_path.empty() ? out : file;

        const auto results = execute(cfg);
        std::vector<TrialRecord> records;
        records.reserve(results.trials.size());
        for (const auto& t : results.trials) records.push_back(t.record);
        if (cfg.format == OutputFormat::Csv) {
            write_csv(sink, records);
        } else {
            write_jsonl(sink, records);
        }
        sink.flush();
        if (!sink) throw std::runtime_error("write failed for " + (cfg.out_path.empty() ? "stdout" : cfg.out_path));

        if (cfg.command == Command::SuffcondScatter) {
            err << "sampler: accepted " << results.sampler.accepted << " of " << results.sampler.attempts
                << " attempts (rate " << results.sampler.acceptance_rate() << ")\n";
        }
        if (cfg.plot) {
            if (cfg.out_path.empty()) throw ConfigError("--plot requires --out");
            emit_plot(results.trials, cfg.out_path + ".svg", cfg.command);
        }

        std::size_t warns = 0;
        std::size_t violations = 0;
        for (const auto& t : results.trials) {
            if (t.record.verdict == Verdict::Warn) {
                ++warns;
                err << "WARN trial " << t.record.trial_id << ": gap " << format_number(t.checked_gap) << '\n';
            } else if (t.record.verdict == Verdict::Violation) {
                ++violations;
                err << "VIOLATION trial " << t.record.trial_id << ": gap " << format_number(t.checked_gap) << '\n';
                if (t.state && !cfg.out_path.empty()) {
                    const auto path = cfg.out_path + ".violation-" + std::to_string(t.record.trial_id) + ".txt";
                    std::ofstream f(path, std::ios::binary);
                    write_matrix(f, *t.state);
                }
            }
        }
        if (warns || violations) {
            err << "summary: " << results.trials.size() << " records, " << warns << " WARN, " << violations
                << " VIOLATION\n";
        }
        return violations ? 1 : 0;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace cqc
