#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "maser/params.hpp"

namespace maser {

enum class SweepAxis { epsilon, n_u, delta, gamma_u, gamma_l, n_l };

const char* to_string(SweepAxis axis);
SweepAxis parse_axis(std::string_view name);  // throws ConfigError
void set_axis(EngineParams& p, SweepAxis axis, double value);

struct AxisRange {
    double lo = 0.0;
    double hi = 1.0;
    int points = 2;
    bool log_scale = false;

    // Throws ConfigError unless lo < hi, points >= 2 and (log) lo > 0.
    void validate() const;
    // Ascending grid; endpoints are exact.
    std::vector<double> grid() const;
};

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Single-point pipeline shared by sweep, heatmap and the CLI. Fields that
// could not be computed are NaN and the reason is kept in `error` (or
// `bound_error` for B alone).
struct PointResult {
    EngineParams params;
    double q = kNaN;
    double q_classical = kNaN;
    double bound = kNaN;
    double mean = kNaN;
    double variance = kNaN;
    double sigma = kNaN;
    double rho_ul_re = kNaN;
    double rho_ul_im = kNaN;
    std::string error;
    std::string bound_error;

    bool ok() const { return error.empty(); }
};

PointResult evaluate_point(const EngineParams& p, bool with_bound = true);

struct SweepSpec {
    EngineParams base;
    SweepAxis axis = SweepAxis::epsilon;
    AxisRange range;
    bool with_bound = true;
};

struct SweepRow {
    double x = 0.0;
    PointResult point;
};

// One row per grid point in ascending x. Per-point failures become gap rows.
// `workers` <= 0 means one per hardware thread.
std::vector<SweepRow> sweep(const SweepSpec& spec, int workers = 0);

struct HeatmapSpec {
    EngineParams base;
    AxisRange epsilon;
    AxisRange delta;
};

struct HeatmapCell {
    double q = kNaN;
    double q_classical = kNaN;
    double abs_rho_ul = kNaN;
    double im_rho_ul = kNaN;
    std::string error;
};

struct Heatmap {
    std::vector<double> epsilon_axis;
    std::vector<double> delta_axis;
    std::vector<HeatmapCell> cells;  // row-major: one row per delta value

    const HeatmapCell& at(std::size_t delta_index, std::size_t epsilon_index) const {
        return cells[delta_index * epsilon_axis.size() + epsilon_index];
    }
};

Heatmap heatmap(const HeatmapSpec& spec, int workers = 0);

struct UniformRange {
    double lo = 0.0;
    double hi = 1.0;
};

// Defaults are the Monte Carlo ranges used for the Q histograms.
struct McDistributions {
    UniformRange gamma_u{1e-4, 5.0};
    UniformRange gamma_l{1e-4, 5.0};
    UniformRange n_u{1e-4, 10.0};
    UniformRange n_l{1e-4, 10.0};
    UniformRange epsilon{1e-4, 1.0};
    UniformRange delta{0.0, 1.0};
};

struct McSpec {
    McDistributions dists;
    std::uint64_t samples = 1'000'000;
    double bin_width = 0.01;
    double hist_lo = 0.0;
    double hist_hi = 16.0;
    std::uint64_t seed = 0;
    bool with_bound = false;
    double equilibrium_exclusion = 1e-3;  // |n_l - n_u| below this is skipped

    void validate() const;  // throws ConfigError
};

// Parameters of sample `index`; depends only on (seed, index, dists).
EngineParams sample_params(const McSpec& spec, std::uint64_t index);

class Histogram {
  public:
    Histogram() = default;
    Histogram(double lo, double hi, double bin_width);

    void add(double value);
    void merge(const Histogram& other);

    double lo() const { return lo_; }
    double bin_width() const { return width_; }
    std::size_t bins() const { return counts_.size(); }
    std::vector<double> edges() const;
    const std::vector<std::uint64_t>& counts() const { return counts_; }
    std::uint64_t underflow() const { return underflow_; }
    std::uint64_t overflow() const { return overflow_; }
    std::uint64_t total() const { return total_; }

  private:
    double lo_ = 0.0;
    double width_ = 1.0;
    std::vector<std::uint64_t> counts_;
    std::uint64_t underflow_ = 0;
    std::uint64_t overflow_ = 0;
    std::uint64_t total_ = 0;
};

struct ValueRange {
    double min = std::numeric_limits<double>::infinity();
    double max = -std::numeric_limits<double>::infinity();

    void add(double v);
    void merge(const ValueRange& other);
};

struct McResult {
    McSpec spec;
    std::uint64_t accepted = 0;
    std::uint64_t excluded_near_equilibrium = 0;
    std::uint64_t excluded_singular = 0;

    Histogram q_hist;
    Histogram q_classical_hist;

    std::uint64_t q_below_two = 0;
    std::uint64_t q_classical_below_two = 0;
    ValueRange q_range;
    ValueRange q_classical_range;

    // Property counters; all but q_below_two are expected to stay zero.
    std::uint64_t q_classical_violations = 0;     // Q_cl < 2 - 1e-9
    std::uint64_t q_pop_violations = 0;           // Q_pop < 2 - 1e-12
    std::uint64_t q_classical_above_pop = 0;      // Q_cl > Q_pop + 1e-10
    std::uint64_t positive_classical_transport = 0;  // Q_tr_cl > 0
    std::uint64_t sign_law_checked = 0;
    std::uint64_t sign_law_exceptions = 0;        // sign(Q - Q_cl) != sign(Delta^2 - Gamma^2)
    std::uint64_t raw_difference_mismatches = 0;  // raw Q - Q_cl vs closed-form advantage
    std::uint64_t uncertainty_identity_mismatches = 0;  // Q vs sigma var / mean^2 at 1e-10
    double max_mean_relative_gap = 0.0;           // quantum vs classical mean

    std::uint64_t bound_evaluated = 0;
    std::uint64_t bound_violations = 0;           // Q < B - 1e-8
    std::uint64_t bound_undefined = 0;
    double min_q_minus_bound = std::numeric_limits<double>::infinity();
};

// Deterministic for a fixed spec regardless of `workers`: each sample draws
// from its own counter-based stream and all reductions are integer counts or
// extrema.
McResult monte_carlo(const McSpec& spec, int workers = 0);

}  // namespace maser
