#include "maser/explorer.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "maser/errors.hpp"
#include "maser/fcs.hpp"
#include "maser/philox.hpp"
#include "maser/qtur.hpp"
#include "maser/steady_state.hpp"
#include "maser/tur.hpp"

namespace maser {

namespace {

std::size_t resolve_workers(int workers, std::size_t tasks) {
    std::size_t n = workers > 0 ? static_cast<std::size_t>(workers)
                                : std::max(1u, std::thread::hardware_concurrency());
    return std::max<std::size_t>(1, std::min(n, tasks));
}

// Splits [0, n) into contiguous chunks, one per worker.
template <class Fn>
void parallel_chunks(std::size_t n, int workers, Fn&& fn) {
    const std::size_t w = resolve_workers(workers, n);
    if (w == 1) {
        fn(std::size_t{0}, std::size_t{0}, n);
        return;
    }
    std::vector<std::jthread> threads;
    threads.reserve(w);
    for (std::size_t k = 0; k < w; ++k) {
        const std::size_t begin = n * k / w;
        const std::size_t end = n * (k + 1) / w;
        threads.emplace_back([&fn, k, begin, end] { fn(k, begin, end); });
    }
}

int sign_of(double v) {
    return (v > 0.0) - (v < 0.0);
}

}  // namespace

const char* to_string(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::epsilon: return "epsilon";
        case SweepAxis::n_u: return "n_u";
        case SweepAxis::delta: return "delta";
        case SweepAxis::gamma_u: return "gamma_u";
        case SweepAxis::gamma_l: return "gamma_l";
        case SweepAxis::n_l: return "n_l";
    }
    return "?";
}

SweepAxis parse_axis(std::string_view name) {
    for (SweepAxis a : {SweepAxis::epsilon, SweepAxis::n_u, SweepAxis::delta, SweepAxis::gamma_u,
                        SweepAxis::gamma_l, SweepAxis::n_l}) {
        if (name == to_string(a)) return a;
    }
    throw ConfigError("unknown sweep axis '" + std::string(name) + "'");
}

void set_axis(EngineParams& p, SweepAxis axis, double value) {
    switch (axis) {
        case SweepAxis::epsilon: p.epsilon = value; break;
        case SweepAxis::n_u: p.n_u = value; break;
        case SweepAxis::delta: p.delta = value; break;
        case SweepAxis::gamma_u: p.gamma_u = value; break;
        case SweepAxis::gamma_l: p.gamma_l = value; break;
        case SweepAxis::n_l: p.n_l = value; break;
    }
}

void AxisRange::validate() const {
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
        throw ConfigError("axis range needs finite lo < hi");
    }
    if (points < 2) throw ConfigError("axis range needs at least 2 points");
    if (log_scale && !(lo > 0.0)) throw ConfigError("log-scale axis needs lo > 0");
}

std::vector<double> AxisRange::grid() const {
    validate();
    std::vector<double> g(static_cast<std::size_t>(points));
    const double last = points - 1;
    for (int i = 0; i < points; ++i) {
        const double t = i / last;
        g[static_cast<std::size_t>(i)] =
            log_scale ? std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo))) : lo + t * (hi - lo);
    }
    g.front() = lo;
    g.back() = hi;
    return g;
}

PointResult evaluate_point(const EngineParams& p, bool with_bound) {
    PointResult r;
    r.params = p;
    try {
        const SteadyState ss = steady_state_closed_form(p);
        r.rho_ul_re = ss.rho_ul_re;
        r.rho_ul_im = ss.rho_ul_im;
    } catch (const DomainError& e) {
        r.error = e.what();
        return r;
    }
    try {
        const TurReport t = thermodynamic_uncertainty(p, Model::quantum);
        r.q = t.q;
        r.q_classical = t.q_classical;
        r.mean = t.mean_rate;
        r.variance = t.variance_rate;
        r.sigma = t.sigma;
    } catch (const DomainError& e) {
        r.error = e.what();
        return r;
    } catch (const NumericalError& e) {
        r.error = e.what();
        return r;
    }
    if (with_bound) {
        try {
            r.bound = quantum_bound(p).bound;
        } catch (const DomainError& e) {
            r.bound_error = e.what();
        } catch (const NumericalError& e) {
            r.bound_error = e.what();
        }
    }
    return r;
}

std::vector<SweepRow> sweep(const SweepSpec& spec, int workers) {
    const std::vector<double> xs = spec.range.grid();
    std::vector<SweepRow> rows(xs.size());
    parallel_chunks(xs.size(), workers, [&](std::size_t, std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            EngineParams p = spec.base;
            set_axis(p, spec.axis, xs[i]);
            rows[i].x = xs[i];
            rows[i].point = evaluate_point(p, spec.with_bound);
        }
    });
    return rows;
}

Heatmap heatmap(const HeatmapSpec& spec, int workers) {
    Heatmap h;
    h.epsilon_axis = spec.epsilon.grid();
    h.delta_axis = spec.delta.grid();
    const std::size_t ne = h.epsilon_axis.size();
    h.cells.resize(ne * h.delta_axis.size());
    parallel_chunks(h.cells.size(), workers, [&](std::size_t, std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k) {
            EngineParams p = spec.base;
            p.delta = h.delta_axis[k / ne];
            p.epsilon = h.epsilon_axis[k % ne];
            const PointResult r = evaluate_point(p, false);
            HeatmapCell& c = h.cells[k];
            c.q = r.q;
            c.q_classical = r.q_classical;
            c.abs_rho_ul = std::hypot(r.rho_ul_re, r.rho_ul_im);
            c.im_rho_ul = r.rho_ul_im;
            c.error = r.error;
        }
    });
    return h;
}

void McSpec::validate() const {
    if (!(bin_width > 0.0) || !std::isfinite(bin_width)) throw ConfigError("bin_width must be > 0");
    if (!(hist_lo < hist_hi)) throw ConfigError("histogram range needs hist_lo < hist_hi");
    if (!(equilibrium_exclusion >= 0.0)) throw ConfigError("equilibrium exclusion must be >= 0");
    const UniformRange all[] = {dists.gamma_u, dists.gamma_l, dists.n_u, dists.n_l, dists.epsilon, dists.delta};
    for (const UniformRange& r : all) {
        if (!std::isfinite(r.lo) || !std::isfinite(r.hi) || !(r.lo <= r.hi)) {
            throw ConfigError("sampling range needs finite lo <= hi");
        }
    }
    if (!(dists.gamma_u.lo > 0.0) || !(dists.gamma_l.lo > 0.0)) {
        throw ConfigError("gamma ranges must be strictly positive");
    }
    if (dists.n_u.lo < 0.0 || dists.n_l.lo < 0.0 || dists.epsilon.lo < 0.0) {
        throw ConfigError("occupation and drive ranges must be non-negative");
    }
}

EngineParams sample_params(const McSpec& spec, std::uint64_t index) {
    CounterStream s(spec.seed, index);
    const McDistributions& d = spec.dists;
    EngineParams p;
    p.gamma_u = s.uniform(d.gamma_u.lo, d.gamma_u.hi);
    p.gamma_l = s.uniform(d.gamma_l.lo, d.gamma_l.hi);
    p.n_u = s.uniform(d.n_u.lo, d.n_u.hi);
    p.n_l = s.uniform(d.n_l.lo, d.n_l.hi);
    p.epsilon = s.uniform(d.epsilon.lo, d.epsilon.hi);
    p.delta = s.uniform(d.delta.lo, d.delta.hi);
    return p;
}

Histogram::Histogram(double lo, double hi, double bin_width) : lo_(lo), width_(bin_width) {
    if (!(bin_width > 0.0) || !(lo < hi)) throw ConfigError("histogram needs lo < hi and bin_width > 0");
    const auto bins = static_cast<std::size_t>(std::ceil((hi - lo) / bin_width - 1e-9));
    counts_.assign(std::max<std::size_t>(bins, 1), 0);
}

void Histogram::add(double value) {
    ++total_;
    if (value < lo_) {
        ++underflow_;
        return;
    }
    const double slot = std::floor((value - lo_) / width_);
    if (!(slot < static_cast<double>(counts_.size()))) {
        ++overflow_;
        return;
    }
    ++counts_[static_cast<std::size_t>(slot)];
}

void Histogram::merge(const Histogram& other) {
    if (other.counts_.size() != counts_.size() || other.lo_ != lo_ || other.width_ != width_) {
        throw std::invalid_argument("histogram binning mismatch");
    }
    for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
    underflow_ += other.underflow_;
    overflow_ += other.overflow_;
    total_ += other.total_;
}

std::vector<double> Histogram::edges() const {
    std::vector<double> e(counts_.size() + 1);
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = lo_ + static_cast<double>(i) * width_;
    return e;
}

void ValueRange::add(double v) {
    min = std::min(min, v);
    max = std::max(max, v);
}

void ValueRange::merge(const ValueRange& other) {
    min = std::min(min, other.min);
    max = std::max(max, other.max);
}

namespace {

McResult empty_result(const McSpec& spec) {
    McResult r;
    r.spec = spec;
    r.q_hist = Histogram(spec.hist_lo, spec.hist_hi, spec.bin_width);
    r.q_classical_hist = r.q_hist;
    return r;
}

void accumulate_sample(const McSpec& spec, std::uint64_t index, McResult& acc) {
    const EngineParams p = sample_params(spec, index);
    if (std::abs(p.n_l - p.n_u) < spec.equilibrium_exclusion) {
        ++acc.excluded_near_equilibrium;
        return;
    }
    TurReport t;
    double classical_mean = 0.0;
    double decoherence = 0.0;
    try {
        t = thermodynamic_uncertainty(p, Model::quantum);
        classical_mean = mean_rate(charpoly_coeffs_classical(p));
        decoherence = decoherence_rate(p);
    } catch (const DomainError&) {
        ++acc.excluded_singular;
        return;
    } catch (const NumericalError&) {
        ++acc.excluded_singular;
        return;
    }

    ++acc.accepted;
    acc.q_hist.add(t.q);
    acc.q_classical_hist.add(t.q_classical);
    acc.q_range.add(t.q);
    acc.q_classical_range.add(t.q_classical);
    if (t.q < 2.0) ++acc.q_below_two;
    if (t.q_classical < 2.0) ++acc.q_classical_below_two;
    if (t.q_classical < 2.0 - 1e-9) ++acc.q_classical_violations;
    if (t.q_pop < 2.0 - 1e-12) ++acc.q_pop_violations;
    if (t.q_classical > t.q_pop + 1e-10) ++acc.q_classical_above_pop;
    if (t.q_tr_classical > 0.0) ++acc.positive_classical_transport;

    const double detuning_gap = p.delta * p.delta - decoherence * decoherence;
    if (detuning_gap != 0.0 && t.mean_rate != 0.0) {
        ++acc.sign_law_checked;
        if (sign_of(t.advantage) != sign_of(detuning_gap)) ++acc.sign_law_exceptions;
    }
    const double raw = t.q - t.q_classical;
    if (std::abs(raw) > 1e-12 * std::max(1.0, std::abs(t.q)) && sign_of(raw) != sign_of(t.advantage)) {
        ++acc.raw_difference_mismatches;
    }
    const double q_direct = t.sigma * t.variance_rate / (t.mean_rate * t.mean_rate);
    if (std::abs(q_direct - t.q) > 1e-10 * std::abs(t.q)) ++acc.uncertainty_identity_mismatches;
    acc.max_mean_relative_gap =
        std::max(acc.max_mean_relative_gap, std::abs(t.mean_rate - classical_mean) / std::abs(t.mean_rate));

    if (spec.with_bound) {
        try {
            const double b = quantum_bound(p).bound;
            ++acc.bound_evaluated;
            if (t.q < b - 1e-8) ++acc.bound_violations;
            acc.min_q_minus_bound = std::min(acc.min_q_minus_bound, t.q - b);
        } catch (const DomainError&) {
            ++acc.bound_undefined;
        } catch (const NumericalError&) {
            ++acc.bound_undefined;
        }
    }
}

void merge_into(McResult& into, const McResult& from) {
    into.accepted += from.accepted;
    into.excluded_near_equilibrium += from.excluded_near_equilibrium;
    into.excluded_singular += from.excluded_singular;
    into.q_hist.merge(from.q_hist);
    into.q_classical_hist.merge(from.q_classical_hist);
    into.q_below_two += from.q_below_two;
    into.q_classical_below_two += from.q_classical_below_two;
    into.q_range.merge(from.q_range);
    into.q_classical_range.merge(from.q_classical_range);
    into.q_classical_violations += from.q_classical_violations;
    into.q_pop_violations += from.q_pop_violations;
    into.q_classical_above_pop += from.q_classical_above_pop;
    into.positive_classical_transport += from.positive_classical_transport;
    into.sign_law_checked += from.sign_law_checked;
    into.sign_law_exceptions += from.sign_law_exceptions;
    into.raw_difference_mismatches += from.raw_difference_mismatches;
    into.uncertainty_identity_mismatches += from.uncertainty_identity_mismatches;
    into.max_mean_relative_gap = std::max(into.max_mean_relative_gap, from.max_mean_relative_gap);
    into.bound_evaluated += from.bound_evaluated;
    into.bound_violations += from.bound_violations;
    into.bound_undefined += from.bound_undefined;
    into.min_q_minus_bound = std::min(into.min_q_minus_bound, from.min_q_minus_bound);
}

}  // namespace

McResult monte_carlo(const McSpec& spec, int workers) {
    spec.validate();
    const std::size_t n = static_cast<std::size_t>(spec.samples);
    const std::size_t w = resolve_workers(workers, std::max<std::size_t>(n, 1));
    std::vector<McResult> partial(w, empty_result(spec));
    parallel_chunks(n, static_cast<int>(w), [&](std::size_t k, std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) accumulate_sample(spec, i, partial[k]);
    });
    McResult total = empty_result(spec);
    for (const McResult& part : partial) merge_into(total, part);
    return total;
}

}  // namespace maser
