#include "maser/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <ostream>
#include <sstream>

#include "maser/errors.hpp"
#include "maser/fcs.hpp"
#include "maser/fcs_oracle.hpp"
#include "maser/generator.hpp"
#include "maser/qtur.hpp"
#include "maser/steady_state.hpp"
#include "maser/tur.hpp"
#include "output.hpp"

namespace maser::cli {

namespace {

Json params_json(const EngineParams& p) {
    Json j;
    j["gamma_u"] = p.gamma_u;
    j["gamma_l"] = p.gamma_l;
    j["n_u"] = p.n_u;
    j["n_l"] = p.n_l;
    j["epsilon"] = p.epsilon;
    j["delta"] = p.delta;
    return j;
}

std::string run_point(const RunConfig& cfg) {
    const EngineParams& p = cfg.params;
    validate(p);
    const DerivedRates rates = derived_rates(p);
    const SteadyState ss = steady_state_closed_form(p);
    const Cumulants k = fano(p, Model::quantum);
    const Cumulants kc = fano(p, Model::classical);
    const TurReport t = thermodynamic_uncertainty(p, Model::quantum);
    const BoundComponents b = quantum_bound(p);
    const PointResult row = evaluate_point(p, true);

    if (cfg.format == OutputFormat::csv) {
        std::string s = "gamma_u,gamma_l,n_u,n_l,epsilon,delta,q,q_cl,b,mean,variance,sigma,rho_ul_re,rho_ul_im\n";
        for (double v : {p.gamma_u, p.gamma_l, p.n_u, p.n_l, p.epsilon, p.delta, row.q, row.q_classical, row.bound,
                         row.mean, row.variance, row.sigma, row.rho_ul_re, row.rho_ul_im}) {
            s += csv_number(v);
            s += ',';
        }
        s.back() = '\n';
        return s;
    }

    Json doc;
    doc["config"] = config_json(cfg);
    doc["params"] = params_json(p);
    doc["derived"] = {{"decoherence_rate", rates.decoherence}, {"classical_rate", rates.classical_rate}};
    doc["steady_state"] = {{"rho_xx", ss.rho_xx},
                           {"rho_uu", ss.rho_uu},
                           {"rho_ll", ss.rho_ll},
                           {"rho_ul_re", ss.rho_ul_re},
                           {"rho_ul_im", ss.rho_ul_im}};
    const auto cumulants = [](const Cumulants& c) {
        return Json{{"mean", c.mean},
                    {"variance", c.variance},
                    {"fano", c.fano},
                    {"fano_pop", c.fano_pop},
                    {"fano_tr", c.fano_tr}};
    };
    doc["cumulants"] = {{"quantum", cumulants(k)}, {"classical", cumulants(kc)}};
    doc["tur"] = {{"sigma", t.sigma},
                  {"q", t.q},
                  {"q_pop", t.q_pop},
                  {"q_tr", t.q_tr},
                  {"q_cl", t.q_classical},
                  {"q_tr_cl", t.q_tr_classical},
                  {"advantage", t.advantage}};
    doc["bound"] = {{"upsilon", b.upsilon},
                    {"psi", b.psi},
                    {"h_prime", b.h_prime},
                    {"sigma", b.sigma},
                    {"b", b.bound}};
    doc["provenance"] = provenance_json(cfg, true);
    return dump_json(doc);
}

const char* const kSweepColumns[] = {"q", "q_cl", "b", "mean", "variance", "sigma", "rho_ul_re", "rho_ul_im"};

std::vector<double> row_values(const PointResult& r) {
    return {r.q, r.q_classical, r.bound, r.mean, r.variance, r.sigma, r.rho_ul_re, r.rho_ul_im};
}

std::string row_status(const PointResult& r) {
    if (!r.error.empty()) return r.error;
    if (!r.bound_error.empty()) return "b: " + r.bound_error;
    return "ok";
}

std::string run_sweep(const RunConfig& cfg) {
    const std::vector<SweepRow> rows = sweep(cfg.sweep_spec(), cfg.workers);
    if (cfg.format == OutputFormat::csv) {
        std::string s = to_string(cfg.axis);
        for (const char* c : kSweepColumns) s += std::string(",") + c;
        s += ",status\n";
        for (const SweepRow& row : rows) {
            s += csv_number(row.x);
            for (double v : row_values(row.point)) s += "," + csv_number(v);
            s += "," + csv_field(row_status(row.point)) + "\n";
        }
        return s;
    }
    Json doc;
    doc["config"] = config_json(cfg);
    Json columns = Json::array({to_string(cfg.axis)});
    for (const char* c : kSweepColumns) columns.push_back(c);
    columns.push_back("status");
    doc["columns"] = columns;
    Json data = Json::array();
    for (const SweepRow& row : rows) {
        Json r = Json::array({row.x});
        for (double v : row_values(row.point)) r.push_back(json_number(v));
        r.push_back(row_status(row.point));
        data.push_back(std::move(r));
    }
    doc["rows"] = std::move(data);
    doc["provenance"] = provenance_json(cfg, false);
    return dump_json(doc);
}

std::string run_heatmap(const RunConfig& cfg) {
    const Heatmap h = heatmap(cfg.heatmap_spec(), cfg.workers);
    const std::size_t nd = h.delta_axis.size();
    const std::size_t ne = h.epsilon_axis.size();
    if (cfg.format == OutputFormat::csv) {
        std::string s = "delta,epsilon,q,q_cl,abs_rho_ul,im_rho_ul,status\n";
        for (std::size_t d = 0; d < nd; ++d) {
            for (std::size_t e = 0; e < ne; ++e) {
                const HeatmapCell& c = h.at(d, e);
                s += csv_number(h.delta_axis[d]) + "," + csv_number(h.epsilon_axis[e]) + "," + csv_number(c.q) + "," +
                     csv_number(c.q_classical) + "," + csv_number(c.abs_rho_ul) + "," + csv_number(c.im_rho_ul) + "," +
                     csv_field(c.error.empty() ? "ok" : c.error) + "\n";
            }
        }
        return s;
    }
    const auto field = [&](auto member) {
        Json grid = Json::array();
        for (std::size_t d = 0; d < nd; ++d) {
            Json row = Json::array();
            for (std::size_t e = 0; e < ne; ++e) row.push_back(json_number(h.at(d, e).*member));
            grid.push_back(std::move(row));
        }
        return grid;
    };
    Json doc;
    doc["config"] = config_json(cfg);
    doc["epsilon"] = h.epsilon_axis;
    doc["delta"] = h.delta_axis;
    doc["layout"] = "rows follow delta, columns follow epsilon";
    doc["q"] = field(&HeatmapCell::q);
    doc["q_cl"] = field(&HeatmapCell::q_classical);
    doc["abs_rho_ul"] = field(&HeatmapCell::abs_rho_ul);
    doc["im_rho_ul"] = field(&HeatmapCell::im_rho_ul);
    std::uint64_t failed = 0;
    for (const HeatmapCell& c : h.cells) failed += !c.error.empty();
    doc["failed_cells"] = failed;
    doc["provenance"] = provenance_json(cfg, false);
    return dump_json(doc);
}

Json histogram_json(const Histogram& h) {
    return Json{{"counts", h.counts()}, {"underflow", h.underflow()}, {"overflow", h.overflow()}, {"total", h.total()}};
}

std::string run_montecarlo(const RunConfig& cfg) {
    const McSpec spec = cfg.mc_spec();
    const McResult r = monte_carlo(spec, cfg.workers);
    const std::vector<double> edges = r.q_hist.edges();
    if (cfg.format == OutputFormat::csv) {
        std::string s = "bin_lo,bin_hi,q_count,q_cl_count\n";
        for (std::size_t i = 0; i < r.q_hist.bins(); ++i) {
            s += csv_number(edges[i]) + "," + csv_number(edges[i + 1]) + "," + std::to_string(r.q_hist.counts()[i]) +
                 "," + std::to_string(r.q_classical_hist.counts()[i]) + "\n";
        }
        return s;
    }
    Json doc;
    doc["config"] = config_json(cfg);
    doc["samples"] = spec.samples;
    doc["accepted"] = r.accepted;
    doc["exclusions"] = {{"near_equilibrium", r.excluded_near_equilibrium},
                         {"singular", r.excluded_singular},
                         {"equilibrium_threshold", spec.equilibrium_exclusion}};
    doc["statistics"] = {{"q_below_two", r.q_below_two},
                         {"q_cl_below_two", r.q_classical_below_two},
                         {"q_min", json_number(r.q_range.min)},
                         {"q_max", json_number(r.q_range.max)},
                         {"q_cl_min", json_number(r.q_classical_range.min)},
                         {"q_cl_max", json_number(r.q_classical_range.max)}};
    doc["checks"] = {{"q_cl_violations", r.q_classical_violations},
                     {"q_pop_violations", r.q_pop_violations},
                     {"q_cl_above_q_pop", r.q_classical_above_pop},
                     {"positive_classical_transport", r.positive_classical_transport},
                     {"sign_law_checked", r.sign_law_checked},
                     {"sign_law_exceptions", r.sign_law_exceptions},
                     {"raw_difference_mismatches", r.raw_difference_mismatches},
                     {"uncertainty_identity_mismatches", r.uncertainty_identity_mismatches},
                     {"max_mean_relative_gap", r.max_mean_relative_gap}};
    if (spec.with_bound) {
        doc["bound"] = {{"evaluated", r.bound_evaluated},
                        {"violations", r.bound_violations},
                        {"undefined", r.bound_undefined},
                        {"min_q_minus_b", json_number(r.min_q_minus_bound)}};
    }
    doc["histogram"] = {{"lo", spec.hist_lo},
                        {"bin_width", spec.bin_width},
                        {"bins", r.q_hist.bins()},
                        {"edges", edges},
                        {"q", histogram_json(r.q_hist)},
                        {"q_cl", histogram_json(r.q_classical_hist)}};
    doc["provenance"] = provenance_json(cfg, false);
    return dump_json(doc);
}

double relative_gap(double value, double reference) {
    if (value == reference) return 0.0;
    return std::abs(value - reference) / std::abs(reference);
}

// Accumulates the worst residual of one named check.
class CheckTally {
  public:
    CheckTally(std::string name, double tolerance) : check_{std::move(name), true, 0.0, tolerance, 0, 0} {}

    void record(double residual) {
        ++check_.points;
        if (std::isnan(residual) || residual > check_.worst) check_.worst = residual;
    }
    void skip() { ++check_.skipped; }

    // Runs `fn` and records its residual; undefined points are skipped.
    void evaluate(const std::function<double()>& fn) {
        try {
            record(fn());
        } catch (const DomainError&) {
            skip();
        } catch (const NumericalError&) {
            skip();
        }
    }

    VerifyCheck finish() const {
        VerifyCheck c = check_;
        c.passed = !std::isnan(c.worst) && c.worst <= c.tolerance;
        return c;
    }

  private:
    VerifyCheck check_;
};

std::string run_verify(const RunConfig& cfg, std::ostream& err, bool& all_passed) {
    const std::vector<VerifyCheck> checks = verify_checks(cfg);
    all_passed = std::all_of(checks.begin(), checks.end(), [](const VerifyCheck& c) { return c.passed; });
    for (const VerifyCheck& c : checks) {
        err << (c.passed ? "PASS " : "FAIL ") << c.name << " worst=" << csv_number(c.worst)
            << " tol=" << csv_number(c.tolerance) << " points=" << c.points << " skipped=" << c.skipped << "\n";
    }
    if (cfg.format == OutputFormat::csv) {
        std::string s = "check,passed,worst,tolerance,points,skipped\n";
        for (const VerifyCheck& c : checks) {
            s += c.name + "," + (c.passed ? "true" : "false") + "," + csv_number(c.worst) + "," +
                 csv_number(c.tolerance) + "," + std::to_string(c.points) + "," + std::to_string(c.skipped) + "\n";
        }
        return s;
    }
    Json doc;
    doc["config"] = config_json(cfg);
    Json list = Json::array();
    for (const VerifyCheck& c : checks) {
        list.push_back({{"name", c.name},
                        {"passed", c.passed},
                        {"worst", json_number(c.worst)},
                        {"tolerance", c.tolerance},
                        {"points", c.points},
                        {"skipped", c.skipped}});
    }
    doc["checks"] = std::move(list);
    doc["passed"] = all_passed;
    doc["provenance"] = provenance_json(cfg, false);
    return dump_json(doc);
}

}  // namespace

std::vector<EngineParams> verify_points(const RunConfig& cfg) {
    std::vector<EngineParams> points{cfg.params};
    McSpec spec;
    spec.seed = cfg.seed;
    for (std::uint64_t i = 0; points.size() <= cfg.verify_samples; ++i) {
        const EngineParams p = sample_params(spec, i);
        if (std::abs(p.n_l - p.n_u) >= spec.equilibrium_exclusion) points.push_back(p);
    }
    return points;
}

std::vector<VerifyCheck> verify_checks(const RunConfig& cfg) {
    const double tol = cfg.oracle_tolerance;
    CheckTally mean_q("oracle_mean_quantum", tol), var_q("oracle_variance_quantum", tol);
    CheckTally mean_c("oracle_mean_classical", tol), var_c("oracle_variance_classical", tol);
    CheckTally coeffs("oracle_charpoly_coefficients", tol);
    CheckTally mean_eq("mean_rate_equality", 1e-12);
    CheckTally null_space("steady_state_null_space", 1e-10);
    CheckTally coherence("mean_coherence_identity", 1e-12);
    CheckTally split("liouvillian_split", 1e-12);
    CheckTally classical_tur("classical_tur", 1e-9);
    CheckTally pop_floor("population_floor", 1e-12);
    CheckTally pop_ceiling("classical_below_population", 1e-10);
    CheckTally sign_law("advantage_sign_law", 0.0);
    CheckTally quantum_tur("quantum_tur", 1e-8);
    CheckTally scaling("bound_scale_invariance", 1e-10);

    const auto closed_form = [&cfg](const EngineParams& p, Model m) {
        CharPolyCoeffs c = charpoly_coeffs(p, m);
        c.a1 *= 1.0 + cfg.perturb_a1;
        return c;
    };

    for (const EngineParams& p : verify_points(cfg)) {
        for (Model m : {Model::quantum, Model::classical}) {
            CheckTally& mean_t = m == Model::quantum ? mean_q : mean_c;
            CheckTally& var_t = m == Model::quantum ? var_q : var_c;
            try {
                const CharPolyCoeffs c = closed_form(p, m);
                const double mean = mean_rate(c);
                const double var = variance_rate(c, mean);
                const EigenvalueCumulants oracle = cumulants_via_eigenvalue(p, m);
                mean_t.record(relative_gap(mean, oracle.mean));
                var_t.record(relative_gap(var, oracle.variance));
            } catch (const DomainError&) {
                mean_t.skip();
                var_t.skip();
            } catch (const NumericalError&) {
                mean_t.skip();
                var_t.skip();
            }
            coeffs.evaluate([&] {
                const CharPolyCoeffs c = closed_form(p, m);
                const CharPolyCoeffs n = charpoly_coeffs_numeric(p, m);
                const double mine[] = {c.a0_p, c.a0_pp, c.a1, c.a1_p, c.a2};
                const double theirs[] = {n.a0_p, n.a0_pp, n.a1, n.a1_p, n.a2};
                double scale = 0.0;
                for (double v : theirs) scale = std::max(scale, std::abs(v));
                double worst = 0.0;
                for (int i = 0; i < 5; ++i) {
                    worst = std::max(worst, std::abs(mine[i] - theirs[i]) / std::max(std::abs(theirs[i]), 1e-12 * scale));
                }
                return worst;
            });
        }
        mean_eq.evaluate([&] {
            return relative_gap(mean_rate(charpoly_coeffs_classical(p)), mean_rate(charpoly_coeffs_quantum(p)));
        });
        null_space.evaluate([&] {
            const SteadyState a = steady_state_closed_form(p);
            const SteadyState b = steady_state_numeric(build_quantum_generator(p));
            return std::max({std::abs(a.rho_xx - b.rho_xx), std::abs(a.rho_uu - b.rho_uu), std::abs(a.rho_ll - b.rho_ll),
                             std::abs(a.rho_ul_re - b.rho_ul_re), std::abs(a.rho_ul_im - b.rho_ul_im)});
        });
        coherence.evaluate([&] {
            const double mean = mean_rate(charpoly_coeffs_quantum(p));
            return relative_gap(2.0 * p.epsilon * steady_state_closed_form(p).rho_ul_im, mean);
        });
        split.evaluate([&] {
            const Matrix5c direct = to_full_basis(build_quantum_generator(p).entries);
            return (k_supermatrices(p).liouvillian() - direct).cwiseAbs().maxCoeff();
        });
        try {
            const TurReport t = thermodynamic_uncertainty(p, Model::quantum);
            classical_tur.record(std::max(0.0, 2.0 - t.q_classical));
            pop_floor.record(std::max(0.0, 2.0 - t.q_pop));
            pop_ceiling.record(std::max(0.0, t.q_classical - t.q_pop));
            const double gamma = decoherence_rate(p);
            const double gap = p.delta * p.delta - gamma * gamma;
            if (gap != 0.0 && t.mean_rate != 0.0) {
                sign_law.record((t.advantage > 0.0) != (gap > 0.0) || t.advantage == 0.0 ? 1.0 : 0.0);
            } else {
                sign_law.skip();
            }
            quantum_tur.evaluate([&] { return std::max(0.0, quantum_bound(p).bound - t.q); });
        } catch (const DomainError&) {
            for (CheckTally* c : {&classical_tur, &pop_floor, &pop_ceiling, &sign_law, &quantum_tur}) c->skip();
        } catch (const NumericalError&) {
            for (CheckTally* c : {&classical_tur, &pop_floor, &pop_ceiling, &sign_law, &quantum_tur}) c->skip();
        }
        scaling.evaluate([&] {
            const double b = quantum_bound(p).bound;
            double worst = 0.0;
            for (double s : {0.5, 2.0}) worst = std::max(worst, relative_gap(quantum_bound(rescaled(p, s)).bound, b));
            return worst;
        });
    }

    std::vector<VerifyCheck> out;
    for (const CheckTally* c : {&mean_q, &var_q, &mean_c, &var_c, &coeffs, &mean_eq, &null_space, &coherence, &split,
                                &classical_tur, &pop_floor, &pop_ceiling, &sign_law, &quantum_tur, &scaling}) {
        out.push_back(c->finish());
    }
    return out;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        bool verify_passed = true;
        std::string body;
        switch (cfg.command) {
            case Command::point: body = run_point(cfg); break;
            case Command::sweep: body = run_sweep(cfg); break;
            case Command::heatmap: body = run_heatmap(cfg); break;
            case Command::montecarlo: body = run_montecarlo(cfg); break;
            case Command::verify: body = run_verify(cfg, err, verify_passed); break;
        }
        emit(cfg, body, out);
        return verify_passed ? exit_code::ok : exit_code::verify_failed;
    } catch (const ConfigError& e) {
        err << "maser: " << e.what() << "\n";
        return exit_code::usage;
    } catch (const DomainError& e) {
        err << "maser: domain error: " << e.what() << "\n";
        return exit_code::domain;
    } catch (const NumericalError& e) {
        err << "maser: numerical error: " << e.what() << "\n";
        return exit_code::numerical;
    } catch (const std::exception& e) {
        err << "maser: " << e.what() << "\n";
        return exit_code::numerical;
    }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    const ParseOutcome parsed = parse_command_line(argc, argv, out, err);
    if (parsed.exit_status >= 0) return parsed.exit_status;
    return run(parsed.config, out, err);
}

}  // namespace maser::cli
