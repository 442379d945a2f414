#include "maser/cli/config.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <iterator>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "maser/errors.hpp"

namespace maser::cli {

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Flat key = value text (INI without sections), or a JSON document whose
// "config" object was written by a previous run. Underscored keys map onto
// the hyphenated flag names.
class FlatConfig : public CLI::ConfigBase {
  public:
    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
        std::string text{std::istreambuf_iterator<char>(input), std::istreambuf_iterator<char>()};
        const auto first = text.find_first_not_of(" \t\r\n");
        std::vector<CLI::ConfigItem> items;
        if (first != std::string::npos && text[first] == '{') {
            items = from_json(text);
        } else {
            std::istringstream in(text);
            items = CLI::ConfigBase::from_config(in);
        }
        for (auto& item : items) {
            if (!item.parents.empty()) {
                throw CLI::ConfigError("sections are not supported: " + item.fullname());
            }
            std::replace(item.name.begin(), item.name.end(), '_', '-');
        }
        return items;
    }

  private:
    static std::vector<CLI::ConfigItem> from_json(const std::string& text) {
        nlohmann::ordered_json doc;
        try {
            doc = nlohmann::ordered_json::parse(text);
        } catch (const nlohmann::json::exception& e) {
            throw CLI::ConfigError(std::string("malformed JSON config: ") + e.what());
        }
        const auto& cfg = doc.contains("config") ? doc.at("config") : doc;
        if (!cfg.is_object()) throw CLI::ConfigError("JSON config must be an object");
        std::vector<CLI::ConfigItem> items;
        for (const auto& [key, value] : cfg.items()) {
            CLI::ConfigItem item;
            item.name = key;
            if (value.is_string()) {
                item.inputs.push_back(value.get<std::string>());
            } else if (value.is_boolean() || value.is_number()) {
                item.inputs.push_back(value.dump());
            } else {
                throw CLI::ConfigError("config value for '" + key + "' must be a scalar");
            }
            items.push_back(std::move(item));
        }
        return items;
    }
};

Command parse_command(const std::string& name) {
    for (Command c : {Command::point, Command::sweep, Command::heatmap, Command::montecarlo, Command::verify}) {
        if (name == to_string(c)) return c;
    }
    throw ConfigError("unknown command '" + name + "'");
}

void check_config(const RunConfig& cfg) {
    switch (cfg.command) {
        case Command::sweep: cfg.range.validate(); break;
        case Command::heatmap:
            cfg.range.validate();
            cfg.delta_range.validate();
            break;
        case Command::montecarlo: cfg.mc_spec().validate(); break;
        case Command::verify:
            if (!(cfg.oracle_tolerance >= 0.0)) throw ConfigError("oracle_tolerance must be >= 0");
            if (cfg.verify_samples == 0) throw ConfigError("verify_samples must be >= 1");
            if (!std::isfinite(cfg.perturb_a1)) throw ConfigError("perturb_a1 must be finite");
            break;
        case Command::point: break;
    }
}

}  // namespace

const char* to_string(Command c) {
    switch (c) {
        case Command::point: return "point";
        case Command::sweep: return "sweep";
        case Command::heatmap: return "heatmap";
        case Command::montecarlo: return "montecarlo";
        case Command::verify: return "verify";
    }
    return "?";
}

const char* to_string(OutputFormat f) {
    return f == OutputFormat::csv ? "csv" : "json";
}

OutputFormat default_format(Command c) {
    return (c == Command::sweep || c == Command::heatmap) ? OutputFormat::csv : OutputFormat::json;
}

McSpec RunConfig::mc_spec() const {
    McSpec s;
    s.samples = samples;
    s.bin_width = bin_width;
    s.hist_lo = hist_lo;
    s.hist_hi = hist_hi;
    s.seed = seed;
    s.with_bound = with_bound;
    s.equilibrium_exclusion = equilibrium_exclusion;
    return s;
}

SweepSpec RunConfig::sweep_spec() const {
    return SweepSpec{params, axis, range, true};
}

HeatmapSpec RunConfig::heatmap_spec() const {
    return HeatmapSpec{params, range, delta_range};
}

std::vector<std::pair<std::string, std::string>> config_entries(const RunConfig& cfg) {
    const auto flag = [](bool b) { return std::string(b ? "true" : "false"); };
    std::vector<std::pair<std::string, std::string>> kv{
        {"command", to_string(cfg.command)},
        {"gamma_u", fmt17(cfg.params.gamma_u)},
        {"gamma_l", fmt17(cfg.params.gamma_l)},
        {"n_u", fmt17(cfg.params.n_u)},
        {"n_l", fmt17(cfg.params.n_l)},
        {"epsilon", fmt17(cfg.params.epsilon)},
        {"delta", fmt17(cfg.params.delta)},
        {"format", to_string(cfg.format)},
        {"seed", std::to_string(cfg.seed)},
    };
    const auto add_range = [&kv, &flag](const AxisRange& r) {
        kv.emplace_back("from", fmt17(r.lo));
        kv.emplace_back("to", fmt17(r.hi));
        kv.emplace_back("points", std::to_string(r.points));
        kv.emplace_back("log", flag(r.log_scale));
    };
    switch (cfg.command) {
        case Command::point: break;
        case Command::sweep:
            kv.emplace_back("axis", to_string(cfg.axis));
            add_range(cfg.range);
            break;
        case Command::heatmap:
            add_range(cfg.range);
            kv.emplace_back("delta_from", fmt17(cfg.delta_range.lo));
            kv.emplace_back("delta_to", fmt17(cfg.delta_range.hi));
            kv.emplace_back("delta_points", std::to_string(cfg.delta_range.points));
            break;
        case Command::montecarlo:
            kv.emplace_back("samples", std::to_string(cfg.samples));
            kv.emplace_back("bin_width", fmt17(cfg.bin_width));
            kv.emplace_back("with_bound", flag(cfg.with_bound));
            kv.emplace_back("hist_lo", fmt17(cfg.hist_lo));
            kv.emplace_back("hist_hi", fmt17(cfg.hist_hi));
            kv.emplace_back("equilibrium_exclusion", fmt17(cfg.equilibrium_exclusion));
            break;
        case Command::verify:
            kv.emplace_back("oracle_tolerance", fmt17(cfg.oracle_tolerance));
            kv.emplace_back("verify_samples", std::to_string(cfg.verify_samples));
            kv.emplace_back("perturb_a1", fmt17(cfg.perturb_a1));
            break;
    }
    return kv;
}

std::string to_config_text(const RunConfig& cfg) {
    std::string text;
    for (const auto& [k, v] : config_entries(cfg)) text += k + " = " + v + "\n";
    return text;
}

ParseOutcome parse_command_line(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    ParseOutcome result;
    RunConfig& cfg = result.config;

    CLI::App app{"Three-level maser uncertainty toolkit"};
    app.name("maser");
    app.config_formatter(std::make_shared<FlatConfig>());
    app.set_config("--config", "", "flat key = value file; flags take precedence");
    app.allow_config_extras(CLI::config_extras_mode::error);
    app.require_subcommand(1);

    const std::pair<Command, const char*> subcommands[] = {
        {Command::point, "single parameter point: steady state, cumulants, Q and B"},
        {Command::sweep, "one-dimensional sweep along --axis"},
        {Command::heatmap, "epsilon x delta grid of Q, Q_cl and the coherence"},
        {Command::montecarlo, "random sampling of parameter space with Q histograms"},
        {Command::verify, "closed forms against oracles and inequality checks"},
    };
    for (const auto& [cmd, help] : subcommands) app.add_subcommand(to_string(cmd), help)->fallthrough();

    auto& p = cfg.params;
    app.add_option("--gamma-u", p.gamma_u, "upper bath coupling")->capture_default_str();
    app.add_option("--gamma-l", p.gamma_l, "lower bath coupling")->capture_default_str();
    app.add_option("--n-u", p.n_u, "upper bath occupation")->capture_default_str();
    app.add_option("--n-l", p.n_l, "lower bath occupation")->capture_default_str();
    app.add_option("--epsilon", p.epsilon, "drive strength")->capture_default_str();
    app.add_option("--delta", p.delta, "detuning")->capture_default_str();
    app.add_option("--out", cfg.out, "output path (default stdout)");
    std::string format;
    app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--seed", cfg.seed, "random seed")->capture_default_str();
    app.add_option("--workers", cfg.workers, "worker threads (0: one per core)")->capture_default_str();
    std::string command_key;
    app.add_option("--command", command_key)->group("");

    std::string axis = to_string(cfg.axis);
    app.add_option("--axis", axis, "sweep axis: epsilon, delta, n_u, n_l, gamma_u, gamma_l")
        ->capture_default_str()
        ->group("Sweep/heatmap");
    app.add_option("--from", cfg.range.lo, "axis start")->capture_default_str()->group("Sweep/heatmap");
    app.add_option("--to", cfg.range.hi, "axis end")->capture_default_str()->group("Sweep/heatmap");
    app.add_option("--points", cfg.range.points, "grid points")->capture_default_str()->group("Sweep/heatmap");
    app.add_flag("--log", cfg.range.log_scale, "log-spaced grid")->group("Sweep/heatmap");
    app.add_option("--delta-from", cfg.delta_range.lo, "heatmap delta start")->capture_default_str()->group("Sweep/heatmap");
    app.add_option("--delta-to", cfg.delta_range.hi, "heatmap delta end")->capture_default_str()->group("Sweep/heatmap");
    app.add_option("--delta-points", cfg.delta_range.points, "heatmap delta points")
        ->capture_default_str()
        ->group("Sweep/heatmap");

    app.add_option("--samples", cfg.samples, "Monte Carlo samples")->capture_default_str()->group("Monte Carlo");
    app.add_option("--bin-width", cfg.bin_width, "histogram bin width")->capture_default_str()->group("Monte Carlo");
    app.add_flag("--with-bound", cfg.with_bound, "also evaluate B per sample")->group("Monte Carlo");
    app.add_option("--hist-lo", cfg.hist_lo, "histogram lower edge")->capture_default_str()->group("Monte Carlo");
    app.add_option("--hist-hi", cfg.hist_hi, "histogram upper edge")->capture_default_str()->group("Monte Carlo");
    app.add_option("--equilibrium-exclusion", cfg.equilibrium_exclusion, "skip draws with |n_l - n_u| below this")
        ->capture_default_str()
        ->group("Monte Carlo");

    app.add_option("--oracle-tolerance", cfg.oracle_tolerance, "relative tolerance of oracle checks")
        ->capture_default_str()
        ->group("Verify");
    app.add_option("--verify-samples", cfg.verify_samples, "random points per check")->capture_default_str()->group("Verify");
    app.add_option("--perturb-a1", cfg.perturb_a1, "relative error injected into a1")->capture_default_str()->group("Verify");

    try {
        app.parse(argc, argv);
        cfg.command = parse_command(app.get_subcommands().front()->get_name());
        if (!command_key.empty() && command_key != to_string(cfg.command)) {
            throw ConfigError("config file is for '" + command_key + "', not '" + to_string(cfg.command) + "'");
        }
        cfg.axis = parse_axis(axis);
        cfg.format = format.empty() ? default_format(cfg.command) : (format == "csv" ? OutputFormat::csv : OutputFormat::json);
        check_config(cfg);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        result.exit_status = code == 0 ? exit_code::ok : exit_code::usage;
    } catch (const ConfigError& e) {
        err << "maser: " << e.what() << "\n";
        result.exit_status = exit_code::usage;
    }
    return result;
}

}  // namespace maser::cli
