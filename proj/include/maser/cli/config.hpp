#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "maser/explorer.hpp"
#include "maser/params.hpp"

namespace maser::cli {

enum class Command { point, sweep, heatmap, montecarlo, verify };
enum class OutputFormat { csv, json };

const char* to_string(Command c);
const char* to_string(OutputFormat f);

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int usage = 2;
inline constexpr int domain = 3;
inline constexpr int numerical = 4;
inline constexpr int verify_failed = 5;
}  // namespace exit_code

struct RunConfig {
    Command command = Command::point;
    EngineParams params{2.0, 0.1, 0.027, 5.0, 0.15, 0.0};
    std::string out;  // empty writes to stdout; not embedded, like `workers`
    OutputFormat format = OutputFormat::json;
    std::uint64_t seed = 0;

    // sweep; the epsilon axis of a heatmap reuses `range`
    SweepAxis axis = SweepAxis::epsilon;
    AxisRange range{0.01, 1.0, 200, false};
    AxisRange delta_range{-1.0, 1.0, 81, false};

    // montecarlo
    std::uint64_t samples = 1'000'000;
    double bin_width = 0.01;
    bool with_bound = false;
    double hist_lo = 0.0;
    double hist_hi = 16.0;
    double equilibrium_exclusion = 1e-3;

    // verify
    double oracle_tolerance = 1e-6;
    std::uint64_t verify_samples = 100;
    double perturb_a1 = 0.0;  // relative error injected into a1 before the oracle comparison

    // Not part of the embedded config: output never depends on it.
    int workers = 0;

    McSpec mc_spec() const;
    SweepSpec sweep_spec() const;
    HeatmapSpec heatmap_spec() const;
};

OutputFormat default_format(Command c);

// Ordered key/value pairs of everything that determines the payload, in
// config-file spelling. Doubles are printed with 17 significant digits.
std::vector<std::pair<std::string, std::string>> config_entries(const RunConfig& cfg);

// Flat `key = value` text accepted by --config.
std::string to_config_text(const RunConfig& cfg);

struct ParseOutcome {
    RunConfig config;
    int exit_status = -1;  // >= 0 means stop and return this status
};

// Parses argv (argv[0] is the program name). Help and usage errors are
// written to `out`/`err` and reported through exit_status.
ParseOutcome parse_command_line(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace maser::cli
