#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "maser/cli/config.hpp"

namespace maser::cli {

struct VerifyCheck {
    std::string name;
    bool passed = false;
    double worst = 0.0;      // worst residual over the evaluated points
    double tolerance = 0.0;
    std::uint64_t points = 0;
    std::uint64_t skipped = 0;  // points where the quantity is undefined
};

// The configured point followed by `verify_samples` random off-equilibrium
// points drawn with `seed`.
std::vector<EngineParams> verify_points(const RunConfig& cfg);
std::vector<VerifyCheck> verify_checks(const RunConfig& cfg);

// Executes a parsed config and returns the process exit status. Errors are
// reported on `err`; the document goes to cfg.out or `out`.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace maser::cli
