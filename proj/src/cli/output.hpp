#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"
#include "maser/cli/config.hpp"

namespace maser::cli {

using Json = nlohmann::ordered_json;

std::string csv_number(double v);
std::string csv_field(const std::string& s);
Json json_number(double v);  // NaN and infinities become null

// Typed JSON view of config_entries(); loads back through --config.
Json config_json(const RunConfig& cfg);
Json provenance_json(const RunConfig& cfg, bool with_timestamp);

std::string dump_json(const Json& doc);

// Writes `body` to cfg.out (or `out` when unset). CSV files get a sidecar
// `<out>.config` holding the config, since the CSV itself is data only.
void emit(const RunConfig& cfg, const std::string& body, std::ostream& out);

}  // namespace maser::cli
