#include "output.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <ostream>

#include "maser/errors.hpp"

namespace maser::cli {

namespace {

const char* const kStringKeys[] = {"command", "format", "axis"};
const char* const kCountKeys[] = {"seed", "points", "delta_points", "samples", "verify_samples"};

template <std::size_t N>
bool contains(const char* const (&keys)[N], const std::string& key) {
    for (const char* k : keys) {
        if (key == k) return true;
    }
    return false;
}

void write_file(const std::string& path, const std::string& body) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw ConfigError("cannot open '" + path + "' for writing");
    f << body;
    if (!f.flush()) throw ConfigError("failed writing '" + path + "'");
}

}  // namespace

std::string csv_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

Json json_number(double v) {
    if (!std::isfinite(v)) return nullptr;
    return v;
}

Json config_json(const RunConfig& cfg) {
    Json j = Json::object();
    for (const auto& [key, value] : config_entries(cfg)) {
        if (contains(kStringKeys, key)) {
            j[key] = value;
        } else if (value == "true" || value == "false") {
            j[key] = value == "true";
        } else if (contains(kCountKeys, key)) {
            j[key] = std::stoull(value);
        } else {
            j[key] = std::strtod(value.c_str(), nullptr);
        }
    }
    return j;
}

Json provenance_json(const RunConfig& cfg, bool with_timestamp) {
    Json j;
    j["version"] = MASER_VERSION;
    j["seed"] = cfg.seed;
    if (with_timestamp) {
        const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        std::tm utc{};
        gmtime_r(&now, &utc);
        char buf[32];
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
        j["timestamp"] = buf;
    }
    return j;
}

std::string dump_json(const Json& doc) {
    return doc.dump(2) + "\n";
}

void emit(const RunConfig& cfg, const std::string& body, std::ostream& out) {
    if (cfg.out.empty()) {
        out << body;
        return;
    }
    write_file(cfg.out, body);
    if (cfg.format == OutputFormat::csv) write_file(cfg.out + ".config", to_config_text(cfg));
}

}  // namespace maser::cli
