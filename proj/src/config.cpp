#include "mixlab/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "mixlab/errors.hpp"

namespace mixlab {

namespace {

const char* kKnownKeys[] = {
    "speed_c",    "M",           "margin_delta", "window",      "s_initial",
    "s_min",      "passes_max",  "k0",           "k_cap",       "gain_fraction",
    "quad_resolution", "time_slices", "stall_fraction", "profile", "interface_file",
    "t_end",
};

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

} // namespace

Config Config::parse(std::istream& in) {
    Config cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash_pos = line.find('#');
        if (hash_pos != std::string::npos) line = line.substr(0, hash_pos);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + " has no '='");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("config line " + std::to_string(lineno) + " is malformed");
        if (std::find_if(std::begin(kKnownKeys), std::end(kKnownKeys),
                         [&](const char* k) { return key == k; }) == std::end(kKnownKeys))
            throw ConfigError("unknown config key '" + key + "'");
        cfg.entries_[key] = value;
    }
    return cfg;
}

Config Config::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    return parse(in);
}

bool Config::has(const std::string& key) const { return entries_.count(key) > 0; }

double Config::get_double(const std::string& key) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) throw ConfigError("missing config key '" + key + "'");
    try {
        std::size_t pos = 0;
        const double v = std::stod(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "' is not a number: " + it->second);
    }
}

double Config::get_double(const std::string& key, double fallback) const {
    return has(key) ? get_double(key) : fallback;
}

int Config::get_int(const std::string& key, int fallback) const {
    if (!has(key)) return fallback;
    const double v = get_double(key);
    return static_cast<int>(v);
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
    const auto it = entries_.find(key);
    return it == entries_.end() ? fallback : it->second;
}

std::vector<double> Config::get_doubles(const std::string& key, std::size_t count) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) throw ConfigError("missing config key '" + key + "'");
    std::vector<double> out;
    std::string token;
    std::istringstream ss(it->second);
    while (std::getline(ss, token, ',')) {
        token = trim(token);
        if (token.empty()) continue;
        out.push_back(std::stod(token));
    }
    if (out.size() != count)
        throw ConfigError("config key '" + key + "' needs " + std::to_string(count) +
                          " comma-separated numbers");
    return out;
}

std::uint64_t Config::hash() const {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](const std::string& s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ull;
        }
    };
    for (const auto& [k, v] : entries_) {
        mix(k);
        mix("=");
        mix(v);
        mix("\n");
    }
    return h;
}

RunConfig make_run_config(const Config& config) {
    RunConfig rc;
    rc.speed_c = config.get_double("speed_c");
    if (!(rc.speed_c > 0.0 && rc.speed_c < 2.0))
        throw ConfigError("speed_c = " + std::to_string(rc.speed_c) +
                          " outside the admissible range (0, 2)");
    rc.M = config.get_double("M");
    if (!(rc.M > 1.0)) throw ConfigError("M must be > 1");
    rc.margin_delta = config.get_double("margin_delta", 0.05);
    if (rc.margin_delta < 0.0 || rc.margin_delta >= 1.0)
        throw ConfigError("margin_delta must lie in [0, 1)");

    const auto w = config.get_doubles("window", 6);
    rc.window = {{{w[0], w[2]}, {w[1], w[3]}}, w[4], w[5]};
    if (!(w[1] > w[0] && w[3] > w[2] && w[5] > w[4] && w[4] > 0.0))
        throw ConfigError("window must satisfy x0<x1, y0<y1, 0<t0<t1");

    rc.s_initial = config.get_double("s_initial");
    if (!(rc.s_initial > 0.0)) throw ConfigError("s_initial must be positive");
    rc.s_min = config.get_double("s_min", rc.s_initial / 8.0);
    rc.passes_max = config.get_int("passes_max", 3);
    if (rc.passes_max < 0) throw ConfigError("passes_max must be >= 0");
    rc.k0 = config.get_double("k0", 8.0);
    rc.k_cap = config.get_double("k_cap", 1024.0);
    rc.gain_fraction = config.get_double("gain_fraction", 0.5);
    rc.quad_resolution = config.get_int("quad_resolution", 256);
    if (rc.quad_resolution < 16) throw ConfigError("quad_resolution must be >= 16");
    rc.time_slices = config.get_int("time_slices", 32);
    rc.stall_fraction = config.get_double("stall_fraction", 0.02);
    rc.profile_name = config.get_string("profile", "cosine");
    rc.interface_path = config.get_string("interface_file", "");
    return rc;
}

int validated_resolution(int n) {
    if (n < 16 || n > 4096 || (n & (n - 1)) != 0)
        throw ConfigError("resolution must be a power of two between 16 and 4096");
    return n;
}

} // namespace mixlab
