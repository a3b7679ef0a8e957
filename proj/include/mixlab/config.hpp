#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "mixlab/scheme.hpp"

namespace mixlab {

/// `key = value` text configuration; '#' starts a comment. Unknown keys are
/// rejected so that typos surface instead of silently defaulting.
class Config {
  public:
    static Config parse(std::istream& in);
    static Config parse_file(const std::string& path);

    bool has(const std::string& key) const;
    double get_double(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    std::vector<double> get_doubles(const std::string& key, std::size_t count) const;

    /// FNV-1a hash of the canonical sorted key=value listing.
    std::uint64_t hash() const;
    const std::map<std::string, std::string>& entries() const { return entries_; }

  private:
    std::map<std::string, std::string> entries_;
};

/// Builds and validates the scheme configuration. Throws ConfigError with a
/// message naming the offending key.
RunConfig make_run_config(const Config& config);

/// Power-of-two dump/grid resolution between 2^4 and 2^12.
int validated_resolution(int n);

} // namespace mixlab
