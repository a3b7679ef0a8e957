#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mixlab {

/// Interface height samples f(s, t) on a complete rectangular grid.
/// Evaluation is cubic Hermite in s (centered-difference slopes) and
/// linear in t; constants are reproduced exactly. Queries are clamped to
/// the sampled range.
struct SampledInterface {
    std::vector<double> s_grid; // strictly increasing
    std::vector<double> t_grid; // strictly increasing
    std::vector<double> values; // row-major in t then s

    double eval(double s, double t) const;
    double eval_ds(double s, double t) const; // partial in s (FD of the interpolant)
    double eval_dt(double s, double t) const;

    void validate() const; // throws ConfigError on malformed data
};

/// Reads the comma-separated interface table with header `s,t,f`.
/// Every (s, t) pair of the grid must be present.
SampledInterface load_interface_table(std::istream& in);
SampledInterface load_interface_table_file(const std::string& path);

} // namespace mixlab
