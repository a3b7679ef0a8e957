#include "mixlab/interface.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "mixlab/errors.hpp"

namespace mixlab {

namespace {

// Index of the cell containing q (clamped).
std::size_t cell_index(const std::vector<double>& grid, double q) {
    if (q <= grid.front()) return 0;
    if (q >= grid.back()) return grid.size() - 2;
    const auto it = std::upper_bound(grid.begin(), grid.end(), q);
    return static_cast<std::size_t>(it - grid.begin()) - 1;
}

// Centered-difference slope at node i, one-sided at the ends.
double node_slope(const std::vector<double>& grid, const std::vector<double>& y, std::size_t i) {
    const std::size_t n = grid.size();
    if (n == 1) return 0.0;
    if (i == 0) return (y[1] - y[0]) / (grid[1] - grid[0]);
    if (i == n - 1) return (y[n - 1] - y[n - 2]) / (grid[n - 1] - grid[n - 2]);
    return (y[i + 1] - y[i - 1]) / (grid[i + 1] - grid[i - 1]);
}

double hermite_row(const std::vector<double>& s_grid, const std::vector<double>& row, double s) {
    if (s_grid.size() == 1) return row[0];
    const std::size_t i = cell_index(s_grid, s);
    const double h = s_grid[i + 1] - s_grid[i];
    const double w = std::clamp((s - s_grid[i]) / h, 0.0, 1.0);
    const double y0 = row[i], y1 = row[i + 1];
    const double d0 = node_slope(s_grid, row, i) * h;
    const double d1 = node_slope(s_grid, row, i + 1) * h;
    const double w2 = w * w, w3 = w2 * w;
    return (2.0 * w3 - 3.0 * w2 + 1.0) * y0 + (w3 - 2.0 * w2 + w) * d0 +
           (-2.0 * w3 + 3.0 * w2) * y1 + (w3 - w2) * d1;
}

} // namespace

void SampledInterface::validate() const {
    if (s_grid.size() < 2 || t_grid.size() < 1)
        throw ConfigError("interface table needs >= 2 s-samples and >= 1 t-sample");
    if (values.size() != s_grid.size() * t_grid.size())
        throw ConfigError("interface table is not a complete (s, t) grid");
    for (std::size_t i = 1; i < s_grid.size(); ++i)
        if (!(s_grid[i] > s_grid[i - 1])) throw ConfigError("s grid must be strictly increasing");
    for (std::size_t i = 1; i < t_grid.size(); ++i)
        if (!(t_grid[i] > t_grid[i - 1])) throw ConfigError("t grid must be strictly increasing");
    for (double v : values)
        if (!std::isfinite(v)) throw ConfigError("interface value is not finite");
}

double SampledInterface::eval(double s, double t) const {
    const std::size_t ns = s_grid.size();
    if (t_grid.size() == 1)
        return hermite_row(s_grid, {values.begin(), values.begin() + ns}, s);
    const std::size_t j = cell_index(t_grid, t);
    const double w =
        std::clamp((t - t_grid[j]) / (t_grid[j + 1] - t_grid[j]), 0.0, 1.0);
    const std::vector<double> row0(values.begin() + j * ns, values.begin() + (j + 1) * ns);
    const std::vector<double> row1(values.begin() + (j + 1) * ns, values.begin() + (j + 2) * ns);
    return (1.0 - w) * hermite_row(s_grid, row0, s) + w * hermite_row(s_grid, row1, s);
}

double SampledInterface::eval_ds(double s, double t) const {
    const double h = 1e-6 * std::max(1.0, std::abs(s));
    return (eval(s + h, t) - eval(s - h, t)) / (2.0 * h);
}

double SampledInterface::eval_dt(double s, double t) const {
    const double h = 1e-6 * std::max(1.0, std::abs(t));
    return (eval(s, t + h) - eval(s, t - h)) / (2.0 * h);
}

SampledInterface load_interface_table(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("empty interface table");
    // Drop whitespace then require the exact header.
    std::string hdr;
    for (char c : line)
        if (!std::isspace(static_cast<unsigned char>(c))) hdr += c;
    if (hdr != "s,t,f") throw ConfigError("interface table header must be 's,t,f'");

    std::map<double, std::map<double, double>> by_t;
    std::size_t n_rows = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        double s, t, f;
        char c1, c2;
        if (!(ls >> s >> c1 >> t >> c2 >> f) || c1 != ',' || c2 != ',')
            throw ConfigError("malformed interface row: " + line);
        by_t[t][s] = f;
        ++n_rows;
    }
    if (by_t.empty()) throw ConfigError("interface table has no data rows");

    SampledInterface si;
    for (const auto& [t, row] : by_t) si.t_grid.push_back(t);
    for (const auto& [s, f] : by_t.begin()->second) si.s_grid.push_back(s);
    const std::size_t ns = si.s_grid.size();
    for (const auto& [t, row] : by_t) {
        if (row.size() != ns)
            throw ConfigError("interface table is not a complete (s, t) grid");
        std::size_t i = 0;
        for (const auto& [s, f] : row) {
            if (s != si.s_grid[i])
                throw ConfigError("interface table is not a complete (s, t) grid");
            si.values.push_back(f);
            ++i;
        }
    }
    (void)n_rows;
    si.validate();
    return si;
}

SampledInterface load_interface_table_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open interface table: " + path);
    return load_interface_table(in);
}

} // namespace mixlab
