#include "mixlab/report.hpp"

#include <fstream>
#include <iomanip>

#include "mixlab/errors.hpp"

namespace mixlab {

using nlohmann::json;

json to_json(const PassReport& r) {
    json k_hist = json::object();
    for (const auto& [k, n] : r.k_histogram) k_hist[std::to_string(k)] = n;
    return {{"J_before", r.J_before},
            {"J_after", r.J_after},
            {"predicted_gain", r.predicted_gain},
            {"cubes_total", r.cubes_total},
            {"cubes_perturbed", r.cubes_perturbed},
            {"cubes_skipped", r.cubes_skipped},
            {"cap_warnings", r.cap_warnings},
            {"k_histogram", k_hist},
            {"gain_ratios", r.gain_ratios}};
}

json to_json(const RunReport& r) {
    json passes = json::array();
    for (const auto& p : r.passes) passes.push_back(to_json(p));
    return {{"J_initial", r.J_initial},
            {"J_final", r.J_final},
            {"pass_sides", r.pass_sides},
            {"passes", passes}};
}

json to_json(const DegradedCheckReport& r) {
    return {{"max_ratio", r.max_ratio},
            {"rectangles", r.rectangles},
            {"pass", r.pass},
            {"worst",
             {{"s0", r.worst.query.s0},
              {"s1", r.worst.query.s1},
              {"l0", r.worst.query.l0},
              {"l1", r.worst.query.l1},
              {"t", r.worst.query.t},
              {"average", r.worst.average},
              {"bound", r.worst.bound},
              {"ratio", r.worst.ratio}}}};
}

json to_json(const MixingReport& r) {
    json boxes = json::array();
    for (const auto& b : r.boxes)
        boxes.push_back({{"x0", b.box.lo.x},
                         {"x1", b.box.hi.x},
                         {"y0", b.box.lo.y},
                         {"y1", b.box.hi.y},
                         {"heavy", b.integral_heavy},
                         {"light", b.integral_light},
                         {"pass", b.pass}});
    return {{"failures", r.failures}, {"pass", r.pass}, {"boxes", boxes}};
}

json to_json(const ResidualTable& t) {
    json rows = json::array();
    for (const auto& r : t.rows)
        rows.push_back(
            {{"spacing", r.spacing}, {"row0", r.row0}, {"row1", r.row1}, {"row2", r.row2}});
    return {{"order0", t.order0},
            {"order1", t.order1},
            {"order2", t.order2},
            {"rows", rows},
            {"window",
             {{"x0", t.window.space.lo.x},
              {"x1", t.window.space.hi.x},
              {"y0", t.window.space.lo.y},
              {"y1", t.window.space.hi.y},
              {"t0", t.window.t0},
              {"t1", t.window.t1}}}};
}

json make_report_document(const RunReport* run, const std::vector<ResidualTable>& residual_tables,
                          const std::vector<DegradedCheckReport>& degraded_checks,
                          const std::vector<MixingReport>& mixing_checks,
                          std::uint64_t config_hash) {
    json doc;
    doc["pass_reports"] = run ? to_json(*run)["passes"] : json::array();
    if (run) {
        doc["J_initial"] = run->J_initial;
        doc["J_final"] = run->J_final;
    }
    doc["residual_tables"] = json::array();
    for (const auto& t : residual_tables) doc["residual_tables"].push_back(to_json(t));
    doc["degraded_checks"] = json::array();
    for (const auto& d : degraded_checks) doc["degraded_checks"].push_back(to_json(d));
    doc["mixing_checks"] = json::array();
    for (const auto& m : mixing_checks) doc["mixing_checks"].push_back(to_json(m));
    std::ostringstream hash_hex;
    hash_hex << std::hex << std::setw(16) << std::setfill('0') << config_hash;
    doc["provenance"] = {{"config_hash", hash_hex.str()}};
    return doc;
}

void write_json_file(const std::string& path, const json& doc) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write report: " + path);
    out << doc.dump(2) << '\n';
}

} // namespace mixlab
