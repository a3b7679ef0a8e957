// Batch front door: builds subsolutions, runs the perturbation scheme,
// replays and verifies atoms files, and extracts rectangle averages.
//
// Exit codes: 0 ok, 2 validation/config, 3 hull-violation report,
// 4 I/O failure, 5 verification failure.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "mixlab/atoms_io.hpp"
#include "mixlab/config.hpp"
#include "mixlab/diagnostics.hpp"
#include "mixlab/errors.hpp"
#include "mixlab/hull.hpp"
#include "mixlab/report.hpp"
#include "mixlab/scheme.hpp"

namespace fs = std::filesystem;
using namespace mixlab;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitHullViolation = 3;
constexpr int kExitIo = 4;
constexpr int kExitVerification = 5;

void write_grid_dump(const std::string& base, const std::string& component,
                     const std::vector<double>& data, int n, const Box2& box, double t) {
    std::ofstream raw(base + ".raw", std::ios::binary);
    if (!raw) throw IoError("cannot write dump: " + base + ".raw");
    raw.write(reinterpret_cast<const char*>(data.data()),
              static_cast<std::streamsize>(data.size() * sizeof(double)));
    std::ofstream hdr(base + ".hdr");
    if (!hdr) throw IoError("cannot write dump header: " + base + ".hdr");
    hdr << "mixlab field dump v1\n"
        << "component " << component << "\n"
        << "nx " << n << " ny " << n << "\n"
        << "x0 " << box.lo.x << " x1 " << box.hi.x << " y0 " << box.lo.y << " y1 " << box.hi.y
        << "\n"
        << "t " << t << "\n"
        << "layout row-major float64 little-endian\n";
}

struct WorstSlack {
    double slack = 1e300;
    Vec2 point;
};

WorstSlack dump_field(const FieldModel& field, const Box2& box, double t, int n,
                      const fs::path& out_dir) {
    std::vector<double> rho(static_cast<std::size_t>(n) * n), u1(rho.size()), u2(rho.size()),
        m1(rho.size()), m2(rho.size());
    WorstSlack worst;
    for (int j = 0; j < n; ++j) {
        const double y = box.lo.y + box.height() * (j + 0.5) / n;
        for (int i = 0; i < n; ++i) {
            const Vec2 p{box.lo.x + box.width() * (i + 0.5) / n, y};
            const StateZ z = field.eval(p, t);
            const std::size_t idx = static_cast<std::size_t>(j) * n + i;
            rho[idx] = z.rho;
            const Vec2 u = z.velocity_u();
            u1[idx] = u.x;
            u2[idx] = u.y;
            m1[idx] = z.m.x;
            m2[idx] = z.m.y;
            const auto cls = hull_contains(z, field.params());
            if (cls.min_slack < worst.slack) {
                worst.slack = cls.min_slack;
                worst.point = p;
            }
        }
    }
    write_grid_dump((out_dir / "rho").string(), "rho", rho, n, box, t);
    write_grid_dump((out_dir / "u1").string(), "u1", u1, n, box, t);
    write_grid_dump((out_dir / "u2").string(), "u2", u2, n, box, t);
    write_grid_dump((out_dir / "m1").string(), "m1", m1, n, box, t);
    write_grid_dump((out_dir / "m2").string(), "m2", m2, n, box, t);

    // 1-D vertical profile through the window center.
    std::ofstream csv(out_dir / "profile.csv");
    csv << "x2,rho,u1,u2,m1,m2\n";
    const double xm = 0.5 * (box.lo.x + box.hi.x);
    for (int j = 0; j < n; ++j) {
        const double y = box.lo.y + box.height() * (j + 0.5) / n;
        const StateZ z = field.eval({xm, y}, t);
        const Vec2 u = z.velocity_u();
        csv << y << ',' << z.rho << ',' << u.x << ',' << u.y << ',' << z.m.x << ',' << z.m.y
            << '\n';
    }
    return worst;
}

FieldModel base_field_from_config(const Config& cfg, SampledBuildReport* report) {
    const double c = cfg.get_double("speed_c");
    if (!(c > 0.0 && c < 2.0))
        throw ConfigError("speed_c = " + std::to_string(c) +
                          " outside the admissible range (0, 2)");
    const auto w = cfg.get_doubles("window", 6);
    HullParams params{cfg.get_double("M", 5.0), cfg.get_double("margin_delta", 0.05)};
    const std::string interface_path = cfg.get_string("interface_file", "");
    SubsolutionField base = [&] {
        if (interface_path.empty()) return SubsolutionField::flat(c, w[5]);
        SampledFieldOptions opts;
        opts.bs_box = {{w[0], w[2] - 1.0}, {w[1], w[3] + 1.0}};
        opts.t_lo = 0.5 * w[4];
        opts.t_hi = w[5];
        return SubsolutionField::sampled(
            MixingGeometry(c, w[5], load_interface_table_file(interface_path)), params, opts,
            report);
    }();
    return {std::move(base), params, Profile::by_name(cfg.get_string("profile", "cosine"))};
}

int cmd_subsolution(const std::string& config_path, const std::string& out_dir, int resolution) {
    const Config cfg = Config::parse_file(config_path);
    SampledBuildReport build_report;
    const FieldModel field = base_field_from_config(cfg, &build_report);
    const auto w = cfg.get_doubles("window", 6);
    const Box2 box{{w[0], w[2]}, {w[1], w[3]}};

    fs::create_directories(out_dir);
    const WorstSlack worst = dump_field(field, box, w[5], resolution, out_dir);

    nlohmann::json doc;
    doc["worst_hull_slack"] = worst.slack;
    doc["worst_hull_point"] = {worst.point.x, worst.point.y};
    doc["t"] = w[5];
    doc["provenance"] = {{"config_hash", cfg.hash()}};
    if (!field.base().flat_closed_form()) {
        doc["sampled_build"] = {
            {"worst_hull_slack", build_report.worst_hull_slack},
            {"worst_conservation_residual", build_report.worst_conservation_residual},
            {"gamma_clamped_nodes", build_report.gamma_clamped_nodes},
            {"hull_violation", build_report.hull_violation}};
    }
    write_json_file((fs::path(out_dir) / "subsolution_report.json").string(), doc);

    std::cout << "subsolution dump written to " << out_dir << ", worst hull slack "
              << worst.slack << "\n";
    if (!field.base().flat_closed_form() && build_report.hull_violation) {
        std::cerr << "hull violation reported by the sampled construction\n";
        return kExitHullViolation;
    }
    return 0;
}

int cmd_run(const std::string& config_path, const std::string& out_dir) {
    const Config cfg = Config::parse_file(config_path);
    const RunConfig rc = make_run_config(cfg);
    auto [field, report] = run_scheme(rc);

    fs::create_directories(out_dir);
    write_atoms_file((fs::path(out_dir) / "atoms.mix").string(), field, rc, cfg.hash(),
                     report.J_final);
    nlohmann::json doc = make_report_document(&report, {}, {}, {}, cfg.hash());
    write_json_file((fs::path(out_dir) / "run_report.json").string(), doc);
    std::cout << "run complete: J " << report.J_initial << " -> " << report.J_final << " over "
              << report.passes.size() << " passes, " << field.atoms().size() << " atoms\n";
    return 0;
}

int cmd_verify(const std::string& atoms_path, const std::string& out_dir, int resolution) {
    const AtomsFile file = read_atoms_file(atoms_path);
    const FieldModel field = field_from_atoms(file);
    const SpaceTimeWindow window = file.window();

    std::vector<std::string> failures;

    const JResult j = relaxation_error_J(field, window, resolution, 32);
    if (std::abs(j.value - file.header.final_J) > 1e-10 * std::max(1.0, std::abs(j.value)))
        failures.push_back("replayed J " + std::to_string(j.value) +
                           " does not match recorded " + std::to_string(file.header.final_J));

    // Deterministic sample confinement check; small negative slack allowed at
    // cutoff fringes.
    double worst_slack = 1e300;
    std::uint64_t lcg = 0x2545F4914F6CDD1Dull;
    auto next01 = [&lcg]() {
        lcg = lcg * 6364136223846793005ull + 1442695040888963407ull;
        return static_cast<double>(lcg >> 11) / 9007199254740992.0;
    };
    for (int i = 0; i < 10000; ++i) {
        const Vec2 p{window.space.lo.x + window.space.width() * next01(),
                     window.space.lo.y + window.space.height() * next01()};
        const double t = window.t0 + window.duration() * next01();
        const auto cls = hull_contains(field.eval(p, t), field.params());
        worst_slack = std::min(worst_slack, cls.min_slack);
    }
    if (worst_slack < -1e-9)
        failures.push_back("hull confinement violated, slack " + std::to_string(worst_slack));

    // Degraded averages with the constant envelope over three slices.
    std::vector<DegradedCheckReport> degraded;
    std::vector<MixingReport> mixing;
    const double c = field.base().geometry().c;
    for (int si = 0; si < 3; ++si) {
        const double t = window.t0 + window.duration() * (si + 1) / 3.0;
        auto family = rectangle_family(window.space.lo.x, window.space.hi.x, 0.9, t, 200);
        degraded.push_back(
            degraded_bound_check(field, DegradedBoundSpec::constant(), family, resolution));
        if (!degraded.back().pass)
            failures.push_back("degraded-average bound exceeded at t = " + std::to_string(t));

        std::vector<Box2> boxes;
        for (int b = 0; b < 12; ++b) {
            const double x0 = window.space.lo.x +
                              window.space.width() * (b % 4) / 4.0;
            const double half = 0.8 * c * t / 3.0;
            const double y0 = -0.8 * c * t + half * (b / 4);
            boxes.push_back({{x0, y0}, {x0 + window.space.width() / 4.0, y0 + half}});
        }
        mixing.push_back(mixing_check(field, t, boxes));
        if (!mixing.back().pass)
            failures.push_back("mixing integrals vanished at t = " + std::to_string(t));
    }

    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        nlohmann::json doc = make_report_document(nullptr, {}, degraded, mixing,
                                                  file.header.config_hash);
        doc["replayed_J"] = j.value;
        doc["recorded_J"] = file.header.final_J;
        doc["worst_sample_slack"] = worst_slack;
        write_json_file((fs::path(out_dir) / "verify_report.json").string(), doc);
    }

    if (!failures.empty()) {
        for (const auto& f : failures) std::cerr << "verify: " << f << "\n";
        return kExitVerification;
    }
    std::cout << "verify ok: J " << j.value << ", worst sample slack " << worst_slack << "\n";
    return 0;
}

int cmd_average(const std::string& atoms_path, const std::string& config_path,
                const std::vector<double>& rect, int resolution) {
    FieldModel field = [&] {
        if (!atoms_path.empty()) return field_from_atoms(read_atoms_file(atoms_path));
        return base_field_from_config(Config::parse_file(config_path), nullptr);
    }();
    RectangleQuery q;
    q.s0 = rect[0];
    q.s1 = rect[1];
    q.l0 = rect[2];
    q.l1 = rect[3];
    q.t = rect[4];
    const auto density = rectangle_average(field, Observable::density, q, resolution);
    const auto velocity = rectangle_average(field, Observable::velocity, q, resolution);
    const auto power = rectangle_average(field, Observable::power_balance, q, resolution);
    std::cout << "s0,s1,l0,l1,t,density,u1,u2,power\n";
    std::cout << q.s0 << ',' << q.s1 << ',' << q.l0 << ',' << q.l1 << ',' << q.t << ','
              << density.scalar << ',' << velocity.vector.x << ',' << velocity.vector.y << ','
              << power.scalar << "\n";
    return 0;
}

int cmd_report(const std::string& in_path) {
    std::ifstream in(in_path);
    if (!in) throw IoError("cannot open report: " + in_path);
    nlohmann::json doc;
    in >> doc;
    if (doc.contains("J_initial"))
        std::cout << "J: " << doc["J_initial"].get<double>() << " -> "
                  << doc["J_final"].get<double>() << "\n";
    if (doc.contains("pass_reports"))
        for (const auto& p : doc["pass_reports"])
            std::cout << "pass: J " << p["J_before"].get<double>() << " -> "
                      << p["J_after"].get<double>() << ", cubes " << p["cubes_perturbed"]
                      << "/" << p["cubes_total"] << "\n";
    for (const auto& d : doc.value("degraded_checks", nlohmann::json::array()))
        std::cout << "degraded check: max ratio " << d["max_ratio"].get<double>()
                  << (d["pass"].get<bool>() ? " (pass)" : " (fail)") << "\n";
    for (const auto& m : doc.value("mixing_checks", nlohmann::json::array()))
        std::cout << "mixing check: failures " << m["failures"].get<std::size_t>() << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"mixing-zone convex integration laboratory"};
    app.require_subcommand(1);

    std::string config_path, out_dir = "out", atoms_path, report_path;
    int resolution = 256;
    std::vector<double> rect;

    auto* sub = app.add_subcommand("subsolution", "build and dump the coarse-grained field");
    sub->add_option("--config", config_path)->required();
    sub->add_option("--out", out_dir);
    sub->add_option("--resolution", resolution);

    auto* run = app.add_subcommand("run", "run the perturbation scheme");
    run->add_option("--config", config_path)->required();
    run->add_option("--out", out_dir);

    auto* verify = app.add_subcommand("verify", "replay an atoms file and check invariants");
    verify->add_option("--atoms", atoms_path)->required();
    verify->add_option("--out", out_dir);
    verify->add_option("--resolution", resolution);

    auto* average = app.add_subcommand("average", "rectangle averages of the observables");
    average->add_option("--atoms", atoms_path);
    average->add_option("--config", config_path);
    average->add_option("--rect", rect, "s0,s1,l0,l1,t")->delimiter(',')->expected(5);
    average->add_option("--resolution", resolution);

    auto* report = app.add_subcommand("report", "render a JSON report as text");
    report->add_option("--in", report_path)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (sub->parsed()) {
            return cmd_subsolution(config_path, out_dir, validated_resolution(resolution));
        } else if (run->parsed()) {
            return cmd_run(config_path, out_dir);
        } else if (verify->parsed()) {
            return cmd_verify(atoms_path, out_dir, validated_resolution(resolution));
        } else if (average->parsed()) {
            if (rect.size() != 5) throw ConfigError("--rect needs s0,s1,l0,l1,t");
            if (atoms_path.empty() && config_path.empty())
                throw ConfigError("average needs --atoms or --config");
            return cmd_average(atoms_path, config_path, rect, resolution);
        } else if (report->parsed()) {
            return cmd_report(report_path);
        }
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return 0;
}
