// Exercises the command-line front end end to end: exit codes, dump and
// report artifacts, replay determinism, and the corrupted-atoms control.
// argv[1] is the path to the mixlab binary.

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

int failures = 0;

void check(bool ok, const std::string& what) {
    if (!ok) {
        ++failures;
        std::cerr << "FAILED: " << what << "\n";
    }
}

int run_cmd(const std::string& cmd) {
    const int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write(const fs::path& p, const std::string& text) {
    std::ofstream out(p);
    out << text;
}

std::vector<char> read_bytes(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: test_cli <mixlab binary>\n";
        return 1;
    }
    const std::string bin = argv[1];
    const fs::path dir = fs::temp_directory_path() / "mixlab_cli_test";
    fs::remove_all(dir);
    fs::create_directories(dir);

    const fs::path good_cfg = dir / "good.cfg";
    write(good_cfg,
          "speed_c = 1.0\n"
          "M = 5\n"
          "margin_delta = 0.05\n"
          "window = -0.375, 0.375, -0.375, 0.375, 0.7, 0.9\n"
          "s_initial = 0.125\n"
          "passes_max = 1\n"
          "quad_resolution = 128\n");

    // --- subsolution: dump + positive worst slack -------------------------
    {
        const fs::path out = dir / "sub";
        const int rc = run_cmd(bin + " subsolution --config " + good_cfg.string() + " --out " +
                               out.string() + " --resolution 64 > " + (dir / "sub.log").string());
        check(rc == 0, "subsolution exits 0");
        check(fs::exists(out / "rho.raw"), "density dump written");
        check(fs::exists(out / "profile.csv"), "profile written");
        const std::string report = slurp(out / "subsolution_report.json");
        check(report.find("worst_hull_slack") != std::string::npos, "slack report present");
        const auto pos = report.find("\"worst_hull_slack\": ");
        const double slack = std::stod(report.substr(pos + 20));
        check(slack > 0.0, "worst hull slack positive");
    }

    // --- validation failures ---------------------------------------------
    {
        const fs::path bad = dir / "bad_speed.cfg";
        write(bad, "speed_c = 2.5\nM=5\nwindow=-1,1,-1,1,0.5,1\ns_initial=0.125\n");
        const fs::path log = dir / "bad_speed.log";
        const int rc = run_cmd(bin + " run --config " + bad.string() + " --out " +
                               (dir / "x").string() + " 2> " + log.string());
        check(rc == 2, "inadmissible speed exits 2");
        check(slurp(log).find("(0, 2)") != std::string::npos, "message cites (0, 2)");
    }
    {
        const fs::path bad = dir / "missing.cfg";
        write(bad, "speed_c = 1.0\nM=5\nwindow=-1,1,-1,1,0.5,1\n");
        const fs::path log = dir / "missing.log";
        const int rc = run_cmd(bin + " run --config " + bad.string() + " --out " +
                               (dir / "x").string() + " 2> " + log.string());
        check(rc == 2, "missing key exits 2");
        check(slurp(log).find("s_initial") != std::string::npos, "message lists the key");
    }
    {
        const int rc = run_cmd(bin + " verify --atoms " + (dir / "nope.mix").string() + " 2> " +
                               (dir / "io.log").string());
        check(rc == 4, "missing atoms file exits 4");
    }

    // --- run + verify round trip, determinism -----------------------------
    const fs::path out1 = dir / "run1";
    const fs::path out2 = dir / "run2";
    {
        const int rc1 = run_cmd(bin + " run --config " + good_cfg.string() + " --out " +
                                out1.string() + " > " + (dir / "run1.log").string());
        const int rc2 = run_cmd(bin + " run --config " + good_cfg.string() + " --out " +
                                out2.string() + " > " + (dir / "run2.log").string());
        check(rc1 == 0 && rc2 == 0, "runs exit 0");
        const auto b1 = read_bytes(out1 / "atoms.mix");
        const auto b2 = read_bytes(out2 / "atoms.mix");
        check(!b1.empty() && b1 == b2, "atoms files are bit-identical");
    }
    {
        const int rc = run_cmd(bin + " verify --atoms " + (out1 / "atoms.mix").string() +
                               " --out " + (dir / "verify1").string() + " --resolution 128 > " +
                               (dir / "verify1.log").string());
        check(rc == 0, "verify exits 0 on the recorded run");
        check(slurp(dir / "verify1.log").find("verify ok") != std::string::npos,
              "verify reports ok");
    }

    // --- corrupted atoms file is rejected ---------------------------------
    {
        auto bytes = read_bytes(out1 / "atoms.mix");
        // header: magic(8) u32 u32 u64 f64*4... ; first atom record starts
        // after header (8+4+4+8+8+8+8+8+6*8+1+1) plus pass table (n_passes * 12)
        std::uint32_t n_passes;
        std::memcpy(&n_passes, bytes.data() + 12, 4);
        const std::size_t header = 8 + 4 + 4 + 8 + 8 + 8 + 8 + 8 + 48 + 1 + 1;
        const std::size_t record0 = header + n_passes * 12;
        // flip the sign of the direction's density slot (offset 33 in the record)
        double rho;
        std::memcpy(&rho, bytes.data() + record0 + 33, 8);
        rho = -rho;
        std::memcpy(bytes.data() + record0 + 33, &rho, 8);
        const fs::path corrupted = dir / "corrupted.mix";
        std::ofstream outf(corrupted, std::ios::binary);
        outf.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        outf.close();
        const int rc = run_cmd(bin + " verify --atoms " + corrupted.string() + " 2> " +
                               (dir / "verify_bad.log").string());
        check(rc == 5, "corrupted atoms file exits 5");
    }

    // --- rectangle average on the coarse-grained field --------------------
    {
        const fs::path log = dir / "avg.log";
        const int rc = run_cmd(bin + " average --config " + good_cfg.string() +
                               " --rect -1,1,0,0.5,0.8 > " + log.string());
        check(rc == 0, "average exits 0");
        const std::string text = slurp(log);
        const auto line = text.find("\n-1,");
        check(line != std::string::npos, "csv row present");
        // density column: average over L = (0, 0.5) is 0.25
        std::istringstream row(text.substr(line + 1));
        std::string cell;
        for (int i = 0; i < 6; ++i) std::getline(row, cell, ',');
        check(std::abs(std::stod(cell) - 0.25) < 1e-9, "strip average equals 0.25");
    }

    // --- report rendering --------------------------------------------------
    {
        const int rc = run_cmd(bin + " report --in " + (out1 / "run_report.json").string() +
                               " > " + (dir / "report.log").string());
        check(rc == 0, "report exits 0");
        check(slurp(dir / "report.log").find("pass:") != std::string::npos,
              "report lists passes");
    }

    if (failures == 0) std::cout << "test_cli: all checks passed\n";
    return failures == 0 ? 0 : 1;
}
