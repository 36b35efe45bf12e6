#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "asrr/cli.hpp"
#include "asrr/io.hpp"

using namespace asrr;
namespace fs = std::filesystem;

namespace {

const char* kMatchedPixel =
    "f0 = 200 GHz\n"
    "csrr = 11.7 fF\n"
    "q_off = 10\n"
    "q_on = 54\n"
    "beta_l = 0.462962962963\n"
    "z0 = 50 Ohm\n";

const char* kReferenceDesign =
    "f0 = 200 GHz\n"
    "n_pixels = 1\n"
    "il_budget = 0.0431034482759\n"
    "snr_dc_target = 1e-3\n"
    "snr_dr_target = 1e-3\n"
    "beta_l = 0.462962962963\n"
    "kn_prime = 300 uA/V^2\n"
    "vth = 0.4 V\n"
    "vdd = 1.2 V\n"
    "kf_area = 1.17e-22\n"
    "c_gm_per_area = 1e-2\n"
    "l_srr_max = 54.1266 pH\n";

struct Run {
    int code = 0;
    std::string out;
    std::string err;
};

class Workspace {
public:
    explicit Workspace(const std::string& name)
        : dir_(fs::temp_directory_path() / ("asrr_cli_" + name)) {
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    ~Workspace() { fs::remove_all(dir_); }

    fs::path path(const std::string& leaf) const { return dir_ / leaf; }

    std::string config(const std::string& text, const std::string& leaf = "pixel.cfg") const {
        std::ofstream(path(leaf)) << text;
        return path(leaf).string();
    }

    Run run(std::vector<std::string> args) const {
        args.insert(args.begin(), "asrr");
        std::ostringstream out, err;
        Run r;
        r.code = cli::run(args, out, err);
        r.out = out.str();
        r.err = err.str();
        return r;
    }

private:
    fs::path dir_;
};

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

struct CsvRow {
    double freq_hz, mag_db, phase_deg;
};

std::vector<CsvRow> read_sweep(const fs::path& p) {
    std::ifstream f(p);
    std::string line;
    std::getline(f, line);
    std::vector<CsvRow> rows;
    while (std::getline(f, line)) {
        std::vector<double> v;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) v.push_back(std::stod(cell));
        REQUIRE(v.size() == 7);
        rows.push_back({v[0], v[5], v[6]});
    }
    return rows;
}

std::set<std::string> failed_ids(const std::string& err) {
    std::set<std::string> ids;
    std::istringstream in(err);
    std::string line;
    const std::string tag = "failed check: ";
    while (std::getline(in, line)) {
        if (line.rfind(tag, 0) == 0) ids.insert(line.substr(tag.size(), line.find(' ', tag.size()) - tag.size()));
    }
    return ids;
}

}  // namespace

TEST_CASE("matched sweep sits at -3.52 dB with the predicted phase slope") {
    Workspace ws("sweep");
    const auto cfg = ws.config(kMatchedPixel);
    const auto r = ws.run({"sweep", "--config", cfg, "--out", ws.path("out").string(), "--quiet"});
    REQUIRE(r.code == 0);
    const auto rows = read_sweep(ws.path("out/sweep.csv"));
    REQUIRE(rows.size() % 2 == 1);
    const std::size_t mid = rows.size() / 2;
    CHECK(rows[mid].freq_hz == doctest::Approx(200e9).epsilon(1e-12));
    CHECK(std::abs(rows[mid].mag_db - (-3.52)) <= 0.05);

    // Phase slope at f0 from the written samples against the equivalent model.
    const auto sc = cli::scenario_from_config(io::Config::load(cfg));
    const double expect = output_phase_slope(equivalent_resonator(sc.boosted(), sc.line), sc.z0);
    const double dphi = (rows[mid + 1].phase_deg - rows[mid - 1].phase_deg) * kPi / 180.0;
    const double dw = hz_to_rad(rows[mid + 1].freq_hz - rows[mid - 1].freq_hz);
    CHECK(std::abs(dphi / dw) == doctest::Approx(std::abs(expect)).epsilon(0.01));
}

TEST_CASE("zero coupling gives a flat 0 dB sweep") {
    Workspace ws("flat");
    const auto cfg = ws.config(std::string(kMatchedPixel) + "k = 0\n");
    REQUIRE(ws.run({"sweep", "--config", cfg, "--out", ws.path("o").string(), "--quiet"}).code == 0);
    for (const auto& row : read_sweep(ws.path("o/sweep.csv"))) {
        CHECK(std::abs(row.mag_db) < 1e-12);
        CHECK(std::abs(row.phase_deg) < 1e-12);
    }
}

TEST_CASE("outputs are byte-identical across runs") {
    Workspace ws("repeat");
    const auto cfg = ws.config(kMatchedPixel);
    for (const char* dir : {"a", "b"}) {
        const auto r = ws.run({"sweep", "--config", cfg, "--out", ws.path(dir).string(), "--format", "s2p",
                               "--grid", "199e9:201e9:101", "--quiet"});
        REQUIRE(r.code == 0);
        REQUIRE(ws.run({"noise", "--config", cfg, "--out", ws.path(dir).string(), "--quiet"}).code == 0);
    }
    for (const char* f : {"sweep.csv", "sweep.s2p", "noise.csv", "pm_to_am.csv", "noise_vs_q.csv"}) {
        INFO(f);
        const auto a = slurp(ws.path(std::string("a/") + f));
        CHECK_FALSE(a.empty());
        CHECK(a == slurp(ws.path(std::string("b/") + f)));
    }
}

TEST_CASE("the output directory defaults to the environment variable") {
    Workspace ws("env");
    const auto cfg = ws.config(kMatchedPixel);
    const auto dir = ws.path("from_env");
    setenv(cli::kOutDirEnv, dir.string().c_str(), 1);
    const auto r = ws.run({"snr", "--config", cfg, "--quiet"});
    unsetenv(cli::kOutDirEnv);
    REQUIRE(r.code == 0);
    CHECK(fs::exists(dir / "snr.txt"));
}

TEST_CASE("analysis subcommands write their files") {
    Workspace ws("all");
    const auto cfg = ws.config(kMatchedPixel);
    const auto out = ws.path("o").string();
    CHECK(ws.run({"match", "--config", cfg, "--out", out, "--quiet"}).code == 0);
    CHECK(fs::exists(ws.path("o/match_locus.csv")));
    CHECK(fs::exists(ws.path("o/match_s11.csv")));
    const auto nl = ws.run({"nonlin", "--config", cfg, "--out", out});
    CHECK(nl.code == 0);
    CHECK(nl.out.find("P_in,lin = ") != std::string::npos);
    CHECK(slurp(ws.path("o/nonlin.csv")).rfind("p_in_w,p_in_dbm,v_asrr_v,q_nonlin,regime\n", 0) == 0);
    const auto snr = ws.run({"snr", "--config", cfg, "--out", out});
    CHECK(snr.code == 0);
    CHECK(snr.out.find("snr_dc = ") != std::string::npos);
}

TEST_CASE("design subcommand") {
    Workspace ws("design");
    const auto good = ws.config(kReferenceDesign);
    const auto r = ws.run({"design", "--config", good, "--out", ws.path("o").string(), "--quiet"});
    CHECK(r.code == 0);
    CHECK(slurp(ws.path("o/design.txt")).find("feasible = true") != std::string::npos);
    std::string text = kReferenceDesign;
    text.replace(text.find("il_budget = 0.0431034482759"), 27, "il_budget = 0.6");
    const auto bad = ws.config(text, "bad.cfg");
    const auto r2 = ws.run({"design", "--config", bad, "--out", ws.path("o2").string(), "--quiet"});
    CHECK(r2.code == cli::kExitNumerical);
    CHECK(slurp(ws.path("o2/design.txt")).find("binding_constraint = geometric_coupling") != std::string::npos);
}

TEST_CASE("bad input maps to exit code 1") {
    Workspace ws("bad");
    const auto out = ws.path("o").string();
    CHECK(ws.run({"sweep", "--config", ws.config("f0 = 200 GHz\n"), "--out", out}).code == cli::kExitConfig);
    CHECK(ws.run({"sweep", "--config", ws.config("f0 = 200 bananas\ncsrr = 1 fF\n", "u.cfg"), "--out", out}).code ==
          cli::kExitConfig);
    CHECK(ws.run({"sweep", "--config", ws.path("missing.cfg").string(), "--out", out}).code == cli::kExitConfig);
    CHECK(ws.run({"sweep", "--out", out}).code == cli::kExitConfig);
    CHECK(ws.run({"sweep", "--bogus"}).code == cli::kExitConfig);
    CHECK(ws.run({}).code == cli::kExitConfig);
    CHECK(ws.run({"sweep", "--config", ws.config(kMatchedPixel, "f.cfg"), "--format", "xml"}).code ==
          cli::kExitConfig);
    // gm R_SRR >= 1 is an oscillating pixel, an invalid operating point.
    const auto osc = ws.config(std::string(kMatchedPixel).replace(std::string(kMatchedPixel).find("q_on = 54"), 9,
                                                                  "gm = 1 S"),
                               "osc.cfg");
    CHECK(ws.run({"sweep", "--config", osc, "--out", out}).code == cli::kExitConfig);
}

TEST_CASE("help exits cleanly") {
    Workspace ws("help");
    const auto r = ws.run({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("sweep") != std::string::npos);
}

TEST_CASE("validate flags a corrupted coupling") {
    Workspace ws("validate");
    const auto base = ws.run({"validate", "--out", ws.path("a").string(), "--quiet"});
    const auto corrupted = ws.run({"validate", "--config", ws.config("k_scale = 1.1\n"), "--out",
                                   ws.path("b").string(), "--quiet"});
    CHECK(corrupted.code == cli::kExitNumerical);
    const auto before = failed_ids(base.err);
    const auto after = failed_ids(corrupted.err);
    INFO("baseline failures: " << base.err);
    INFO("corrupted failures: " << corrupted.err);
    CHECK(after.size() > before.size());
    for (const auto& id : before) CHECK(after.count(id) == 1);
    CHECK(fs::exists(ws.path("b/validate.txt")));
}
