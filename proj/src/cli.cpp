#include "asrr/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "asrr/error.hpp"
#include "asrr/noise.hpp"
#include "asrr/validate.hpp"

namespace asrr::cli {

namespace fs = std::filesystem;
using io::format_number;

AsrrState Scenario::state() const {
    require(gm.has_value(), "scenario has no -gm block (set gm or q_on)");
    SrrParams ring = srr;
    ring.csrr = srr.csrr - gm->c_gm;
    return {ring, *gm};
}

double Scenario::closed_form_shunt() const {
    if (!active()) return 0.0;
    return 1.0 / srr.parallel_loss() - gm->gm_total();
}

SrrParams Scenario::closed_form_srr() const {
    return active() ? srr.with_quality(kMaxQuality) : srr;
}

Scenario scenario_from_config(const io::Config& cfg) {
    Scenario sc;
    const double c_gm = cfg.number_or("c_gm", 0.0);
    auto f0 = cfg.maybe("f0");
    auto l = cfg.maybe("lsrr");
    auto c = cfg.maybe("csrr");
    if (c) *c += c_gm;
    if (l && c) {
        sc.srr.lsrr = *l;
        sc.srr.csrr = *c;
    } else if (f0 && l) {
        sc.srr.lsrr = *l;
        sc.srr.csrr = 1.0 / (std::pow(hz_to_rad(*f0), 2) * *l);
    } else if (f0 && c) {
        sc.srr.csrr = *c;
        sc.srr.lsrr = 1.0 / (std::pow(hz_to_rad(*f0), 2) * *c);
    } else {
        throw ConfigError("config needs two of f0, lsrr, csrr");
    }
    if (f0 && l && c) {
        throw ConfigError("f0, lsrr and csrr over-determine the resonator; give two");
    }
    sc.srr.q_off = cfg.number_or("q_off", 10.0);
    sc.f0_hz = rad_to_hz(sc.srr.omega0());
    const double w0 = sc.srr.omega0();
    sc.z0 = cfg.number_or("z0", 50.0);
    sc.p_in = cfg.number_or("p_in", 1e-3);

    if (cfg.has("ltl") || cfg.has("ctl")) {
        sc.line = {cfg.number("ltl"), cfg.number("ctl"), cfg.number_or("line_length", 100e-6)};
    } else {
        sc.line = TransmissionLineSection::from_electrical_length(
            sc.z0, cfg.number_or("beta_l", 0.463), w0, cfg.number_or("line_length", 100e-6));
    }

    sc.q_on = sc.srr.q_off;
    if (cfg.has("gm") || cfg.has("q_on")) {
        GmBlockParams gm;
        const double r = sc.srr.parallel_loss();
        gm.gm0 = cfg.has("gm") ? cfg.number("gm") : (1.0 - sc.srr.q_off / cfg.number("q_on")) / r;
        gm.vdd = cfg.number_or("vdd", 1.2);
        gm.vth = cfg.number_or("vth", 0.4);
        const double v_ov = gm.vdd / 2.0 - gm.vth;
        if (v_ov <= 0.0 && !(cfg.has("kn_wl") && cfg.has("kp_wl"))) {
            throw ConfigError("vdd/2 must exceed vth to derive kn_wl, kp_wl");
        }
        gm.kn_wl = cfg.number_or("kn_wl", gm.gm0 / v_ov);
        gm.kp_wl = cfg.number_or("kp_wl", gm.gm0 / v_ov);
        gm.lambda = cfg.number_or("lambda", 0.0);
        gm.c_gm = c_gm;
        gm.kf = cfg.number_or("kf", 1e-10);
        gm.gamma = cfg.number_or("gamma", 1.0);
        sc.gm = gm;
        sc.q_on = sc.state().q_on();
    }

    if (cfg.has("k") && cfg.text("k") != "matched") {
        sc.srr.k = cfg.number("k");
    } else {
        sc.srr.k = 1.0 / std::sqrt(sc.line.electrical_length(w0) * sc.q_on);
    }
    sc.srr.validate();
    return sc;
}

DesignSpec design_spec_from_config(const io::Config& cfg) {
    DesignSpec s;
    s.f0 = cfg.number("f0");
    s.n_pixels = cfg.integer_or("n_pixels", 1);
    s.il_budget = cfg.number("il_budget");
    s.snr_dc_target = cfg.number("snr_dc_target");
    s.snr_dr_target = cfg.number("snr_dr_target");
    s.delta_r_ref = cfg.number_or("delta_r_ref", 1.0);
    s.z0 = cfg.number_or("z0", 50.0);
    const double w0 = hz_to_rad(s.f0);
    if (cfg.has("ltl") || cfg.has("ctl")) {
        s.line = {cfg.number("ltl"), cfg.number("ctl"), cfg.number_or("line_length", 100e-6)};
    } else {
        s.line = TransmissionLineSection::from_electrical_length(
            s.z0, cfg.number("beta_l"), w0, cfg.number_or("line_length", 100e-6));
    }
    s.q_off = cfg.number_or("q_off", 10.0);
    s.kn_prime = cfg.number("kn_prime");
    s.kp_prime = cfg.number_or("kp_prime", s.kn_prime);
    s.vth = cfg.number("vth");
    s.vdd = cfg.number("vdd");
    s.kf_area = cfg.number("kf_area");
    s.c_gm_per_area = cfg.number("c_gm_per_area");
    s.c_srr_intrinsic = cfg.number_or("c_srr_intrinsic", 0.0);
    s.l_srr_max = cfg.number("l_srr_max");
    s.flicker_band = {cfg.number_or("f_lo", 1.0), cfg.number_or("f_hi", 1e3)};
    return s;
}

namespace {

struct Context {
    io::Config cfg;
    fs::path out_dir;
    std::string format = "csv";
    std::optional<io::FrequencyGrid> grid;
    bool quiet = false;
    std::ostream& out;

    void emit(const std::string& name, const std::string& content) const {
        const auto path = out_dir / name;
        io::write_atomic(path, content);
        if (!quiet) out << "wrote " << path.string() << "\n";
    }
    void say(const std::string& line) const {
        if (!quiet) out << line << "\n";
    }
};

std::vector<double> logspace(double a, double b, int n) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        v[static_cast<std::size_t>(i)] =
            n == 1 ? a : a * std::pow(b / a, static_cast<double>(i) / (n - 1));
    }
    return v;
}

TwoPortSweep scenario_sweep(const Scenario& sc, const io::Config& cfg, std::span<const double> w) {
    SweepOptions opt;
    opt.z0_ref = sc.z0;
    const std::string model = cfg.has("model") ? cfg.text("model") : "equivalent";
    if (model == "closed_form") {
        opt.model = ImpedanceModel::closed_form;
        opt.shunt_conductance = sc.closed_form_shunt();
        return s_parameters(sc.closed_form_srr(), sc.line, w, opt);
    }
    if (model != "equivalent") throw ConfigError("model must be 'equivalent' or 'closed_form'");
    opt.include_line_inductance = cfg.has("line_inductance") && cfg.text("line_inductance") == "true";
    return s_parameters(sc.boosted(), sc.line, w, opt);
}

io::FrequencyGrid grid_for(const Context& ctx, const Scenario& sc) {
    return ctx.grid ? *ctx.grid : io::auto_grid(sc.f0_hz, sc.q_on);
}

int cmd_sweep(const Context& ctx) {
    const auto sc = scenario_from_config(ctx.cfg);
    const auto grid = grid_for(ctx, sc);
    const auto sweep = scenario_sweep(sc, ctx.cfg, grid.omegas());
    std::ostringstream csv;
    io::write_sweep_csv(csv, sweep);
    ctx.emit("sweep.csv", csv.str());
    if (ctx.format == "s2p") {
        std::ostringstream s2p;
        io::write_touchstone(s2p, sweep);
        ctx.emit("sweep.s2p", s2p.str());
    }
    const auto at_f0 = scenario_sweep(sc, ctx.cfg, std::vector<double>{sc.srr.omega0()});
    ctx.say("f0 = " + format_number(sc.f0_hz) + " Hz, Q_ON = " + format_number(sc.q_on) +
            ", k = " + format_number(sc.srr.k));
    ctx.say("|S21(f0)| = " + format_number(db20(std::abs(at_f0.s21[0]))) + " dB, |S11(f0)| = " +
            format_number(std::abs(at_f0.s11[0])));
    if (sc.srr.k > 0.0) {
        const auto eq = equivalent_resonator(sc.boosted(), sc.line);
        ctx.say("S_RES = " + format_number(output_phase_slope(eq, sc.z0)) + " s/rad");
    }
    return kExitOk;
}

int cmd_match(const Context& ctx) {
    const auto sc = scenario_from_config(ctx.cfg);
    const double w0 = sc.srr.omega0();
    std::ostringstream locus;
    locus << "k,q_on\n";
    for (double k : logspace(0.05, 0.5, 19)) {
        locus << format_number(k) << ',' << format_number(optimum_q_for_k(k, sc.line, w0)) << '\n';
    }
    ctx.emit("match_locus.csv", locus.str());
    std::ostringstream grid;
    grid << "k,q_on,mag_s11\n";
    SweepOptions opt;
    opt.z0_ref = sc.z0;
    for (double k : logspace(0.02, 0.5, 41)) {
        for (double q : logspace(2.0, 500.0, 41)) {
            SrrParams s = sc.srr.with_quality(q);
            s.k = k;
            const auto sp = s_parameters_at(s, sc.line, w0, opt);
            grid << format_number(k) << ',' << format_number(q) << ',' << format_number(std::abs(sp.s11))
                 << '\n';
        }
    }
    ctx.emit("match_s11.csv", grid.str());
    ctx.say("beta*l = " + format_number(sc.line.electrical_length(w0)));
    ctx.say("optimum k for Q_ON = " + format_number(sc.q_on) + ": " +
            format_number(optimum_k_for_q(sc.q_on, sc.line, w0)));
    return kExitOk;
}

int cmd_nonlin(const Context& ctx) {
    const auto sc = scenario_from_config(ctx.cfg);
    const auto state = sc.state();
    const double p_lin = linear_power_limit(state);
    NonlinearOptions opt;
    if (ctx.cfg.has("average") && ctx.cfg.text("average") == "approx") opt.average = GmAverage::approx;
    if (ctx.cfg.has("split") && ctx.cfg.text("split") == "general") {
        opt.split = PowerSplit::general;
        opt.line = sc.line;
        opt.z0 = sc.z0;
    }
    const double p0 = ctx.cfg.number_or("p_start", p_lin * 1e-2);
    const double p1 = ctx.cfg.number_or("p_stop", p_lin * 1e2);
    const int n = ctx.cfg.integer_or("p_points", 41);
    std::ostringstream csv;
    csv << "p_in_w,p_in_dbm,v_asrr_v,q_nonlin,regime\n";
    for (double p : logspace(p0, p1, n)) {
        const auto sol = q_on_nonlinear(state, p, opt);
        csv << format_number(p) << ',' << format_number(db10(p / 1e-3)) << ','
            << format_number(sol.v_asrr) << ',' << format_number(sol.q) << ','
            << (p <= p_lin ? "linear" : "compressed") << '\n';
    }
    ctx.emit("nonlin.csv", csv.str());
    ctx.say("P_in,lin = " + format_number(p_lin) + " W (" + format_number(db10(p_lin / 1e-3)) + " dBm)");
    return kExitOk;
}

int cmd_noise(const Context& ctx) {
    const auto sc = scenario_from_config(ctx.cfg);
    NoiseContext nc{sc.state()};
    nc.z0 = sc.z0;
    nc.p_in = sc.p_in;
    nc.temperature = ctx.cfg.number_or("temperature", 290.0);
    nc.delta_omega_s = hz_to_rad(ctx.cfg.number_or("delta_f_s", 10e6));
    nc.band = {ctx.cfg.number_or("f_lo", 1.0), ctx.cfg.number_or("f_hi", 1e3)};
    const auto offsets = logspace(ctx.cfg.number_or("offset_start", 1.0),
                                  ctx.cfg.number_or("offset_stop", 1e8),
                                  ctx.cfg.integer_or("offset_points", 41));
    std::ostringstream csv;
    io::write_noise_csv(csv, noise_breakdown(nc, offsets, ctx.cfg.maybe("supply_psd")));
    ctx.emit("noise.csv", csv.str());

    std::ostringstream vs_q;
    vs_q << "q_on,white_dbch,flicker_dbch_1khz\n";
    const double r = nc.state.r_srr();
    for (double q : logspace(std::max(1.5 * sc.srr.q_off, 12.0), 250.0, 21)) {
        NoiseContext qc = nc;
        qc.state = nc.state.with_gm((1.0 - sc.srr.q_off / q) / r);
        vs_q << format_number(qc.state.q_on()) << ',' << format_number(white_ssb_phase_noise(qc)) << ','
             << format_number(flicker_phase_noise(qc, 1e3).ssb_dbch) << '\n';
    }
    ctx.emit("noise_vs_q.csv", vs_q.str());

    const auto grid = grid_for(ctx, sc);
    const auto sweep = scenario_sweep(sc, ctx.cfg, grid.omegas());
    const double offset = hz_to_rad(ctx.cfg.number_or("pm_offset", 1e6));
    std::ostringstream pm;
    pm << "detuning_hz,pm_to_am_db\n";
    for (std::size_t i = 3; i + 3 < sweep.size(); ++i) {
        pm << format_number(rad_to_hz(sweep.freqs[i]) - sc.f0_hz) << ','
           << format_number(pm_to_am_gain(sweep, sweep.freqs[i], offset)) << '\n';
    }
    ctx.emit("pm_to_am.csv", pm.str());
    ctx.say("white SSB = " + format_number(white_ssb_phase_noise(nc)) + " dBc/Hz");
    return kExitOk;
}

int cmd_snr(const Context& ctx) {
    const auto sc = scenario_from_config(ctx.cfg);
    NoiseContext nc{sc.state()};
    nc.band = {ctx.cfg.number_or("f_lo", 1.0), ctx.cfg.number_or("f_hi", 1e3)};
    const double delta_r = ctx.cfg.number_or("delta_r", 1.0);
    std::ostringstream kv;
    kv << "q_on = " << format_number(nc.state.q_on()) << "\n";
    kv << "r_asrr_ohm = " << format_number(nc.state.r_asrr()) << "\n";
    kv << "alpha_1_over_f = " << format_number(alpha_flicker(nc.state.gm())) << "\n";
    kv << "v_fn_rms_v = " << format_number(flicker_rms(nc.state.gm().kf, nc.band)) << "\n";
    kv << "snr_dc = " << format_number(snr_delta_c(nc)) << "\n";
    kv << "snr_dr = " << format_number(snr_delta_r(nc, delta_r)) << "\n";
    ctx.emit("snr.txt", kv.str());
    if (!ctx.quiet) ctx.out << kv.str();
    return kExitOk;
}

int cmd_design(const Context& ctx) {
    const auto spec = design_spec_from_config(ctx.cfg);
    const auto result = synthesize(spec);
    ctx.emit("design_report.txt", format_report(result));
    ctx.emit("design.txt", format_key_values(result));
    if (!ctx.quiet) ctx.out << format_report(result);
    return result.feasible ? kExitOk : kExitNumerical;
}

int cmd_validate(const Context& ctx, std::ostream& err) {
    validate::Options opt;
    opt.k_scale = ctx.cfg.number_or("k_scale", 1.0);
    opt.instances = ctx.cfg.integer_or("instances", 100);
    const auto results = validate::run_all(opt);
    std::ostringstream report;
    for (const auto& r : results) report << validate::format(r) << "\n";
    ctx.emit("validate.txt", report.str());
    if (!ctx.quiet) ctx.out << report.str();
    const auto failed = validate::failures(results);
    for (const auto& f : failed) err << "failed check: " << f.id << " (" << f.title << ")\n";
    return failed.empty() ? kExitOk : kExitNumerical;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"ASRR resonator analysis and design"};
    app.require_subcommand(1);
    std::string config_path;
    std::string out_dir;
    std::string format = "csv";
    std::string grid;
    bool quiet = false;
    app.add_option("--config", config_path, "config file (key = value with units)");
    app.add_option("--out", out_dir, std::string("output directory (default $") + kOutDirEnv + " or .)");
    app.add_option("--format", format, "csv or s2p")->check(CLI::IsMember({"csv", "s2p"}));
    app.add_option("--grid", grid, "frequency grid START:STOP:N");
    app.add_flag("--quiet", quiet, "suppress console output");
    const char* names[] = {"sweep", "match", "nonlin", "noise", "snr", "design", "validate"};
    const char* help[] = {"S-parameter sweep", "optimum coupling locus and S11 map",
                          "Q and swing under gm compression", "phase-noise breakdown and PM-to-AM",
                          "flicker-limited SNR", "pixel synthesis", "acceptance suite"};
    for (int i = 0; i < 7; ++i) app.add_subcommand(names[i], help[i])->fallthrough();

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    const std::string sub = app.get_subcommands().front()->get_name();
    try {
        if (out_dir.empty()) {
            const char* env = std::getenv(kOutDirEnv);
            out_dir = env && *env ? env : ".";
        }
        io::Config cfg;
        if (!config_path.empty()) {
            cfg = io::Config::load(config_path);
        } else if (sub != "validate") {
            throw ConfigError("--config is required for " + sub);
        }
        fs::create_directories(out_dir);
        Context ctx{cfg, out_dir, format, std::nullopt, quiet, out};
        if (!grid.empty()) ctx.grid = io::parse_grid(grid);
        if (sub == "sweep") return cmd_sweep(ctx);
        if (sub == "match") return cmd_match(ctx);
        if (sub == "nonlin") return cmd_nonlin(ctx);
        if (sub == "noise") return cmd_noise(ctx);
        if (sub == "snr") return cmd_snr(ctx);
        if (sub == "design") return cmd_design(ctx);
        return cmd_validate(ctx, err);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const DomainError& e) {
        err << "invalid parameters: " << e.what() << "\n";
        return kExitConfig;
    } catch (const fs::filesystem_error& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        err << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    }
}

}  // namespace asrr::cli
