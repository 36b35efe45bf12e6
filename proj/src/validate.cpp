#include "asrr/validate.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

#include "asrr/design.hpp"
#include "asrr/error.hpp"
#include "asrr/fixtures.hpp"
#include "asrr/io.hpp"
#include "asrr/noise.hpp"
#include "asrr/oracle.hpp"

namespace asrr::validate {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

CheckResult make(int criterion, std::string id, std::string title, double measured,
                 double tolerance, bool passed, std::string detail = {}) {
    CheckResult r;
    r.criterion = criterion;
    r.id = std::move(id);
    r.title = std::move(title);
    r.measured = measured;
    r.tolerance = tolerance;
    r.passed = passed;
    r.detail = std::move(detail);
    return r;
}

CheckResult info(CheckResult r) {
    r.informational = true;
    return r;
}

CheckResult within(int c, std::string id, std::string title, double err, double tol,
                   std::string detail = {}) {
    return make(c, std::move(id), std::move(title), err, tol, err <= tol, std::move(detail));
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

std::string num(double v) { return io::format_number(v); }

/// Reference SRR with its coupling set for optimum matching at quality q.
SrrParams matched_reference(double q, const Options& o) {
    const auto ref = fixtures::reference();
    SrrParams s = ref.srr().with_quality(q);
    s.k = optimum_k_for_q(q, ref.line(), ref.omega0()) * o.k_scale;
    return s;
}

/// S21 through the exact reflected impedance, line inductance excluded.
cplx reflected_s21(const SrrParams& srr, const TransmissionLineSection& line, double z0, double g,
                   double w) {
    const cplx z = series_loading_impedance(srr, line, w, g) - cplx{0.0, w * line.ltl};
    return series_element_sparams(z, z0).s21;
}

std::vector<double> linspace(double a, double b, std::size_t n) {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = a + (b - a) * static_cast<double>(i) / (n - 1);
    return out;
}

// 1. |S11| = 1/3 and |S21| = -3.52 dB at resonance on the matching locus.
std::vector<CheckResult> criterion1(const Options& o) {
    const auto t0 = Clock::now();
    fixtures::InstanceGenerator gen(o.seed);
    double err11 = 0.0;
    double err21 = 0.0;
    for (int i = 0; i < o.instances; ++i) {
        auto inst = gen.matched();
        inst.srr.k *= o.k_scale;
        SweepOptions opt;
        opt.z0_ref = inst.z0;
        const auto s = s_parameters_at(inst.srr, inst.line, inst.srr.omega0(), opt);
        err11 = std::max(err11, std::abs(std::abs(s.s11) - 1.0 / 3.0));
        err21 = std::max(err21, std::abs(db20(std::abs(s.s21)) + 3.52));
    }
    const double dt = seconds_since(t0);
    return {
        within(1, "1.s11", "matched |S11(w0)| = 1/3 over random instances", err11, 1e-3),
        within(1, "1.s21", "matched |S21(w0)| = -3.52 dB over random instances", err21, 0.05),
        within(1, "1.runtime", "criterion 1 runtime (s)", dt, 5.0),
    };
}

// 2. Closed-form S-parameters against the nodal solver over +/-3 bandwidths.
std::vector<CheckResult> criterion2(const Options& o) {
    const auto t0 = Clock::now();
    fixtures::InstanceGenerator gen(o.seed + 1);
    double err11 = 0.0;
    double err21 = 0.0;
    double frozen = 0.0;
    double frozen_bound = 0.0;
    for (int i = 0; i < 2 * o.instances; ++i) {
        const bool active = i >= o.instances;
        const auto inst = active ? gen.active() : gen.passive();
        const double w0 = inst.srr.omega0();
        const double bw = w0 / inst.q_on;
        const auto grid = linspace(std::max(0.05 * w0, w0 - 3.0 * bw), w0 + 3.0 * bw, 121);
        SweepOptions opt;
        opt.model = ImpedanceModel::closed_form;
        opt.shunt_conductance = inst.shunt_g;
        opt.z0_ref = inst.z0;
        const auto analytic = s_parameters(inst.srr, inst.line, grid, opt);
        const auto mesh =
            oracle::sweep(oracle::MeshCircuit::from(inst.srr, inst.line, inst.z0, inst.shunt_g), grid);
        SweepOptions frozen_opt;
        frozen_opt.include_line_inductance = true;
        frozen_opt.z0_ref = inst.z0;
        const auto eq_model =
            s_parameters(inst.srr.with_quality(inst.q_on), inst.line, grid, frozen_opt);
        for (std::size_t j = 0; j < grid.size(); ++j) {
            err11 = std::max(err11, std::abs(std::abs(analytic.s11[j]) - std::abs(mesh.s11[j])));
            err21 = std::max(err21, std::abs(std::abs(analytic.s21[j]) - std::abs(mesh.s21[j])));
            if (!active) {
                frozen = std::max(frozen, std::abs(std::abs(eq_model.s21[j]) - std::abs(mesh.s21[j])));
            }
        }
        if (!active) frozen_bound = std::max(frozen_bound, 1.0 / inst.q_on);
    }
    const double dt = seconds_since(t0);
    return {
        within(2, "2.mesh_s11", "closed-form vs nodal |S11|, passive and active", err11, 1e-3),
        within(2, "2.mesh_s21", "closed-form vs nodal |S21|, passive and active", err21, 1e-3),
        within(2, "2.runtime", "criterion 2 runtime (s)", dt, 20.0),
        info(within(2, "2.frozen_s21", "frozen R'L'C' model vs nodal |S21| (passive)", frozen, 1e-3,
                    "largest 1/Q in the set = " + num(frozen_bound))),
    };
}

// 3. Sample sensitivities of the reference pixel, each cross-checked by
// finite differences of the S21 model.
std::vector<CheckResult> criterion3(const Options& o) {
    const auto ref = fixtures::reference();
    const auto line = ref.line();
    const double z0 = ref.z0;
    SrrParams srr = ref.srr();
    srr.k *= o.k_scale;
    const AsrrState state(srr, ref.gm_block());
    const double gm = state.gm().gm_total();
    const double r_srr = state.r_srr();
    // R_SRR and the -gm both sit across the capacitor of a lossless ring.
    const SrrParams ring = state.passive_srr().with_quality(kMaxQuality);
    std::vector<CheckResult> out;

    // Resonance as the zero of the reflected S21 phase.
    auto resonance = [&](double c) {
        SrrParams s = ring;
        s.csrr = c;
        const double w = s.omega0();
        auto phase = [&](double x) { return std::arg(reflected_s21(s, line, z0, 1.0 / r_srr - gm, x)); };
        return oracle::brent(phase, w * (1.0 - 0.5 / ref.q_on), w * (1.0 + 0.5 / ref.q_on), 1e-12 * w);
    };
    const double c = state.c_asrr();
    const double dw_dc = sample_response(state, {1e-18, 0.0}).delta_omega0 / 1e-18;
    const double dc = 1e-4 * c;
    const double dw_dc_fd = (resonance(c + dc) - resonance(c - dc)) / (2.0 * dc);
    out.push_back(within(3, "3.dw0_dc", "dw0/dC vs -5.35e25 rad/(s F)", rel(dw_dc, -5.35e25), 0.02,
                         "analytic " + num(dw_dc)));
    out.push_back(within(3, "3.dw0_dc_fd", "dw0/dC analytic vs S21 finite difference",
                         rel(dw_dc, dw_dc_fd), 0.02, "fd " + num(dw_dc_fd)));

    auto slope_vs_r = [&](const SrrParams& s, double g_active) {
        const double dr = 1e-4 * r_srr;
        auto slope = [&](double r) {
            return oracle::numeric_phase_slope(s, line, z0, 1.0 / r - g_active);
        };
        return (slope(r_srr + dr) - slope(r_srr - dr)) / (2.0 * dr);
    };

    // Passive: same ring, matched at Q_OFF.
    SrrParams passive = srr;
    passive.k = optimum_k_for_q(ref.q_off, line, ref.omega0()) * o.k_scale;
    GmBlockParams off = ref.gm_block();
    off.gm0 = 0.0;
    const AsrrState passive_state(passive, off);
    const double ds_passive = sample_response(passive_state, {0.0, 1.0}).delta_sres;
    SrrParams passive_ring = ring;
    passive_ring.k = passive.k;
    const double ds_passive_fd = slope_vs_r(passive_ring, 0.0);
    out.push_back(within(3, "3.dsres_dr_passive", "dS_RES/dR passive vs 13e-15",
                         rel(ds_passive, 13e-15), 0.02, "analytic " + num(ds_passive)));
    out.push_back(within(3, "3.dsres_dr_passive_fd", "dS_RES/dR passive analytic vs S21 finite difference",
                         rel(ds_passive, ds_passive_fd), 0.02, "fd " + num(ds_passive_fd)));

    const double ds_active = sample_response(state, {0.0, 1.0}).delta_sres;
    const double ds_active_fd = slope_vs_r(ring, gm);
    out.push_back(within(3, "3.dsres_dr_active", "dS_RES/dR at Q_ON/Q_OFF = 54/10 vs 380e-15",
                         rel(ds_active, 380e-15), 0.02, "analytic " + num(ds_active)));
    out.push_back(within(3, "3.dsres_dr_active_fd", "dS_RES/dR active analytic vs S21 finite difference",
                         rel(ds_active, ds_active_fd), 0.02, "fd " + num(ds_active_fd)));
    return out;
}

// 4. Output phase slope (2/3) Q_ON / w0 and Q_out = Q_ON / 3.
std::vector<CheckResult> criterion4(const Options& o) {
    const auto ref = fixtures::reference();
    const auto line = ref.line();
    double err_q = 0.0;
    double err_fd = 0.0;
    double err_reflected = 0.0;
    for (double q : {20.0, 50.0, 100.0, 250.0}) {
        const SrrParams s = matched_reference(q, o);
        const auto eq = equivalent_resonator(s, line);
        const double w0 = s.omega0();
        err_q = std::max(err_q, rel(effective_output_q(eq, ref.z0), q / 3.0));
        SweepOptions opt;
        opt.z0_ref = ref.z0;
        auto phase = [&](double w) { return std::arg(s_parameters_at(s, line, w, opt).s21); };
        const double expected = 2.0 / 3.0 * q / w0;
        err_fd = std::max(err_fd, rel(oracle::five_point_derivative(phase, w0, 1e-3 * w0 / q), expected));
        err_reflected =
            std::max(err_reflected, rel(oracle::numeric_phase_slope(s, line, ref.z0), expected));
    }
    return {
        within(4, "4.q_out", "Q_out = Q_ON/3 analytically, Q_ON in {20,50,100,250}", err_q, 1e-6),
        within(4, "4.slope_fd", "dphi/dw at w0 = (2/3)Q_ON/w0 by finite difference", err_fd, 0.01),
        within(4, "4.slope_fd_reflected", "same slope through the exact reflected impedance",
               err_reflected, 0.01),
    };
}

// 5. Detection band: closed form vs numeric extrema of the S21 phase.
std::vector<CheckResult> criterion5(const Options& o) {
    const auto ref = fixtures::reference();
    const auto line = ref.line();
    double err_roots = 0.0;
    double err_reactance = 0.0;
    double err_limit = 0.0;
    double numeric_bw = 0.0;
    std::ostringstream detail;
    for (double q : {20.0, 50.0, 100.0, 250.0}) {
        const SrrParams s = matched_reference(q, o);
        const double w0 = s.omega0();
        const auto band = detection_band(w0, q);
        SweepOptions opt;
        opt.z0_ref = ref.z0;
        auto s21 = [&](double w) { return s_parameters_at(s, line, w, opt).s21; };
        const auto ext = oracle::find_phase_extrema(s21, w0 * (1.0 - 4.0 / q), w0 * (1.0 + 4.0 / q),
                                                    801, 1e-6 * w0);
        const double e = std::max(std::abs(ext.omega_low - band.omega_low),
                                  std::abs(ext.omega_high - band.omega_high)) / w0;
        err_roots = std::max(err_roots, e);
        detail << "Q=" << q << ": " << num(e) << "  ";

        // Reactance extrema of the equivalent resonator.
        const auto eq = equivalent_resonator(s, line);
        auto dx = [&](double w) {
            const double h = 1e-7 * w0;
            return (eq.impedance(w + h).imag() - eq.impedance(w - h).imag()) / (2.0 * h);
        };
        const double lo = oracle::brent(dx, w0 * (1.0 - 3.0 / q), w0, 1e-9 * w0);
        const double hi = oracle::brent(dx, w0, w0 * (1.0 + 3.0 / q), 1e-9 * w0);
        err_reactance = std::max(err_reactance, std::max(std::abs(lo - band.omega_low),
                                                         std::abs(hi - band.omega_high)) / w0);

        err_limit = std::max(err_limit, std::abs(band.width * q / w0 - 1.0) * 8.0 * q * q);
        numeric_bw = std::max(numeric_bw,
                              std::abs((ext.omega_high - ext.omega_low) * q / w0 - 1.0) * 8.0 * q * q);
    }
    return {
        within(5, "5.phase_extrema", "closed-form band edges vs numeric dphi/dw = 0 roots (/w0)",
               err_roots, 1e-4, detail.str()),
        within(5, "5.bw_limit", "|w_BW Q/w0 - 1| * 8Q^2 < 1 (closed form)", err_limit, 1.0),
        info(within(5, "5.bw_limit_numeric", "|w_BW Q/w0 - 1| * 8Q^2 from numeric extrema",
                    numeric_bw, 1.0)),
        info(within(5, "5.reactance_extrema", "closed-form band edges vs Im(Z') extrema (/w0)",
                    err_reactance, 1e-4)),
    };
}

// 6. Cycle-averaged gm and the self-consistent Q under compression.
std::vector<CheckResult> criterion6(const Options&) {
    const auto ref = fixtures::reference();
    const auto gm = ref.gm_block();
    double err_avg = 0.0;
    for (int i = 0; i < 50; ++i) {
        const double v = 3.0 * gm.vth * i / 49.0;
        const double truth = oracle::time_avg_gm(v, gm, 20000);
        err_avg = std::max(err_avg, rel(gm_avg_exact(v, gm), truth));
    }
    const double v4 = 4.0 * gm.vth;
    const double err_approx = rel(gm_avg_approx(v4, gm), gm_avg_exact(v4, gm));

    const auto state = ref.state();
    const double p_lin = linear_power_limit(state);
    double worst_rise = 0.0;
    double err_linear = 0.0;
    double prev = HUGE_VAL;
    for (int i = 0; i <= 60; ++i) {
        const double p = p_lin * std::pow(10.0, -3.0 + 4.0 * i / 60.0);
        const auto sol = q_on_nonlinear(state, p);
        if (sol.q > prev) worst_rise = std::max(worst_rise, (sol.q - prev) / prev);
        prev = sol.q;
        if (p < p_lin) err_linear = std::max(err_linear, rel(sol.q, state.q_on()));
    }
    return {
        within(6, "6.gm_avg_oracle", "gm_avg closed form vs time-domain average, 50 pts in [0,3V_TH]",
               err_avg, 5e-3),
        within(6, "6.gm_avg_approx", "approximate gm_avg vs exact at 4 V_TH", err_approx, 0.05),
        within(6, "6.q_monotone", "Q_nonlin non-increasing in P_in (largest relative rise)",
               worst_rise, 0.0),
        within(6, "6.q_linear", "Q_nonlin = Q_ON below P_in,lin", err_linear, 1e-6),
    };
}

// 7. Noise scaling laws.
std::vector<CheckResult> criterion7(const Options&) {
    const auto ref = fixtures::reference();
    const auto state = ref.state();
    const double q2 = 100.0;
    const auto state2 = state.with_gm((1.0 - ref.q_off / q2) / state.r_srr());
    const double qr = std::pow(state2.q_on() / state.q_on(), 2.0);
    const double err_flicker =
        std::abs(flicker_sres_sensitivity(state2) / flicker_sres_sensitivity(state) / qr - 1.0);
    const double err_supply =
        std::abs(supply_sres_sensitivity(state2) / supply_sres_sensitivity(state) / qr - 1.0);

    NoiseContext ctx{state};
    ctx.delta_omega_s = hz_to_rad(10e6);
    NoiseContext ctx2 = ctx;
    ctx2.delta_omega_s *= 2.0;
    const double doubling = db10(flicker_phase_psd(ctx2, 1e3) / flicker_phase_psd(ctx, 1e3));
    const double decade = db10(flicker_phase_psd(ctx, 1e4) / flicker_phase_psd(ctx, 1e3));

    NoiseContext loud = ctx;
    loud.p_in *= 10.0;
    const double white_step = white_ssb_phase_noise(loud) - white_ssb_phase_noise(ctx);

    const double w0 = state.omega0();
    const double q = state.q_on();
    const double t0 = input_phase_transfer(q, w0, 0.0);
    const double tc = input_phase_transfer(q, w0, w0 / (2.0 * q));
    return {
        within(7, "7.flicker_q2", "flicker dS_RES/dv scales as Q_ON^2", err_flicker, 1e-9),
        within(7, "7.supply_q2", "supply dS_RES/dv scales as Q_ON^2", err_supply, 1e-9),
        within(7, "7.flicker_doubling", "flicker phase noise +6.02 dB per delta_omega_s doubling",
               std::abs(doubling - 6.02), 0.01, num(doubling) + " dB"),
        within(7, "7.flicker_decade", "flicker phase noise -10 dB/decade in offset",
               std::abs(decade + 10.0), 1e-9),
        within(7, "7.white_carrier", "white SSB level falls 10 dB per 10 dB of carrier",
               std::abs(white_step + 10.0), 1e-9),
        within(7, "7.input_dc", "input phase transfer = 1 at zero offset", std::abs(t0 - 1.0), 1e-9),
        within(7, "7.input_corner", "input phase transfer = 2 at w0/(2Q)", std::abs(tc - 2.0), 1e-9),
    };
}

// 8. PM-to-AM conversion: null at w0 and peaks at the |S21| inflections.
std::vector<CheckResult> criterion8(const Options& o) {
    const auto ref = fixtures::reference();
    const auto line = ref.line();
    const SrrParams s = matched_reference(ref.q_on, o);
    const auto grid = io::auto_grid(ref.f0, ref.q_on);
    const auto freqs = grid.omegas();
    SweepOptions opt;
    opt.z0_ref = ref.z0;
    const auto sweep = s_parameters(s, line, freqs, opt);
    const double offset = hz_to_rad(1e6);
    const double step = hz_to_rad(grid.spacing_hz());
    const double null_gain = pm_to_am_gain(sweep, s.omega0(), offset);

    std::vector<double> gain(freqs.size(), -HUGE_VAL);
    std::vector<double> slope(freqs.size(), 0.0);
    for (std::size_t i = 3; i + 3 < freqs.size(); ++i) {
        gain[i] = pm_to_am_gain(sweep, freqs[i], offset);
        slope[i] = std::abs(std::abs(sweep.s21[i + 1]) - std::abs(sweep.s21[i - 1]));
    }
    const auto inflections = oracle::magnitude_inflections(sweep);
    const std::size_t mid = freqs.size() / 2;
    auto peak = [&](const std::vector<double>& v, bool upper) {
        const auto first = upper ? v.begin() + static_cast<std::ptrdiff_t>(mid) + 1 : v.begin();
        const auto last = upper ? v.end() : v.begin() + static_cast<std::ptrdiff_t>(mid);
        return freqs[static_cast<std::size_t>(std::max_element(first, last) - v.begin())];
    };
    auto distance = [&](double w) {
        double best = HUGE_VAL;
        for (double x : inflections) best = std::min(best, std::abs(x - w));
        return best / step;
    };
    const double gain_steps = std::max(distance(peak(gain, false)), distance(peak(gain, true)));
    const double slope_steps = std::max(distance(peak(slope, false)), distance(peak(slope, true)));
    return {
        make(8, "8.null", "PM-to-AM gain at w0 below -60 dB", null_gain, -60.0, null_gain < -60.0),
        within(8, "8.peak_at_inflection", "PM-to-AM maximum vs |S21| inflections (grid steps)",
               gain_steps, 1.0, std::to_string(inflections.size()) + " inflections found"),
        info(within(8, "8.slope_at_inflection", "max of d|S21|/dw vs |S21| inflections (grid steps)",
                    slope_steps, 1.0)),
    };
}

// 9. SNR independent of the resonance shift.
std::vector<CheckResult> criterion9(const Options&) {
    const auto state = fixtures::reference().state();
    NoiseContext ctx{state};
    double base_c = 0.0;
    double base_r = 0.0;
    bool identical = true;
    double chain_ratio_err = 0.0;
    for (double shift_hz : {1e6, 10e6, 100e6}) {
        ctx.delta_omega_s = hz_to_rad(shift_hz);
        const double c = snr_delta_c(ctx);
        const double r = snr_delta_r(ctx, 1.0);
        if (shift_hz == 1e6) {
            base_c = c;
            base_r = r;
        }
        identical = identical && c == base_c && r == base_r;
        // Power-summed chain relative to the closed forms.
        chain_ratio_err = std::max(chain_ratio_err, std::abs(snr_chain_delta_c(ctx).snr() / c - 2.0));
        chain_ratio_err = std::max(chain_ratio_err, std::abs(snr_chain_delta_r(ctx, 1.0).snr() / r - 2.0));
    }
    return {
        make(9, "9.bit_exact", "SNR_dC, SNR_dR bit-identical for delta_omega_s in {1,10,100} MHz",
             identical ? 0.0 : 1.0, 0.0, identical, "SNR_dC=" + num(base_c) + " SNR_dR=" + num(base_r)),
        info(within(9, "9.chain_ratio", "signal/noise chain over closed form = 2 (power-summed devices)",
                    chain_ratio_err, 1e-9)),
    };
}

// 10. Design round trip and structured infeasibility.
std::vector<CheckResult> criterion10(const Options&) {
    const auto ref = fixtures::reference();
    const auto spec = fixtures::reference_design_spec();
    const auto result = synthesize(spec);
    std::vector<CheckResult> out;
    if (!result.feasible) {
        out.push_back(make(10, "10.feasible", "reference design feasible", 1.0, 0.0, false,
                           result.message));
        return out;
    }
    const auto back = reanalyze(result, spec);
    const double err_snr = std::max(rel(back.snr_dc, result.snr_dc), rel(back.snr_dr, result.snr_dr));
    out.push_back(within(10, "10.round_trip", "re-analysed SNR_dC, SNR_dR vs reported", err_snr, 1e-6));
    out.push_back(within(10, "10.matching", "synthesized beta*l*k^2*Q_ON = 1", std::abs(back.matching - 1.0),
                         1e-9));
    const double loop = result.gm_required * result.r_srr;
    out.push_back(within(10, "10.loop_gain", "reference design gm R_SRR = 1 - 10/54",
                         std::abs(loop - (1.0 - ref.q_off / ref.q_on)), 1e-6));
    auto bad = spec;
    bad.il_budget = 0.6;
    const auto rejected = synthesize(bad);
    const bool structured =
        !rejected.feasible && rejected.binding == BindingConstraint::geometric_coupling;
    out.push_back(make(10, "10.infeasible", "k_max > 0.25 reported as geometric_coupling",
                       structured ? 0.0 : 1.0, 0.0, structured,
                       "k_max=" + num(rejected.k_max) + " binding=" + std::string(to_string(rejected.binding))));
    return out;
}

}  // namespace

std::vector<CheckResult> run_criterion(int criterion, const Options& options) {
    using Fn = std::vector<CheckResult> (*)(const Options&);
    static constexpr Fn table[] = {criterion1, criterion2, criterion3, criterion4, criterion5,
                                   criterion6, criterion7, criterion8, criterion9, criterion10};
    require(criterion >= 1 && criterion <= 10, "criterion must be in 1..10");
    const auto t0 = Clock::now();
    std::vector<CheckResult> out;
    try {
        out = table[criterion - 1](options);
    } catch (const std::exception& e) {
        out.push_back(make(criterion, std::to_string(criterion) + ".error", "check raised an error",
                           1.0, 0.0, false, e.what()));
    }
    const double dt = seconds_since(t0);
    for (auto& r : out) r.seconds = dt;
    return out;
}

std::vector<CheckResult> run_all(const Options& options) {
    const auto t0 = Clock::now();
    std::vector<CheckResult> out;
    for (int c = 1; c <= 10; ++c) {
        auto part = run_criterion(c, options);
        out.insert(out.end(), part.begin(), part.end());
    }
    const double dt = seconds_since(t0);
    out.push_back(within(10, "10.runtime", "full validation suite runtime (s)", dt, 60.0));
    return out;
}

std::string format(const CheckResult& r) {
    const char* tag = r.informational ? "INFO" : (r.passed ? "PASS" : "FAIL");
    std::ostringstream os;
    os << tag << "  [" << r.criterion << "] " << r.id << "  " << r.title
       << "  measured=" << io::format_number(r.measured) << " tol=" << io::format_number(r.tolerance);
    if (!r.detail.empty()) os << "  (" << r.detail << ")";
    return os.str();
}

std::vector<CheckResult> failures(const std::vector<CheckResult>& results) {
    std::vector<CheckResult> out;
    for (const auto& r : results) {
        if (!r.passed && !r.informational) out.push_back(r);
    }
    return out;
}

}  // namespace asrr::validate
