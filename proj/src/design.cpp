#include "asrr/design.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <sstream>

#include "asrr/error.hpp"

namespace asrr {

void DesignSpec::validate() const {
    require(f0 > 0.0, "design: f0 must be positive");
    require(n_pixels >= 1, "design: n_pixels must be >= 1");
    require(il_budget > 0.0 && il_budget < 1.0, "design: il_budget must lie in (0, 1)");
    require(snr_dc_target > 0.0 && snr_dr_target > 0.0, "design: SNR targets must be positive");
    require(delta_r_ref > 0.0, "design: delta_r_ref must be positive");
    require(z0 > 0.0, "design: z0 must be positive");
    require(line.ltl > 0.0 && line.ctl > 0.0 && line.length > 0.0,
            "design: line section needs positive L_TL, C_TL and length");
    require(q_off > 0.0, "design: q_off must be positive");
    require(kn_prime > 0.0 && kp_prime > 0.0, "design: device gain factors must be positive");
    require(vth > 0.0 && vdd > 0.0, "design: supply and threshold must be positive");
    require(kf_area > 0.0, "design: kf_area must be positive");
    require(c_gm_per_area > 0.0, "design: c_gm_per_area must be positive");
    require(c_srr_intrinsic >= 0.0, "design: c_srr_intrinsic must be non-negative");
    require(l_srr_max > 0.0, "design: l_srr_max must be positive");
    require(flicker_band.f_hi > flicker_band.f_lo && flicker_band.f_lo > 0.0,
            "design: flicker band requires f_hi > f_lo > 0");
}

std::string_view to_string(BindingConstraint c) {
    switch (c) {
        case BindingConstraint::none: return "none";
        case BindingConstraint::geometric_coupling: return "geometric_coupling";
        case BindingConstraint::boost_not_required: return "boost_not_required";
        case BindingConstraint::loop_gain: return "loop_gain";
        case BindingConstraint::device_overdrive: return "device_overdrive";
        case BindingConstraint::snr_dr_unreachable: return "snr_dr_unreachable";
        case BindingConstraint::snr_dc_unreachable: return "snr_dc_unreachable";
    }
    return "unknown";
}

namespace {

/// Steps 3b to 7 evaluated for one candidate R_SRR.
struct Sizing {
    double r = 0.0;
    double l = 0.0;
    double c_asrr = 0.0;
    double c_gm = 0.0;
    double gm = 0.0;
    double wl_n = 0.0;
    double wl_p = 0.0;
    double area = 0.0;  // W L of the NMOS device
    double width_n = 0.0;
    double width_p = 0.0;
    double length = 0.0;
    double kf = 0.0;
    double alpha = 0.0;
    double snr_dc = 0.0;
    double snr_dr = 0.0;
    std::optional<AsrrState> state;
};

class Sizer {
public:
    Sizer(const DesignSpec& spec, double q_on) : spec_(spec), q_on_(q_on) {}

    Sizing operator()(double r) const {
        Sizing s;
        const double w0 = hz_to_rad(spec_.f0);
        const double v_ov = spec_.vdd / 2.0 - spec_.vth;
        s.r = r;
        s.l = r / (w0 * spec_.q_off);
        s.c_asrr = 1.0 / (w0 * w0 * s.l);
        s.gm = (1.0 - spec_.q_off / q_on_) / r;
        s.wl_n = s.gm / (spec_.kn_prime * v_ov);
        s.wl_p = s.gm / (spec_.kp_prime * v_ov);
        s.c_gm = s.c_asrr - spec_.c_srr_intrinsic;
        if (s.c_gm <= 0.0) {
            return s;  // ring alone already over the resonance capacitance
        }
        s.area = s.c_gm / spec_.c_gm_per_area;
        s.width_n = std::sqrt(s.area * s.wl_n);
        s.length = std::sqrt(s.area / s.wl_n);
        s.width_p = s.wl_p * s.length;
        s.kf = spec_.kf_area / s.area;
        s.state.emplace(build_state(s));
        s.alpha = alpha_flicker(s.state->gm());
        s.snr_dc = snr_delta_c(*s.state, s.kf, spec_.flicker_band);
        s.snr_dr = snr_delta_r(*s.state, s.kf, spec_.flicker_band, spec_.delta_r_ref);
        return s;
    }

    AsrrState build_state(const Sizing& s) const {
        GmBlockParams gm;
        gm.gm0 = s.gm;
        gm.kn_wl = spec_.kn_prime * s.wl_n;
        gm.kp_wl = spec_.kp_prime * s.wl_p;
        gm.vdd = spec_.vdd;
        gm.vth = spec_.vth;
        gm.c_gm = s.c_gm;
        gm.kf = s.kf;
        return {SrrParams{s.l, spec_.c_srr_intrinsic, spec_.q_off, 0.0}, gm};
    }

private:
    const DesignSpec& spec_;
    double q_on_;
};

/// R_SRR searches stop this far below the inductance-ceiling value. Both
/// SNRs grow without bound as R_SRR -> 0, so an unbounded search would meet
/// any target with an unbuildable ring.
constexpr double kMinResistanceFraction = 1e-6;

/// Largest r in [floor, hi] with meets(r), assuming meets is monotone (true
/// for small r). Halving then bisection to relative width rel_tol.
std::optional<double> largest_meeting(const std::function<bool(double)>& meets, double hi,
                                      double floor, double rel_tol) {
    if (meets(hi)) return hi;
    double lo = hi;
    do {
        hi = lo;
        lo = std::max(lo / 2.0, floor);
        if (lo == hi) return std::nullopt;
    } while (!meets(lo));
    while (hi - lo > rel_tol * hi) {
        const double mid = 0.5 * (lo + hi);
        (meets(mid) ? lo : hi) = mid;
    }
    return lo;
}

DesignResult fail(DesignResult r, BindingConstraint c, std::string message) {
    r.feasible = false;
    r.binding = c;
    r.message = std::move(message);
    return r;
}

void fill(DesignResult& out, const Sizing& s) {
    out.r_srr = s.r;
    out.l_srr = s.l;
    out.c_asrr = s.c_asrr;
    out.c_gm = s.c_gm;
    out.gm_required = s.gm;
    out.wl_ratio_n = s.wl_n;
    out.wl_ratio_p = s.wl_p;
    out.width_n = s.width_n;
    out.width_p = s.width_p;
    out.length = s.length;
    out.kf = s.kf;
    out.alpha_1_over_f = s.alpha;
    out.snr_dc = s.snr_dc;
    out.snr_dr = s.snr_dr;
}

}  // namespace

DesignResult synthesize(const DesignSpec& spec) {
    spec.validate();
    DesignResult out;
    out.c_srr_intrinsic = spec.c_srr_intrinsic;
    out.vth = spec.vth;
    const double w0 = hz_to_rad(spec.f0);

    // 1. Coupling ceiling from the insertion-loss budget.
    const auto limit = k_max_for_il(spec.il_budget, spec.n_pixels, spec.line, spec.q_off, w0);
    out.k_max = limit.k_max;
    out.steps.push_back({"1", "k_max from IL budget", {"il_budget", "n_pixels", "line", "q_off", "f0"},
                         {"k_max"}});
    if (limit.exceeds_geometric_limit) {
        std::ostringstream msg;
        msg << "k_max = " << limit.k_max << " exceeds the geometric coupling limit "
            << kGeometricCouplingLimit;
        return fail(out, BindingConstraint::geometric_coupling, msg.str());
    }

    // 2. Matched Q_ON at that coupling.
    out.q_on_min = q_on_min(out.k_max, spec.line, w0);
    out.steps.push_back({"2", "Q_ON,min from optimum coupling", {"k_max", "line", "f0"}, {"q_on_min"}});
    if (out.q_on_min <= spec.q_off) {
        return fail(out, BindingConstraint::boost_not_required,
                    "Q_ON,min does not exceed Q_OFF; the passive SRR is already over-coupled");
    }
    if (spec.vdd / 2.0 <= spec.vth) {
        return fail(out, BindingConstraint::device_overdrive, "V_DD/2 must exceed V_TH");
    }
    const Sizer sizer(spec, out.q_on_min);

    // 3. Largest R_SRR under the inductance ceiling that meets SNR_dR.
    double r_hi = w0 * spec.q_off * spec.l_srr_max;
    if (spec.c_srr_intrinsic > 0.0) {
        r_hi = std::min(r_hi, spec.q_off / (w0 * spec.c_srr_intrinsic) * (1.0 - 1e-9));
    }
    auto meets_dr = [&](double r) { return sizer(r).snr_dr >= spec.snr_dr_target; };
    const double r_floor = kMinResistanceFraction * r_hi;
    const auto r3 = largest_meeting(meets_dr, r_hi, r_floor, 1e-6);
    out.steps.push_back({"3", "R_SRR lowered until SNR_dR is met",
                         {"q_on_min", "q_off", "f0", "l_srr_max", "snr_dr_target", "delta_r_ref"},
                         {"r_srr"}});
    if (!r3) {
        return fail(out, BindingConstraint::snr_dr_unreachable,
                    "no R_SRR between the search floor and the inductance ceiling meets the SNR_dR target");
    }
    Sizing s = sizer(*r3);
    out.steps.push_back({"3b", "L_SRR from R_SRR", {"r_srr", "q_off", "f0"}, {"l_srr", "c_asrr"}});

    // 4. gm that boosts Q_OFF to Q_ON,min.
    out.steps.push_back({"4", "gm from the boost", {"r_srr", "q_off", "q_on_min"}, {"gm"}});
    if (s.gm * s.r >= 1.0) {
        return fail(out, BindingConstraint::loop_gain, "gm R_SRR >= 1: the pixel would oscillate");
    }
    // 5.-7. Device aspect ratio, area from the resonance condition, W and L.
    out.steps.push_back({"5", "device W/L from gm", {"gm", "vdd", "vth"}, {"wl_ratio"}});
    out.steps.push_back({"6", "W L from resonance loading", {"c_asrr", "c_srr_intrinsic"}, {"area"}});
    out.steps.push_back({"7", "W and L, alpha, K_f", {"area", "wl_ratio", "gm"},
                         {"width", "length", "alpha", "kf", "snr_dc", "snr_dr"}});

    // 8. Joint W, L scaling with a smaller L_SRR when SNR_dC falls short.
    if (s.snr_dc < spec.snr_dc_target) {
        const double area3 = s.area;
        auto meets_dc = [&](double r) { return sizer(r).snr_dc >= spec.snr_dc_target; };
        const auto r8 = largest_meeting(meets_dc, s.r, r_floor, 1e-6);
        if (!r8) {
            fill(out, s);
            return fail(out, BindingConstraint::snr_dc_unreachable,
                        "scaling W and L cannot reach the SNR_dC target");
        }
        s = sizer(*r8);
        out.area_scale = s.area / area3;
    }
    out.steps.push_back({"8", "joint W, L scaling for SNR_dC", {"snr_dc", "snr_dc_target", "r_srr"},
                         {"area_scale"}});

    fill(out, s);
    out.kn_wl = spec.kn_prime * s.wl_n;
    out.kp_wl = spec.kp_prime * s.wl_p;
    out.p_in_lin = linear_power_limit(*s.state);
    out.feasible = true;
    out.power_estimate = power_estimate(out, spec.vdd);
    return out;
}

double power_estimate(const DesignResult& result, double vdd) {
    require(vdd > 0.0, "power_estimate requires vdd > 0");
    const double v_ov = std::max(0.0, vdd / 2.0 - result.vth);
    // Two branches, each carrying (1/2) K (W/L) V_ov^2.
    return vdd * result.kn_wl * v_ov * v_ov;
}

AsrrState design_state(const DesignResult& result, const DesignSpec& spec) {
    require(result.feasible, "design_state requires a feasible design");
    GmBlockParams gm;
    gm.gm0 = result.gm_required;
    gm.kn_wl = result.kn_wl;
    gm.kp_wl = result.kp_wl;
    gm.vdd = spec.vdd;
    gm.vth = spec.vth;
    gm.c_gm = result.c_gm;
    gm.kf = result.kf;
    return {SrrParams{result.l_srr, result.c_srr_intrinsic, spec.q_off, result.k_max}, gm};
}

Reanalysis reanalyze(const DesignResult& result, const DesignSpec& spec) {
    const AsrrState state = design_state(result, spec);
    Reanalysis out;
    out.snr_dc = snr_delta_c(state, result.kf, spec.flicker_band);
    out.snr_dr = snr_delta_r(state, result.kf, spec.flicker_band, spec.delta_r_ref);
    out.q_on = state.q_on();
    out.matching =
        spec.line.electrical_length(hz_to_rad(spec.f0)) * result.k_max * result.k_max * out.q_on;
    return out;
}

namespace {

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace

std::string format_key_values(const DesignResult& r) {
    std::ostringstream os;
    os << "feasible = " << (r.feasible ? "true" : "false") << "\n";
    os << "binding_constraint = " << to_string(r.binding) << "\n";
    const std::pair<const char*, double> rows[] = {
        {"k_max", r.k_max},           {"q_on_min", r.q_on_min},
        {"r_srr_ohm", r.r_srr},       {"l_srr_h", r.l_srr},
        {"c_asrr_f", r.c_asrr},       {"c_gm_f", r.c_gm},
        {"gm_s", r.gm_required},      {"wl_ratio_n", r.wl_ratio_n},
        {"wl_ratio_p", r.wl_ratio_p}, {"width_n_m", r.width_n},
        {"width_p_m", r.width_p},     {"length_m", r.length},
        {"kf_v2", r.kf},              {"alpha_1_over_f", r.alpha_1_over_f},
        {"snr_dc", r.snr_dc},         {"snr_dr", r.snr_dr},
        {"p_in_lin_w", r.p_in_lin},   {"power_estimate_w", r.power_estimate},
        {"area_scale", r.area_scale},
    };
    for (const auto& [key, value] : rows) os << key << " = " << num(value) << "\n";
    return os.str();
}

std::string format_report(const DesignResult& r) {
    std::ostringstream os;
    if (!r.feasible) {
        os << "Design infeasible: " << r.message << " [" << to_string(r.binding) << "]\n";
        return os.str();
    }
    os << "ASRR pixel design\n";
    os << "  coupling k_max        " << num(r.k_max) << "\n";
    os << "  matched Q_ON          " << num(r.q_on_min) << "\n";
    os << "  R_SRR                 " << num(r.r_srr) << " Ohm\n";
    os << "  L_SRR                 " << num(r.l_srr) << " H\n";
    os << "  C_ASRR (C_gm)         " << num(r.c_asrr) << " F (" << num(r.c_gm) << " F)\n";
    os << "  device gm             " << num(r.gm_required) << " S\n";
    os << "  NMOS W/L              " << num(r.width_n) << " m / " << num(r.length) << " m\n";
    os << "  PMOS W/L              " << num(r.width_p) << " m / " << num(r.length) << " m\n";
    os << "  alpha_1/f             " << num(r.alpha_1_over_f) << "\n";
    os << "  SNR_dC, SNR_dR        " << num(r.snr_dc) << ", " << num(r.snr_dr) << "\n";
    os << "  P_in,lin              " << num(r.p_in_lin) << " W\n";
    os << "  bias power (estimate) " << num(r.power_estimate) << " W\n";
    if (r.area_scale != 1.0) os << "  area scaled by        " << num(r.area_scale) << "\n";
    return os.str();
}

}  // namespace asrr
