#include "asrr/active.hpp"

#include <cmath>
#include <sstream>

#include "asrr/error.hpp"

namespace asrr {

void GmBlockParams::validate() const {
    require(gm0 >= 0.0 && gm_p() >= 0.0, "-gm block transconductance must be non-negative");
    require(kn_wl >= 0.0 && kp_wl >= 0.0, "device gain factors must be non-negative");
    require(vdd > 0.0 && vth > 0.0, "supply and threshold voltages must be positive");
    require(lambda >= 0.0, "channel-length modulation must be non-negative");
    require(c_gm >= 0.0, "-gm parasitic capacitance must be non-negative");
    require(kf >= 0.0 && gamma >= 0.0, "noise coefficients must be non-negative");
}

double GmBlockParams::parasitic_capacitance(double cgs_n, double cgs_p, double cdb_n, double cdb_p,
                                            double cgd_n, double cgd_p) {
    return (cgs_n + cgs_p + cdb_n + cdb_p) / 2.0 + 2.0 * (cgd_n + cgd_p);
}

double boosted_resistance(const SrrParams& srr, double gm_total) {
    const double r = srr.parallel_loss();
    const double loop = gm_total * r;
    if (loop >= 1.0) {
        std::ostringstream msg;
        msg << "oscillation: loop gain >= 1 (gm*R_SRR = " << loop << ")";
        throw OscillationError(msg.str());
    }
    return r / (1.0 - loop);
}

double q_on(const SrrParams& srr, double gm_total) {
    const double r_asrr = boosted_resistance(srr, gm_total);
    return srr.q_off * r_asrr / srr.parallel_loss();
}

AsrrState::AsrrState(const SrrParams& srr, const GmBlockParams& gm) : srr_(srr), gm_(gm) {
    // The intrinsic ring capacitance may be zero when the devices supply it all.
    require(srr_.csrr >= 0.0, "SRR capacitance must be non-negative");
    gm_.validate();
    passive_srr().validate();
    // Rejects an unstable block up front.
    boosted_resistance(passive_srr(), gm_.gm_total());
}

double AsrrState::omega0() const { return 1.0 / std::sqrt(srr_.lsrr * c_asrr()); }

double AsrrState::r_srr() const { return omega0() * srr_.lsrr * srr_.q_off; }

double AsrrState::r_asrr() const { return boosted_resistance(passive_srr(), gm_.gm_total()); }

double AsrrState::q_on() const { return asrr::q_on(passive_srr(), gm_.gm_total()); }

SrrParams AsrrState::passive_srr() const { return {srr_.lsrr, c_asrr(), srr_.q_off, srr_.k}; }

SrrParams AsrrState::boosted_srr() const { return {srr_.lsrr, c_asrr(), q_on(), srr_.k}; }

AsrrState AsrrState::with_gm(double gm_device) const {
    GmBlockParams gm = gm_;
    gm.gm0 = gm_device;
    gm.gm0_p.reset();
    return {srr_, gm};
}

double loss_amplification(const AsrrState& state, double delta_r) {
    const double boost = state.boost();
    return boost * boost * delta_r;
}

SampleResponse sample_response(const AsrrState& state, const SampleDelta& delta) {
    const double w0 = state.omega0();
    const double c = state.c_asrr();
    const double q = state.q_on();
    const double boost2 = state.boost() * state.boost();
    SampleResponse out;
    out.delta_omega0 = -delta.delta_c / (2.0 * c) * w0;
    out.delta_sres = 10.0 / 9.0 * c * boost2 * delta.delta_r;
    out.delta_phi_omega = q / 3.0 * (delta.delta_c / c);
    out.delta_phi_s = 5.0 / 9.0 * boost2 * w0 * delta.delta_r * delta.delta_c;
    return out;
}

double absorbed_power_fraction(double r_eq, double z0) {
    return 4.0 * r_eq * z0 / ((r_eq + 2.0 * z0) * (r_eq + 2.0 * z0));
}

double asrr_voltage_swing(const AsrrState& state, double p_in) {
    require(p_in > 0.0, "asrr_voltage_swing requires p_in > 0");
    return std::sqrt(8.0 / 9.0 * state.omega0() * state.lsrr() * state.q_on() * p_in);
}

double asrr_voltage_swing(const AsrrState& state, double p_in, const TransmissionLineSection& line,
                          double z0) {
    require(p_in > 0.0, "asrr_voltage_swing requires p_in > 0");
    const auto eq = equivalent_resonator(state.boosted_srr(), line);
    const double p_srr = absorbed_power_fraction(eq.r_eq, z0) * p_in;
    return std::sqrt(2.0 * state.r_asrr() * p_srr);
}

double linear_power_limit(const AsrrState& state) {
    const double vth = state.gm().vth;
    return 9.0 / 8.0 * vth * vth / (state.omega0() * state.lsrr() * state.q_on());
}

double conduction_angle(double v_asrr, double vth) {
    require(v_asrr >= 0.0, "conduction_angle requires v_asrr >= 0");
    if (v_asrr <= vth) {
        return 0.0;
    }
    return std::acos(vth / v_asrr);
}

double gm_avg_exact_device(double v_asrr, double gm0, double k_wl, double vdd, double vth) {
    const double theta = conduction_angle(v_asrr, vth);
    return (gm0 * (kPi - 2.0 * theta) +
            k_wl * (vdd / 2.0 * theta - v_asrr / 2.0 * std::sin(theta))) /
           kPi;
}

double gm_avg_approx_device(double v_asrr, double gm0, double k_wl, double vdd, double vth) {
    require(v_asrr >= 0.0, "gm_avg_approx requires v_asrr >= 0");
    if (v_asrr <= vth) {
        return gm0;
    }
    return k_wl * (vdd * kPi / 4.0 - v_asrr / 2.0) / kPi;
}

double gm_avg_exact(double v_asrr, const GmBlockParams& gm) {
    return 0.5 * (gm_avg_exact_device(v_asrr, gm.gm_n(), gm.kn_wl, gm.vdd, gm.vth) +
                  gm_avg_exact_device(v_asrr, gm.gm_p(), gm.kp_wl, gm.vdd, gm.vth));
}

double gm_avg_approx(double v_asrr, const GmBlockParams& gm) {
    return 0.5 * (gm_avg_approx_device(v_asrr, gm.gm_n(), gm.kn_wl, gm.vdd, gm.vth) +
                  gm_avg_approx_device(v_asrr, gm.gm_p(), gm.kp_wl, gm.vdd, gm.vth));
}

namespace {

class SwingMap {
public:
    SwingMap(const AsrrState& state, double p_in, const NonlinearOptions& options)
        : state_(state), p_in_(p_in), options_(options) {
        if (options_.split == PowerSplit::general) {
            require(options_.line.has_value(), "general power split requires a line section");
        }
    }

    double quality(double v) const {
        const double g = options_.average == GmAverage::exact ? gm_avg_exact(v, state_.gm())
                                                              : gm_avg_approx(v, state_.gm());
        return asrr::q_on(state_.passive_srr(), g);
    }

    /// Swing implied by the quality factor the swing v produces.
    double operator()(double v) const {
        const double q = quality(v);
        const double r_asrr = state_.omega0() * state_.lsrr() * q;
        double fraction = 4.0 / 9.0;
        if (options_.split == PowerSplit::general) {
            const auto eq = equivalent_resonator(state_.passive_srr().with_quality(q), *options_.line);
            fraction = absorbed_power_fraction(eq.r_eq, options_.z0);
        }
        return std::sqrt(2.0 * r_asrr * fraction * p_in_);
    }

private:
    const AsrrState& state_;
    double p_in_;
    const NonlinearOptions& options_;
};

[[noreturn]] void fail_convergence(double v, double q, int iterations) {
    std::ostringstream msg;
    msg << "q_on_nonlinear did not converge after " << iterations
        << " iterations (last V_ASRR = " << v << " V, Q = " << q << ")";
    throw NumericalError(msg.str());
}

}  // namespace

NonlinearSolution q_on_nonlinear(const AsrrState& state, double p_in,
                                 const NonlinearOptions& options) {
    require(p_in > 0.0, "q_on_nonlinear requires p_in > 0");
    require(options.damping > 0.0 && options.damping <= 1.0, "damping must lie in (0, 1]");
    const SwingMap target(state, p_in, options);

    // Damped fixed point from the linear-regime swing.
    double v = target(0.0);
    double last_residual = HUGE_VAL;
    int stalls = 0;
    int it = 0;
    for (; it < options.max_iterations; ++it) {
        const double t = target(v);
        const double residual = std::abs(t - v);
        if (residual <= options.rel_tol * v) {
            return {target.quality(v), v, it, false};
        }
        stalls = residual < last_residual ? 0 : stalls + 1;
        if (stalls >= 5) {
            break;
        }
        last_residual = residual;
        v = (1.0 - options.damping) * v + options.damping * t;
    }

    // Bisection on h(v) = target(v) - v; h(0) > 0 and h decreases with swing.
    double lo = 0.0;
    double hi = std::max(v, target(0.0));
    for (int grow = 0; target(hi) - hi > 0.0; ++grow) {
        if (grow > 60) fail_convergence(hi, target.quality(hi), it);
        hi *= 2.0;
    }
    for (int b = 0; b < options.max_iterations; ++b, ++it) {
        const double mid = 0.5 * (lo + hi);
        const double h = target(mid) - mid;
        if (std::abs(h) <= options.rel_tol * mid || (hi - lo) <= options.rel_tol * mid) {
            return {target.quality(mid), mid, it, true};
        }
        (h > 0.0 ? lo : hi) = mid;
    }
    const double mid = 0.5 * (lo + hi);
    fail_convergence(mid, target.quality(mid), it);
}

}  // namespace asrr
