#pragma once

// Negative-gm Q boosting of an SRR: boosted resistance and quality factor,
// sample sensitivity, voltage swing, and large-signal gm compression.

#include <optional>

#include "asrr/resonator.hpp"

namespace asrr {

/// Cross-coupled NMOS/PMOS -gm block, square-law devices.
struct GmBlockParams {
    double gm0 = 0.0;    // small-signal gm of one NMOS device, S
    std::optional<double> gm0_p;  // PMOS device gm; equals gm0 for a symmetric block
    double kn_wl = 0.0;  // K_n (W/L)_n, A/V^2
    double kp_wl = 0.0;  // K_p (W/L)_p, A/V^2
    double vdd = 0.0;    // V
    double vth = 0.0;    // V
    double lambda = 0.0; // 1/V
    double c_gm = 0.0;   // parasitic capacitance loading the SRR, F
    double kf = 1e-10;   // flicker coefficient, V^2 (placeholder until calibrated)
    double gamma = 1.0;  // channel white-noise factor (placeholder until calibrated)

    double gm_n() const { return gm0; }
    double gm_p() const { return gm0_p.value_or(gm0); }
    /// Transconductance of the whole block, (gm_n + gm_p) / 2.
    double gm_total() const { return 0.5 * (gm_n() + gm_p()); }
    void validate() const;

    /// Total parasitic capacitance seen by the SRR from per-device terminal
    /// capacitances (the Miller-doubled gate-drain terms included).
    static double parasitic_capacitance(double cgs_n, double cgs_p, double cdb_n, double cdb_p,
                                        double cgd_n, double cgd_p);
};

/// R_ASRR = R_SRR / (1 - gm R_SRR). Throws OscillationError if gm R_SRR >= 1.
double boosted_resistance(const SrrParams& srr, double gm_total);
/// Q_ON = Q_OFF / (1 - gm R_SRR).
double q_on(const SrrParams& srr, double gm_total);

/// An SRR loaded by an enabled -gm block.
class AsrrState {
public:
    /// srr.csrr is the intrinsic SRR capacitance; the block's c_gm adds to it.
    AsrrState(const SrrParams& srr, const GmBlockParams& gm);

    const SrrParams& srr() const { return srr_; }
    const GmBlockParams& gm() const { return gm_; }
    double c_asrr() const { return srr_.csrr + gm_.c_gm; }
    double omega0() const;
    double lsrr() const { return srr_.lsrr; }
    double q_off() const { return srr_.q_off; }
    /// Parallel loss of the loaded SRR, w0 L_SRR Q_OFF.
    double r_srr() const;
    double r_asrr() const;
    double q_on() const;
    double boost() const { return q_on() / q_off(); }
    double loop_gain() const { return gm_.gm_total() * r_srr(); }

    /// The loaded resonator with the -gm disabled (capacitance C_ASRR, Q_OFF).
    SrrParams passive_srr() const;
    /// The loaded resonator seen as a passive one with Q = Q_ON.
    SrrParams boosted_srr() const;
    /// Same block with a different transconductance (per device, symmetric).
    AsrrState with_gm(double gm_device) const;

private:
    SrrParams srr_;
    GmBlockParams gm_;
};

/// Change in R_ASRR caused by a change delta_r of the SRR parallel loss.
double loss_amplification(const AsrrState& state, double delta_r);

struct SampleDelta {
    double delta_c = 0.0;  // F
    double delta_r = 0.0;  // Ohm
};

struct SampleResponse {
    double delta_omega0 = 0.0;
    double delta_sres = 0.0;
    double delta_phi_omega = 0.0;
    double delta_phi_s = 0.0;
};

/// Response of an optimally coupled ASRR to a sample.
SampleResponse sample_response(const AsrrState& state, const SampleDelta& delta);

enum class PowerSplit {
    matched,  // P_SRR = 4/9 P_in throughout
    general   // P_SRR = 4 R' Z0 / (R' + 2 Z0)^2 P_in with R' from the current Q
};

/// Fraction of incident power absorbed by a resonator of equivalent resistance r_eq.
double absorbed_power_fraction(double r_eq, double z0);

/// Peak differential swing across the ASRR in the linear regime.
double asrr_voltage_swing(const AsrrState& state, double p_in);
double asrr_voltage_swing(const AsrrState& state, double p_in, const TransmissionLineSection& line,
                          double z0);

/// Input power at which the linear swing reaches V_TH.
double linear_power_limit(const AsrrState& state);

/// Conduction angle in the triode region for a swing v_asrr.
double conduction_angle(double v_asrr, double vth);

/// Cycle-averaged transconductance of one device.
double gm_avg_exact_device(double v_asrr, double gm0, double k_wl, double vdd, double vth);
double gm_avg_approx_device(double v_asrr, double gm0, double k_wl, double vdd, double vth);

/// Cycle-averaged block transconductance, (gm_avg,n + gm_avg,p) / 2.
double gm_avg_exact(double v_asrr, const GmBlockParams& gm);
double gm_avg_approx(double v_asrr, const GmBlockParams& gm);

enum class GmAverage { exact, approx };

struct NonlinearOptions {
    PowerSplit split = PowerSplit::matched;
    GmAverage average = GmAverage::exact;
    double damping = 0.5;
    double rel_tol = 1e-9;
    int max_iterations = 200;
    /// Needed for PowerSplit::general.
    std::optional<TransmissionLineSection> line;
    double z0 = 50.0;
};

struct NonlinearSolution {
    double q = 0.0;
    double v_asrr = 0.0;
    int iterations = 0;
    bool used_bisection = false;
};

/// Self-consistent Q and swing under gm compression. The describing-function
/// treatment is meaningful for v_asrr up to about 3 V_TH.
NonlinearSolution q_on_nonlinear(const AsrrState& state, double p_in,
                                 const NonlinearOptions& options = {});

}  // namespace asrr
