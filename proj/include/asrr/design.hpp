#pragma once

// Greedy sizing of an ASRR pixel: coupling from the insertion-loss budget,
// the matched Q_ON, the SRR loss from the SNR targets, then -gm device sizes.

#include <string>
#include <string_view>
#include <vector>

#include "asrr/active.hpp"
#include "asrr/noise.hpp"
#include "asrr/resonator.hpp"

namespace asrr {

struct DesignSpec {
    double f0 = 0.0;              // Hz
    int n_pixels = 1;
    double il_budget = 0.0;       // fractional amplitude loss of the whole array
    double snr_dc_target = 0.0;
    double snr_dr_target = 0.0;
    double delta_r_ref = 0.0;     // Ohm, loss shift the SNR_dR target refers to
    double z0 = 50.0;
    TransmissionLineSection line;
    double q_off = 10.0;
    double kn_prime = 0.0;        // mu_n C_ox, A/V^2
    double kp_prime = 0.0;        // mu_p C_ox, A/V^2
    double vth = 0.0;
    double vdd = 0.0;
    double kf_area = 0.0;         // V^2 m^2; K_f = kf_area / (W L)
    double c_gm_per_area = 0.0;   // F/m^2, effective -gm loading per unit W L
    double c_srr_intrinsic = 0.0; // F, ring capacitance without the devices
    double l_srr_max = 0.0;       // H, ceiling set by the pixel size
    FlickerBand flicker_band{};

    void validate() const;
};

enum class BindingConstraint {
    none,
    geometric_coupling,  // k_max above the proximity-coupling cap
    boost_not_required,  // Q_ON,min <= Q_OFF, no positive gm matches
    loop_gain,           // gm R_SRR >= 1
    device_overdrive,    // V_DD/2 <= V_TH
    snr_dr_unreachable,
    snr_dc_unreachable
};

std::string_view to_string(BindingConstraint c);

/// One step of the procedure: the named quantities it read and wrote.
struct DesignStep {
    std::string label;  // "1" .. "8", with "3b" for L_SRR
    std::string name;
    std::vector<std::string> consumes;
    std::vector<std::string> produces;
};

struct DesignResult {
    bool feasible = false;
    BindingConstraint binding = BindingConstraint::none;
    std::string message;

    double k_max = 0.0;
    double q_on_min = 0.0;
    double r_srr = 0.0;
    double l_srr = 0.0;
    double c_asrr = 0.0;          // total SRR capacitance including the devices
    double c_srr_intrinsic = 0.0;
    double c_gm = 0.0;
    double gm_required = 0.0;     // per device, S
    double wl_ratio_n = 0.0;
    double wl_ratio_p = 0.0;
    double kn_wl = 0.0;
    double kp_wl = 0.0;
    double width_n = 0.0;         // m
    double width_p = 0.0;         // m
    double length = 0.0;          // m, shared by both devices
    double kf = 0.0;
    double alpha_1_over_f = 0.0;
    double snr_dc = 0.0;
    double snr_dr = 0.0;
    double p_in_lin = 0.0;        // W
    double power_estimate = 0.0;  // W
    double area_scale = 1.0;      // W L growth applied in the last step
    double vth = 0.0;

    std::vector<DesignStep> steps;
};

/// Runs the eight-step procedure. Infeasible specs return feasible = false
/// with exactly one binding constraint named.
DesignResult synthesize(const DesignSpec& spec);

/// Supply power of the two bias branches under the square law,
/// V_DD K (W/L) (V_DD/2 - V_TH)^2. An estimate, not a simulation.
double power_estimate(const DesignResult& result, double vdd);

/// The synthesized pixel as an analysis state.
AsrrState design_state(const DesignResult& result, const DesignSpec& spec);

struct Reanalysis {
    double snr_dc = 0.0;
    double snr_dr = 0.0;
    double q_on = 0.0;
    double matching = 0.0;  // beta*l*k^2*Q_ON, 1 when matched
};

/// Feeds a feasible result back through the analysis modules.
Reanalysis reanalyze(const DesignResult& result, const DesignSpec& spec);

/// Human-readable report and flat key = value listing.
std::string format_report(const DesignResult& result);
std::string format_key_values(const DesignResult& result);

}  // namespace asrr
