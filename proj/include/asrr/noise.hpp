#pragma once

// Propagation of device white and flicker noise, supply noise and source
// phase noise to the output phase of an optimally coupled ASRR, PM-to-AM
// conversion, and the flicker-limited SNR.

#include <optional>
#include <string_view>
#include <vector>

#include "asrr/active.hpp"

namespace asrr {

struct FlickerBand {
    double f_lo = 1.0;    // Hz
    double f_hi = 1.0e3;  // Hz
};

struct NoiseContext {
    AsrrState state;
    double z0 = 50.0;
    double p_in = 1e-3;         // W
    double temperature = 290.0; // K
    double delta_omega_s = 0.0; // rad/s, sample-induced resonance offset
    FlickerBand band{};

    void validate() const;
};

enum class NoiseContributor { white, flicker, supply, input };

std::string_view to_string(NoiseContributor c);

struct PhaseNoiseResult {
    double offset_freq = 0.0;  // Hz
    double ssb_dbch = 0.0;
    NoiseContributor contributor = NoiseContributor::white;
};

/// Output voltage noise density (V^2/Hz) from the -gm channel noise.
double white_output_noise_density(const NoiseContext& ctx);

/// SSB phase noise from white noise, dBc/Hz. Independent of offset.
double white_ssb_phase_noise(const NoiseContext& ctx);

struct GateVoltages {
    double v_gs1 = 0.0;
    double v_gs2 = 0.0;
    double v_gs3 = 0.0;
    double v_gs4 = 0.0;
    double v_x = 0.0;
};

/// Small-signal gate-source voltages produced by a flicker source v_fn on
/// device 1 of a symmetric block.
GateVoltages flicker_gate_decomposition(double v_fn);

struct DeviceSlopes {
    double n = 0.0;
    double p = 0.0;
    double sum() const { return n + p; }
};

/// dgm/dv_gs of the NMOS and PMOS devices at the V_DD/2 bias.
DeviceSlopes gate_gm_slopes(const GmBlockParams& gm);
/// dgm/dv_dd of the NMOS and PMOS devices.
DeviceSlopes supply_gm_slopes(const GmBlockParams& gm);

/// dS_RES / v_fn in s/(rad V).
double flicker_sres_sensitivity(const AsrrState& state);
/// dS_RES / v_dd in s/(rad V).
double supply_sres_sensitivity(const AsrrState& state);

/// Flicker phase-noise PSD S_phi (rad^2/Hz) at an offset; zero at delta_omega_s = 0.
double flicker_phase_psd(const NoiseContext& ctx, double offset_hz);
/// Flicker SSB phase noise. At delta_omega_s = 0 the flicker term vanishes and
/// the white-noise level is reported instead.
PhaseNoiseResult flicker_phase_noise(const NoiseContext& ctx, double offset_hz);

/// Supply-noise phase PSD for a supply voltage PSD (V^2/Hz) at the offset.
double supply_phase_psd(const NoiseContext& ctx, double supply_psd);

/// |1 + j offset 2Q/w0|^2, the input-to-output phase-noise power gain.
double input_phase_transfer(double q_on, double omega0, double offset);

/// PM-to-AM conversion gain in dB relative to the input phase noise, with
/// d|S21|/dw taken from a five-point stencil on a uniform sweep.
double pm_to_am_gain(const TwoPortSweep& sweep, double omega_in, double offset);

/// RMS of a K_f/f gate noise over the band.
double flicker_rms(double kf, const FlickerBand& band);

/// (5/36)(K_n (W/L)_n + K_p (W/L)_p), channel-length modulation neglected.
double alpha_flicker(const GmBlockParams& gm);

double snr_delta_c(const AsrrState& state, double kf, const FlickerBand& band);
double snr_delta_r(const AsrrState& state, double kf, const FlickerBand& band, double delta_r);
/// Same closed forms with K_f and the band taken from the context. The
/// resonance shift delta_omega_s does not enter.
double snr_delta_c(const NoiseContext& ctx);
double snr_delta_r(const NoiseContext& ctx, double delta_r);

/// Signal and RMS flicker noise of the output phase at delta_omega_s, the
/// four devices' contributions summed in power.
struct SnrChain {
    double signal = 0.0;  // rad
    double noise = 0.0;   // rad rms
    double snr() const { return signal / noise; }
};
SnrChain snr_chain_delta_c(const NoiseContext& ctx);
SnrChain snr_chain_delta_r(const NoiseContext& ctx, double delta_r);

struct NoiseRow {
    double offset_hz = 0.0;
    NoiseContributor contributor = NoiseContributor::white;
    double ssb_dbch = 0.0;
};

/// Breakdown at each offset: white, flicker, and (when supply_psd is given) supply.
std::vector<NoiseRow> noise_breakdown(const NoiseContext& ctx, const std::vector<double>& offsets_hz,
                                      std::optional<double> supply_psd = std::nullopt);

}  // namespace asrr
