#include "asrr/noise.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "asrr/error.hpp"

namespace asrr {

void NoiseContext::validate() const {
    require(temperature > 0.0, "noise temperature must be positive");
    require(band.f_hi > band.f_lo && band.f_lo > 0.0, "flicker band requires f_hi > f_lo > 0");
    require(p_in > 0.0, "input power must be positive");
    require(z0 > 0.0, "reference impedance must be positive");
}

std::string_view to_string(NoiseContributor c) {
    switch (c) {
        case NoiseContributor::white: return "white";
        case NoiseContributor::flicker: return "flicker";
        case NoiseContributor::supply: return "supply";
        case NoiseContributor::input: return "input";
    }
    return "unknown";
}

double white_output_noise_density(const NoiseContext& ctx) {
    const auto& s = ctx.state;
    const double channel = 4.0 * kBoltzmann * ctx.temperature * s.gm().gamma * s.gm().gm_total();
    return s.q_on() * s.omega0() * s.lsrr() * ctx.z0 * channel / 9.0;
}

double white_ssb_phase_noise(const NoiseContext& ctx) {
    ctx.validate();
    // |S21(w0)|^2 = 4/9 under optimum coupling.
    const double p_det = 4.0 / 9.0 * ctx.p_in;
    return db10(0.5 * white_output_noise_density(ctx) / (ctx.z0 * p_det));
}

GateVoltages flicker_gate_decomposition(double v_fn) {
    // gm (v_x + v_fn) + 3 gm v_x = 0 for four equal devices.
    const double v_x = -v_fn / 4.0;
    return {v_x + v_fn, v_x, v_x, v_x, v_x};
}

DeviceSlopes gate_gm_slopes(const GmBlockParams& gm) {
    const double v_gs = gm.vdd / 2.0;
    const double factor = 1.0 + gm.lambda * (2.0 * v_gs - gm.vth);
    return {gm.kn_wl * factor, gm.kp_wl * factor};
}

DeviceSlopes supply_gm_slopes(const GmBlockParams& gm) {
    const double factor = 0.5 + gm.lambda / 2.0 * (gm.vdd - gm.vth);
    return {gm.kn_wl * factor, gm.kp_wl * factor};
}

double flicker_sres_sensitivity(const AsrrState& state) {
    const double q = state.q_on();
    return 5.0 / 36.0 * state.lsrr() * q * q * gate_gm_slopes(state.gm()).sum();
}

double supply_sres_sensitivity(const AsrrState& state) {
    const double q = state.q_on();
    return 5.0 / 9.0 * state.lsrr() * q * q * supply_gm_slopes(state.gm()).sum();
}

double flicker_phase_psd(const NoiseContext& ctx, double offset_hz) {
    require(offset_hz > 0.0, "flicker phase noise requires a positive offset");
    const double sens = flicker_sres_sensitivity(ctx.state);
    const double gate_psd = ctx.state.gm().kf / offset_hz;
    return 4.0 * sens * sens * gate_psd * ctx.delta_omega_s * ctx.delta_omega_s;
}

PhaseNoiseResult flicker_phase_noise(const NoiseContext& ctx, double offset_hz) {
    const double psd = flicker_phase_psd(ctx, offset_hz);
    if (psd == 0.0) {
        return {offset_hz, white_ssb_phase_noise(ctx), NoiseContributor::white};
    }
    return {offset_hz, db10(psd), NoiseContributor::flicker};
}

double supply_phase_psd(const NoiseContext& ctx, double supply_psd) {
    require(supply_psd >= 0.0, "supply PSD must be non-negative");
    const double sens = supply_sres_sensitivity(ctx.state);
    return sens * sens * supply_psd * ctx.delta_omega_s * ctx.delta_omega_s;
}

double input_phase_transfer(double q_on, double omega0, double offset) {
    require(offset >= 0.0, "input_phase_transfer requires offset >= 0");
    const double x = offset * 2.0 * q_on / omega0;
    return 1.0 + x * x;
}

double pm_to_am_gain(const TwoPortSweep& sweep, double omega_in, double offset) {
    sweep.validate();
    const std::size_t n = sweep.size();
    require(n >= 6, "pm_to_am_gain needs at least six sweep points");
    const double h = (sweep.freqs.back() - sweep.freqs.front()) / static_cast<double>(n - 1);
    for (std::size_t i = 1; i < n; ++i) {
        require(std::abs(sweep.freqs[i] - sweep.freqs[i - 1] - h) <= 1e-6 * h,
                "pm_to_am_gain requires a uniform frequency grid");
    }
    const double pos = (omega_in - sweep.freqs.front()) / h;
    const auto lower = static_cast<std::ptrdiff_t>(std::floor(pos + 1e-9));
    if (lower < 2 || lower + 3 > static_cast<std::ptrdiff_t>(n)) {
        throw DomainError("pm_to_am_gain: omega_in too close to the sweep edge");
    }
    auto mag = [&](std::ptrdiff_t j) { return std::abs(sweep.s21[static_cast<std::size_t>(j)]); };
    auto slope = [&](std::ptrdiff_t j) {
        return (-mag(j + 2) + 8.0 * mag(j + 1) - 8.0 * mag(j - 1) + mag(j - 2)) / (12.0 * h);
    };
    const double t = std::clamp(pos - static_cast<double>(lower), 0.0, 1.0);
    double d_mag = slope(lower);
    double s_mag = mag(lower);
    if (t > 1e-9) {
        d_mag = (1.0 - t) * d_mag + t * slope(lower + 1);
        s_mag = (1.0 - t) * s_mag + t * mag(lower + 1);
    }
    const double ratio = std::abs(d_mag) * offset / s_mag;
    if (ratio == 0.0) {
        return -std::numeric_limits<double>::infinity();
    }
    return db20(ratio);
}

double flicker_rms(double kf, const FlickerBand& band) {
    require(band.f_lo > 0.0 && band.f_hi >= band.f_lo, "flicker band requires f_hi >= f_lo > 0");
    require(kf >= 0.0, "flicker coefficient must be non-negative");
    return std::sqrt(kf * std::log(band.f_hi / band.f_lo));
}

double alpha_flicker(const GmBlockParams& gm) { return 5.0 / 36.0 * (gm.kn_wl + gm.kp_wl); }

double snr_delta_c(const AsrrState& state, double kf, const FlickerBand& band) {
    const double alpha = alpha_flicker(state.gm());
    return 1.0 / (6.0 * alpha * flicker_rms(kf, band) * state.r_asrr());
}

double snr_delta_r(const AsrrState& state, double kf, const FlickerBand& band, double delta_r) {
    const double alpha = alpha_flicker(state.gm());
    const double r = state.r_srr();
    return 5.0 * delta_r / (18.0 * alpha * flicker_rms(kf, band) * r * r);
}

double snr_delta_c(const NoiseContext& ctx) {
    ctx.validate();
    return snr_delta_c(ctx.state, ctx.state.gm().kf, ctx.band);
}

double snr_delta_r(const NoiseContext& ctx, double delta_r) {
    ctx.validate();
    return snr_delta_r(ctx.state, ctx.state.gm().kf, ctx.band, delta_r);
}

namespace {

double chain_noise(const NoiseContext& ctx) {
    require(ctx.delta_omega_s > 0.0, "SNR chain requires delta_omega_s > 0");
    const double v_rms = flicker_rms(ctx.state.gm().kf, ctx.band);
    // Four uncorrelated devices: sqrt(4) times one device's contribution.
    return 2.0 * v_rms * flicker_sres_sensitivity(ctx.state) * ctx.delta_omega_s;
}

}  // namespace

SnrChain snr_chain_delta_c(const NoiseContext& ctx) {
    ctx.validate();
    // Matched S_RES = (2/3) Q_ON / w0.
    const double s_res = 2.0 * ctx.state.q_on() / (3.0 * ctx.state.omega0());
    return {s_res * ctx.delta_omega_s, chain_noise(ctx)};
}

SnrChain snr_chain_delta_r(const NoiseContext& ctx, double delta_r) {
    ctx.validate();
    const double d_sres = sample_response(ctx.state, {0.0, delta_r}).delta_sres;
    return {d_sres * ctx.delta_omega_s, chain_noise(ctx)};
}

std::vector<NoiseRow> noise_breakdown(const NoiseContext& ctx, const std::vector<double>& offsets_hz,
                                      std::optional<double> supply_psd) {
    ctx.validate();
    std::vector<NoiseRow> rows;
    const double white = white_ssb_phase_noise(ctx);
    for (double f : offsets_hz) {
        rows.push_back({f, NoiseContributor::white, white});
        const auto flicker = flicker_phase_noise(ctx, f);
        rows.push_back({f, NoiseContributor::flicker, flicker.ssb_dbch});
        if (supply_psd) {
            const double psd = supply_phase_psd(ctx, *supply_psd);
            rows.push_back({f, NoiseContributor::supply,
                            psd > 0.0 ? db10(psd) : -std::numeric_limits<double>::infinity()});
        }
    }
    return rows;
}

}  // namespace asrr
