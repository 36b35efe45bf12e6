#include <doctest.h>

#include <array>
#include <cmath>
#include <vector>

#include "asrr/error.hpp"
#include "asrr/fixtures.hpp"
#include "asrr/noise.hpp"
#include "asrr/oracle.hpp"

using namespace asrr;

namespace {

NoiseContext reference_context(double delta_f_s = 10e6) {
    NoiseContext ctx{fixtures::reference().state()};
    ctx.delta_omega_s = hz_to_rad(delta_f_s);
    return ctx;
}

}  // namespace

TEST_CASE("flicker source splits across the four devices") {
    const auto v = flicker_gate_decomposition(1e-3);
    CHECK(v.v_gs1 == doctest::Approx(0.75e-3));
    CHECK(v.v_gs2 == doctest::Approx(-0.25e-3));
    // Current continuity through the stack: the gate offsets cancel.
    CHECK(v.v_gs1 + v.v_gs2 + v.v_gs3 + v.v_gs4 == doctest::Approx(0.0));
}

TEST_CASE("flicker S_RES sensitivity against a perturbed block") {
    // d(gm_total)/dv_fn from the decomposition, checked by finite differences
    // of the series-pair transconductance.
    const auto gm = fixtures::reference().gm_block();
    const double h = 1e-6;
    auto block = [&](double v_fn) {
        const auto d = flicker_gate_decomposition(v_fn);
        return oracle::perturbed_block_gm(gm, {d.v_gs1, d.v_gs2, d.v_gs3, d.v_gs4});
    };
    const double dgm = oracle::central_difference(block, 0.0, h);
    const auto ref = fixtures::reference();
    const auto st = ref.state();
    auto slope = [&](double g) { return oracle::numeric_phase_slope(st.with_gm(g), ref.line(), ref.z0); };
    const double ds_dgm = oracle::central_difference(slope, st.gm().gm0, 1e-4 * st.gm().gm0);
    CHECK(flicker_sres_sensitivity(st) == doctest::Approx(ds_dgm * dgm).epsilon(1e-4));
}

TEST_CASE("white phase noise is flat in offset and falls with carrier power") {
    auto ctx = reference_context();
    const double a = white_ssb_phase_noise(ctx);
    ctx.p_in *= 10.0;
    CHECK(white_ssb_phase_noise(ctx) == doctest::Approx(a - 10.0).epsilon(1e-9));
    const auto rows = noise_breakdown(reference_context(), {10.0, 1e3, 1e5});
    for (const auto& r : rows) {
        if (r.contributor == NoiseContributor::white) CHECK(r.ssb_dbch == doctest::Approx(a));
    }
}

TEST_CASE("flicker phase noise falls 10 dB per decade and grows with detuning") {
    const auto ctx = reference_context();
    const double a = flicker_phase_noise(ctx, 100.0).ssb_dbch;
    const double b = flicker_phase_noise(ctx, 1000.0).ssb_dbch;
    CHECK(a - b == doctest::Approx(10.0).epsilon(1e-9));
    const auto twice = reference_context(20e6);
    CHECK(flicker_phase_psd(twice, 100.0) == doctest::Approx(4.0 * flicker_phase_psd(ctx, 100.0)).epsilon(1e-9));
}

TEST_CASE("flicker term vanishes on resonance") {
    const auto ctx = reference_context(0.0);
    CHECK(flicker_phase_psd(ctx, 100.0) == 0.0);
    const auto r = flicker_phase_noise(ctx, 100.0);
    CHECK(r.contributor == NoiseContributor::white);
    CHECK(r.ssb_dbch == doctest::Approx(white_ssb_phase_noise(ctx)));
}

TEST_CASE("flicker sensitivity scales with Q_ON squared") {
    // At fixed L and detuning dS_RES/dv_fn goes as Q_ON^2, so the phase PSD
    // goes as Q_ON^4.
    auto ctx = reference_context();
    const double r = ctx.state.r_srr();
    auto psd_at = [&](double q) {
        NoiseContext c = ctx;
        c.state = ctx.state.with_gm((1.0 - ctx.state.q_off() / q) / r);
        return flicker_phase_psd(c, 100.0);
    };
    CHECK(psd_at(80.0) / psd_at(40.0) == doctest::Approx(16.0).epsilon(1e-9));
    const auto hi = ctx.state.with_gm((1.0 - ctx.state.q_off() / 80.0) / r);
    const auto lo = ctx.state.with_gm((1.0 - ctx.state.q_off() / 40.0) / r);
    CHECK(flicker_sres_sensitivity(hi) / flicker_sres_sensitivity(lo) == doctest::Approx(4.0).epsilon(1e-9));
}

TEST_CASE("input phase transfer") {
    CHECK(input_phase_transfer(50.0, 1.0, 0.0) == doctest::Approx(1.0));
    CHECK(input_phase_transfer(50.0, 1.0, 1.0 / 100.0) == doctest::Approx(2.0));
    CHECK_THROWS_AS(input_phase_transfer(50.0, 1.0, -1.0), DomainError);
}

TEST_CASE("PM-to-AM needs a uniform grid and interior points") {
    const auto ref = fixtures::reference();
    const auto srr = ref.srr().with_quality(ref.q_on);
    std::vector<double> w;
    for (int i = 0; i < 101; ++i) w.push_back(ref.omega0() * (0.95 + 0.001 * i));
    const auto sw = s_parameters(srr, ref.line(), w);
    CHECK_THROWS_AS(pm_to_am_gain(sw, w[0], 1e6), DomainError);
    const double at_null = pm_to_am_gain(sw, ref.omega0(), 1e6);
    const double off = pm_to_am_gain(sw, w[30], 1e6);
    CHECK(at_null < off - 40.0);
    auto bent = w;
    bent[50] += 0.3 * (w[51] - w[50]);
    const auto bad = s_parameters(srr, ref.line(), bent);
    CHECK_THROWS_AS(pm_to_am_gain(bad, w[50], 1e6), DomainError);
}

TEST_CASE("flicker rms and alpha") {
    CHECK(flicker_rms(1e-10, {1.0, 1e3}) == doctest::Approx(std::sqrt(1e-10 * std::log(1e3))));
    CHECK_THROWS_AS(flicker_rms(1e-10, {0.0, 1e3}), DomainError);
    GmBlockParams gm;
    gm.kn_wl = 3.6e-3;
    gm.kp_wl = 3.6e-3;
    CHECK(alpha_flicker(gm) == doctest::Approx(1e-3));
}

TEST_CASE("SNR closed forms against the power-summed chain") {
    const auto ctx = reference_context();
    const auto chain_c = snr_chain_delta_c(ctx);
    const auto chain_r = snr_chain_delta_r(ctx, 1.0);
    CHECK(chain_c.snr() / snr_delta_c(ctx) == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(chain_r.snr() / snr_delta_r(ctx, 1.0) == doctest::Approx(2.0).epsilon(1e-9));
    CHECK_THROWS_AS(snr_chain_delta_c(reference_context(0.0)), DomainError);
}

TEST_CASE("SNR closed forms do not depend on the detuning") {
    const auto a = reference_context(1e6);
    const auto b = reference_context(50e6);
    CHECK(snr_delta_c(a) == snr_delta_c(b));
    CHECK(snr_delta_r(a, 2.0) == snr_delta_r(b, 2.0));
}

TEST_CASE("contributor names") {
    CHECK(to_string(NoiseContributor::flicker) == "flicker");
    CHECK(to_string(NoiseContributor::supply) == "supply");
}
