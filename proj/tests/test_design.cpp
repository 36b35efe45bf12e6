#include <doctest.h>

#include <cmath>
#include <set>
#include <string>

#include "asrr/design.hpp"
#include "asrr/error.hpp"
#include "asrr/fixtures.hpp"

using namespace asrr;

TEST_CASE("reference spec reproduces the reference pixel") {
    const auto spec = fixtures::reference_design_spec();
    const auto ref = fixtures::reference();
    const auto r = synthesize(spec);
    REQUIRE(r.feasible);
    CHECK(r.binding == BindingConstraint::none);
    CHECK(r.k_max == doctest::Approx(ref.k).epsilon(1e-9));
    CHECK(r.q_on_min == doctest::Approx(ref.q_on).epsilon(1e-9));
    CHECK(r.l_srr <= spec.l_srr_max * (1.0 + 1e-9));
    CHECK(r.snr_dc >= spec.snr_dc_target);
    CHECK(r.snr_dr >= spec.snr_dr_target * (1.0 - 1e-6));
    CHECK(r.gm_required * r.r_srr < 1.0);
}

TEST_CASE("synthesized pixel survives reanalysis") {
    const auto spec = fixtures::reference_design_spec();
    const auto r = synthesize(spec);
    REQUIRE(r.feasible);
    const auto back = reanalyze(r, spec);
    CHECK(back.matching == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(back.q_on == doctest::Approx(r.q_on_min).epsilon(1e-6));
    CHECK(back.snr_dc == doctest::Approx(r.snr_dc).epsilon(1e-6));
    CHECK(back.snr_dr == doctest::Approx(r.snr_dr).epsilon(1e-6));
    const auto st = design_state(r, spec);
    CHECK(st.omega0() == doctest::Approx(hz_to_rad(spec.f0)).epsilon(1e-9));
}

TEST_CASE("each step reads only spec inputs or earlier outputs") {
    const auto r = synthesize(fixtures::reference_design_spec());
    std::set<std::string> known{"il_budget", "n_pixels", "line", "q_off", "f0", "l_srr_max",
                                "snr_dr_target", "snr_dc_target", "delta_r_ref", "vdd", "vth",
                                "c_srr_intrinsic", "kn_prime", "kp_prime", "kf_area", "c_gm_per_area"};
    REQUIRE(r.steps.size() == 9);
    for (const auto& step : r.steps) {
        for (const auto& c : step.consumes) {
            INFO("step " << step.label << " consumes " << c);
            CHECK(known.count(c) == 1);
        }
        for (const auto& p : step.produces) known.insert(p);
    }
}

TEST_CASE("an IL budget above the coupling cap is infeasible") {
    auto spec = fixtures::reference_design_spec();
    spec.il_budget = 0.6;
    const auto r = synthesize(spec);
    CHECK_FALSE(r.feasible);
    CHECK(r.binding == BindingConstraint::geometric_coupling);
    CHECK_FALSE(r.message.empty());
}

TEST_CASE("unreachable SNR targets name their constraint") {
    auto spec = fixtures::reference_design_spec();
    spec.snr_dr_target = 1e12;
    const auto r = synthesize(spec);
    CHECK_FALSE(r.feasible);
    CHECK(r.binding == BindingConstraint::snr_dr_unreachable);
    auto spec_c = fixtures::reference_design_spec();
    spec_c.snr_dc_target = 1e12;
    const auto rc = synthesize(spec_c);
    CHECK_FALSE(rc.feasible);
    CHECK(rc.binding == BindingConstraint::snr_dc_unreachable);
}

TEST_CASE("insufficient overdrive is reported") {
    auto spec = fixtures::reference_design_spec();
    spec.vdd = 0.7;
    const auto r = synthesize(spec);
    CHECK_FALSE(r.feasible);
    CHECK(r.binding == BindingConstraint::device_overdrive);
}

TEST_CASE("power estimate is the square-law bias power") {
    const auto spec = fixtures::reference_design_spec();
    const auto r = synthesize(spec);
    const double v_ov = spec.vdd / 2.0 - spec.vth;
    CHECK(power_estimate(r, spec.vdd) == doctest::Approx(spec.vdd * r.kn_wl * v_ov * v_ov));
}

TEST_CASE("report listings") {
    const auto r = synthesize(fixtures::reference_design_spec());
    const auto kv = format_key_values(r);
    CHECK(kv.find("feasible = true") != std::string::npos);
    CHECK(kv.find("r_srr_ohm = ") != std::string::npos);
    CHECK(format_report(r).find("k_max") != std::string::npos);
    CHECK(to_string(BindingConstraint::loop_gain) == "loop_gain");
}

TEST_CASE("invalid specs throw") {
    auto spec = fixtures::reference_design_spec();
    spec.n_pixels = 0;
    CHECK_THROWS_AS(synthesize(spec), DomainError);
}

TEST_CASE("reference loop gain") {
    const auto r = synthesize(fixtures::reference_design_spec());
    REQUIRE(r.feasible);
    CHECK(std::abs(r.gm_required * r.r_srr - (1.0 - 10.0 / 54.0)) < 1e-6);
}

TEST_CASE("relaxing the IL budget lowers Q_ON,min and raises SNR_dC") {
    const auto base = fixtures::reference_design_spec();
    double prev_q = 1e300;
    double prev_snr = 0.0;
    for (double f : {0.4, 0.6, 0.8, 1.0, 1.2}) {
        auto spec = base;
        spec.il_budget = base.il_budget * f;
        spec.snr_dc_target = 1e-9;  // loose targets leave R_SRR at the ceiling
        spec.snr_dr_target = 1e-9;
        const auto r = synthesize(spec);
        INFO("il_budget scale " << f);
        REQUIRE(r.feasible);
        CHECK(r.q_on_min < prev_q);
        CHECK(r.snr_dc > prev_snr);
        prev_q = r.q_on_min;
        prev_snr = r.snr_dc;
    }
}

TEST_CASE("power estimate scaling") {
    const auto spec = fixtures::reference_design_spec();
    auto r = synthesize(spec);
    const double p = power_estimate(r, spec.vdd);
    r.kn_wl *= 2.0;
    CHECK(power_estimate(r, spec.vdd) == doctest::Approx(2.0 * p));
    r.kn_wl = 0.0;
    CHECK(power_estimate(r, spec.vdd) == 0.0);
    r = synthesize(spec);
    CHECK(power_estimate(r, 2.0 * spec.vdd) > 2.0 * p);
}
