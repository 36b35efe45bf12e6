#include "asrr/fixtures.hpp"

#include <cmath>

namespace asrr::fixtures {

double Reference::omega0() const { return hz_to_rad(f0); }

double Reference::lsrr() const { return 1.0 / (omega0() * omega0() * c_asrr); }

double Reference::r_srr() const { return omega0() * lsrr() * q_off; }

double Reference::gm() const { return (1.0 - q_off / q_on) / r_srr(); }

SrrParams Reference::srr() const { return {lsrr(), c_asrr, q_off, k}; }

TransmissionLineSection Reference::line() const {
    const double beta_l = 1.0 / (k * k * q_on);
    return TransmissionLineSection::from_electrical_length(z0, beta_l, omega0(), line_length);
}

GmBlockParams Reference::gm_block() const {
    GmBlockParams block;
    block.gm0 = gm();
    // Square law at V_GS = V_DD/2: gm0 = K (V_DD/2 - V_TH).
    block.kn_wl = gm() / (vdd / 2.0 - vth);
    block.kp_wl = block.kn_wl;
    block.vdd = vdd;
    block.vth = vth;
    return block;
}

AsrrState Reference::state() const { return {srr(), gm_block()}; }

Reference reference() { return {}; }

DesignSpec reference_design_spec() {
    const Reference ref;
    DesignSpec spec;
    spec.f0 = ref.f0;
    spec.n_pixels = 1;
    spec.line = ref.line();
    spec.z0 = ref.z0;
    spec.q_off = ref.q_off;
    const double r_eq = ref.omega0() * ref.k * ref.k * ref.q_off * spec.line.ltl;
    spec.il_budget = r_eq / (r_eq + 2.0 * ref.z0);
    spec.snr_dc_target = 1e-3;
    spec.snr_dr_target = 1e-3;
    spec.delta_r_ref = 1.0;
    spec.kn_prime = 300e-6;
    spec.kp_prime = 300e-6;
    spec.vth = ref.vth;
    spec.vdd = ref.vdd;
    spec.kf_area = 1.17e-22;     // K_f = 1e-10 V^2 at W L = 1.17 um^2
    spec.c_gm_per_area = 1e-2;   // 10 fF/um^2
    spec.c_srr_intrinsic = 0.0;
    spec.l_srr_max = ref.lsrr();
    return spec;
}

double InstanceGenerator::uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
}

double InstanceGenerator::log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
}

SrrParams InstanceGenerator::random_resonator(double q) {
    const double w0 = hz_to_rad(log_uniform(10e9, 500e9));
    const double l = log_uniform(20e-12, 200e-12);
    return {l, 1.0 / (w0 * w0 * l), q, 0.0};
}

Instance InstanceGenerator::matched() {
    Instance out;
    const double q = uniform(20.0, 250.0);
    out.srr = random_resonator(q);
    const double beta_l = uniform(0.05, 1.0);
    out.line = TransmissionLineSection::from_electrical_length(out.z0, beta_l, out.srr.omega0(),
                                                              uniform(20e-6, 300e-6));
    out.srr.k = 1.0 / std::sqrt(beta_l * q);
    out.q_on = q;
    return out;
}

Instance InstanceGenerator::passive() {
    Instance out;
    out.srr = random_resonator(uniform(5.0, 50.0));
    out.line = TransmissionLineSection::from_electrical_length(
        out.z0, uniform(0.05, 1.0), out.srr.omega0(), uniform(20e-6, 300e-6));
    out.srr.k = uniform(0.05, 0.5);
    out.q_on = out.srr.q_off;
    return out;
}

Instance InstanceGenerator::active() {
    Instance out = passive();
    const double q_off = uniform(8.0, 20.0);
    const double loop = uniform(0.3, 0.95);
    const double r_srr = out.srr.with_quality(q_off).parallel_loss();
    // R_SRR sits across the capacitor next to the -gm; the ring itself is lossless.
    out.srr.q_off = kMaxQuality;
    out.shunt_g = (1.0 - loop) / r_srr;
    out.q_on = q_off / (1.0 - loop);
    return out;
}

}  // namespace asrr::fixtures
