#include "asrr/resonator.hpp"

#include <algorithm>
#include <cmath>

#include "asrr/error.hpp"
#include "parallel.hpp"

namespace asrr {

double TransmissionLineSection::z0() const { return std::sqrt(ltl / ctl); }

double TransmissionLineSection::beta(double omega) const {
    return omega * std::sqrt(ltl * ctl) / length;
}

double TransmissionLineSection::electrical_length(double omega) const {
    return omega * std::sqrt(ltl * ctl);
}

TransmissionLineSection TransmissionLineSection::from_electrical_length(double z0, double beta_l,
                                                                        double omega,
                                                                        double length) {
    require(z0 > 0.0 && beta_l > 0.0 && omega > 0.0 && length > 0.0,
            "line section requires positive z0, beta*l, omega and length");
    // beta*l = w sqrt(L C) and z0 = sqrt(L / C)  =>  L = z0 beta*l / w, C = beta*l / (z0 w)
    return {z0 * beta_l / omega, beta_l / (z0 * omega), length};
}

double SrrParams::omega0() const { return 1.0 / std::sqrt(lsrr * csrr); }

double SrrParams::series_loss() const {
    return omega0() * lsrr / std::min(q_off, kMaxQuality);
}

double SrrParams::parallel_loss() const { return omega0() * lsrr * q_off; }

double SrrParams::mutual_inductance(const TransmissionLineSection& line) const {
    return k * std::sqrt(line.ltl * lsrr);
}

SrrParams SrrParams::with_quality(double q) const {
    SrrParams out = *this;
    out.q_off = q;
    return out;
}

void SrrParams::validate() const {
    require(lsrr > 0.0 && csrr > 0.0 && q_off > 0.0, "SRR requires positive L, C and Q");
    require(k >= 0.0 && k < 1.0, "coupling coefficient must satisfy 0 <= k < 1");
}

double EquivalentResonator::omega0() const { return 1.0 / std::sqrt(l_eq * c_eq); }

double EquivalentResonator::quality() const { return r_eq / (omega0() * l_eq); }

cplx EquivalentResonator::impedance(double omega) const {
    const cplx admittance{1.0 / r_eq, omega * c_eq - 1.0 / (omega * l_eq)};
    return 1.0 / admittance;
}

void TwoPortSweep::validate() const {
    require(s11.size() == freqs.size() && s21.size() == freqs.size(),
            "sweep arrays must have equal length");
    for (std::size_t i = 1; i < freqs.size(); ++i) {
        require(freqs[i] > freqs[i - 1], "sweep frequencies must be strictly increasing");
    }
    require(z0_ref > 0.0, "sweep reference impedance must be positive");
}

SParams series_element_sparams(cplx z, double z0) {
    const cplx denom = z + 2.0 * z0;
    return {z / denom, 2.0 * z0 / denom};
}

EquivalentResonator equivalent_resonator(const SrrParams& srr, const TransmissionLineSection& line) {
    srr.validate();
    if (srr.k == 0.0) {
        throw DomainError("no coupling: equivalent resonator is degenerate for k = 0");
    }
    const double w0 = srr.omega0();
    const double m = srr.mutual_inductance(line);
    const double w0m2 = w0 * w0 * m * m;
    return {w0m2 / srr.series_loss(), w0m2 * srr.csrr, srr.lsrr / w0m2};
}

cplx series_loading_impedance(const SrrParams& srr, const TransmissionLineSection& line,
                              double omega, double shunt_conductance) {
    require(omega > 0.0, "series_loading_impedance requires omega > 0");
    srr.validate();
    const double m = srr.mutual_inductance(line);
    const cplx cap_branch = 1.0 / cplx{shunt_conductance, omega * srr.csrr};
    const cplx loop = srr.series_loss() + cplx{0.0, omega * srr.lsrr} + cap_branch;
    return cplx{0.0, omega * line.ltl} + omega * omega * m * m / loop;
}

SParams s_parameters_at(const SrrParams& srr, const TransmissionLineSection& line, double omega,
                        const SweepOptions& options) {
    srr.validate();
    const double z0 = options.z0_ref.value_or(line.z0());
    cplx z;
    if (options.model == ImpedanceModel::closed_form) {
        z = series_loading_impedance(srr, line, omega, options.shunt_conductance);
    } else {
        require(options.shunt_conductance == 0.0,
                "shunt conductance is only supported by the closed-form model");
        // A decoupled resonator contributes no equivalent element.
        z = srr.k == 0.0 ? cplx{} : equivalent_resonator(srr, line).impedance(omega);
        if (options.include_line_inductance) {
            z += cplx{0.0, omega * line.ltl};
        }
    }
    return series_element_sparams(z, z0);
}

TwoPortSweep s_parameters(const SrrParams& srr, const TransmissionLineSection& line,
                          std::span<const double> freqs, const SweepOptions& options) {
    TwoPortSweep sweep;
    sweep.freqs.assign(freqs.begin(), freqs.end());
    sweep.z0_ref = options.z0_ref.value_or(line.z0());
    sweep.s11.resize(freqs.size());
    sweep.s21.resize(freqs.size());
    sweep.validate();
    detail::parallel_for(freqs.size(), [&](std::size_t i) {
        const auto s = s_parameters_at(srr, line, freqs[i], options);
        sweep.s11[i] = s.s11;
        sweep.s21[i] = s.s21;
    });
    return sweep;
}

double optimum_q_for_k(double k, const TransmissionLineSection& line, double omega0) {
    require(k > 0.0 && k < 1.0, "optimum_q_for_k requires 0 < k < 1");
    const double bl = line.electrical_length(omega0);
    return 1.0 / (bl * k * k);
}

double optimum_k_for_q(double q_on, const TransmissionLineSection& line, double omega0) {
    require(q_on > 0.0, "optimum_k_for_q requires Q_ON > 0");
    const double k = 1.0 / std::sqrt(line.electrical_length(omega0) * q_on);
    if (k >= 1.0) {
        throw DomainError("coupling unrealizable: optimum k >= 1");
    }
    return k;
}

double array_insertion_loss(int n, const SrrParams& srr, const TransmissionLineSection& line) {
    require(n >= 0, "array_insertion_loss requires n >= 0");
    srr.validate();
    const double r_eq = srr.omega0() * srr.k * srr.k * srr.q_off * line.ltl;
    return n * r_eq / (r_eq + 2.0 * line.z0());
}

CouplingLimit k_max_for_il(double il_budget, int n, const TransmissionLineSection& line,
                           double q_off, double omega0) {
    require(il_budget > 0.0 && il_budget < 1.0, "IL budget must lie in (0, 1)");
    require(n >= 1, "k_max_for_il requires n >= 1");
    require(q_off > 0.0, "k_max_for_il requires Q_OFF > 0");
    const double per_pixel = il_budget / n;
    const double r_eq = 2.0 * line.z0() * per_pixel / (1.0 - per_pixel);
    const double k = std::sqrt(r_eq / (omega0 * q_off * line.ltl));
    return {k, k > kGeometricCouplingLimit};
}

double q_on_min(double k_max, const TransmissionLineSection& line, double omega0) {
    require(k_max > 0.0, "q_on_min requires k_max > 0");
    return 1.0 / (line.electrical_length(omega0) * k_max * k_max);
}

double output_phase_slope(const EquivalentResonator& eq, double z0) {
    const double w0 = eq.omega0();
    return 2.0 * eq.r_eq * eq.r_eq / ((eq.r_eq + 2.0 * z0) * w0 * w0 * eq.l_eq);
}

double effective_output_q(const EquivalentResonator& eq, double z0) {
    return output_phase_slope(eq, z0) * eq.omega0() / 2.0;
}

double phase_slope_vs_resistance(const SrrParams& srr, const TransmissionLineSection& line,
                                 double z0) {
    const auto eq = equivalent_resonator(srr, line);
    const double w0 = eq.omega0();
    const double r = eq.r_eq;
    const double per_r_eq =
        2.0 * r * (r + 4.0 * z0) / (eq.l_eq * w0 * w0 * (r + 2.0 * z0) * (r + 2.0 * z0));
    // R'/R_SRR = M^2 / L_SRR^2
    const double m = srr.mutual_inductance(line);
    return per_r_eq * (m * m) / (srr.lsrr * srr.lsrr);
}

DetectionBand detection_band(double omega0, double q_on) {
    require(q_on > 1.0, "detection_band requires Q_ON > 1");
    require(omega0 > 0.0, "detection_band requires omega0 > 0");
    const double inv_q = 1.0 / q_on;
    const double root = inv_q * std::sqrt(4.0 + inv_q * inv_q);
    const double base = 2.0 + inv_q * inv_q;
    const double high = omega0 * std::sqrt((base + root) / 2.0);
    const double low = omega0 * std::sqrt((base - root) / 2.0);
    return {low, high, high - low};
}

}  // namespace asrr
