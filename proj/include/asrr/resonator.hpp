#pragma once

// Passive split-ring resonator coupled to a host transmission line: the
// series loading impedance, the parallel R'L'C' equivalent, two-port
// S-parameters, optimum coupling, array insertion loss and phase slopes.

#include <optional>
#include <span>
#include <vector>

#include "asrr/units.hpp"

namespace asrr {

/// Largest quality factor used when deriving the series loss. A lossless SRR
/// puts a pole of the loading impedance on the real axis; capping Q keeps the
/// evaluation finite while preserving the limit.
inline constexpr double kMaxQuality = 1e9;

/// Segment of the host line that interacts with one resonator.
struct TransmissionLineSection {
    double ltl = 0.0;     // H
    double ctl = 0.0;     // F
    double length = 0.0;  // m

    double z0() const;
    /// Phase constant in rad/m.
    double beta(double omega) const;
    /// beta * length, the electrical length of the segment in rad.
    double electrical_length(double omega) const;

    /// Builds a segment with characteristic impedance z0 whose electrical
    /// length at omega is beta_l.
    static TransmissionLineSection from_electrical_length(double z0, double beta_l,
                                                          double omega, double length);
};

struct SrrParams {
    double lsrr = 0.0;   // H
    double csrr = 0.0;   // F
    double q_off = 0.0;  // unloaded quality factor
    double k = 0.0;      // magnetic coupling to the line

    double omega0() const;
    /// Series loss r = w0 L / Q, with Q capped at kMaxQuality.
    double series_loss() const;
    /// Parallel loss R = w0 L Q.
    double parallel_loss() const;
    double mutual_inductance(const TransmissionLineSection& line) const;

    /// Same resonator with a different quality factor.
    SrrParams with_quality(double q) const;
    void validate() const;
};

/// Parallel resonator inserted in series with the line at the coupling point.
struct EquivalentResonator {
    double r_eq = 0.0;
    double l_eq = 0.0;
    double c_eq = 0.0;

    double omega0() const;
    double quality() const;
    cplx impedance(double omega) const;
};

/// Frequency-indexed two-port samples. The networks modelled here are
/// symmetric and reciprocal, so S22 = S11 and S12 = S21.
struct TwoPortSweep {
    std::vector<double> freqs;  // rad/s, strictly increasing
    std::vector<cplx> s11;
    std::vector<cplx> s21;
    double z0_ref = 50.0;

    std::size_t size() const { return freqs.size(); }
    void validate() const;
};

struct SParams {
    cplx s11;
    cplx s21;
};

/// S-parameters of a series impedance between two ports referenced to z0.
SParams series_element_sparams(cplx z, double z0);

EquivalentResonator equivalent_resonator(const SrrParams& srr, const TransmissionLineSection& line);

/// Loading impedance Z1 = jwL_TL + w^2 M^2 / Z_loop evaluated directly.
/// shunt_conductance is an optional conductance across the SRR capacitor
/// (negative for a -gm block); the loop impedance becomes
/// r + jwL + 1/(jwC + G).
cplx series_loading_impedance(const SrrParams& srr, const TransmissionLineSection& line,
                              double omega, double shunt_conductance = 0.0);

enum class ImpedanceModel {
    equivalent,  // R'L'C' frozen at w0, in series with the line
    closed_form  // Z1 evaluated directly, frequency-dependent reflected impedance
};

struct SweepOptions {
    ImpedanceModel model = ImpedanceModel::equivalent;
    /// Adds jwL_TL in series with the equivalent resonator. Always present in
    /// the closed-form model.
    bool include_line_inductance = false;
    /// Conductance across the SRR capacitor (closed-form model only).
    double shunt_conductance = 0.0;
    /// Port reference; defaults to the line's characteristic impedance.
    std::optional<double> z0_ref;
};

SParams s_parameters_at(const SrrParams& srr, const TransmissionLineSection& line, double omega,
                        const SweepOptions& options = {});

TwoPortSweep s_parameters(const SrrParams& srr, const TransmissionLineSection& line,
                          std::span<const double> freqs, const SweepOptions& options = {});

/// Q_ON satisfying beta*l*k^2*Q_ON = 1, with beta*l taken at omega0.
double optimum_q_for_k(double k, const TransmissionLineSection& line, double omega0);
/// k satisfying beta*l*k^2*Q_ON = 1. Throws if the result is >= 1.
double optimum_k_for_q(double q_on, const TransmissionLineSection& line, double omega0);

/// Fractional amplitude loss at resonance of n passive pixels.
double array_insertion_loss(int n, const SrrParams& srr, const TransmissionLineSection& line);

/// Geometric ceiling on k for SRR-to-line proximity coupling.
inline constexpr double kGeometricCouplingLimit = 0.25;

struct CouplingLimit {
    double k_max = 0.0;
    bool exceeds_geometric_limit = false;
};

/// Largest k keeping the insertion loss of n pixels within il_budget.
CouplingLimit k_max_for_il(double il_budget, int n, const TransmissionLineSection& line,
                           double q_off, double omega0);
double q_on_min(double k_max, const TransmissionLineSection& line, double omega0);

/// d(phi_out)/dw at resonance (S_RES), in s/rad.
double output_phase_slope(const EquivalentResonator& eq, double z0);
/// Q_out = S_RES * w0 / 2.
double effective_output_q(const EquivalentResonator& eq, double z0);

/// d^2(phi_out)/(dw dR_SRR) at resonance, referred to the SRR's parallel loss.
double phase_slope_vs_resistance(const SrrParams& srr, const TransmissionLineSection& line, double z0);

struct DetectionBand {
    double omega_low = 0.0;
    double omega_high = 0.0;
    double width = 0.0;
};

DetectionBand detection_band(double omega0, double q_on);

}  // namespace asrr
