#pragma once

// Independent numerical verifiers for the analytic models: a small nodal AC
// solver for the line/SRR network, root finding, differentiation, quadrature
// and a time-domain gm average. Only tests and `validate` use these.

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "asrr/active.hpp"
#include "asrr/resonator.hpp"

namespace asrr::oracle {

/// Modified nodal AC analysis. Node 0 is ground. Inductors carry a branch
/// current unknown so mutual coupling can be stamped directly.
class AcNetwork {
public:
    explicit AcNetwork(int nodes);

    int nodes() const { return nodes_; }
    /// Two-terminal admittance between nodes a and b (resistor, conductance,
    /// capacitor as jwC, negative conductance).
    void add_admittance(int a, int b, cplx y);
    void add_resistor(int a, int b, double r);
    void add_capacitor(int a, int b, double c);
    /// Returns the inductor index used by add_mutual.
    int add_inductor(int a, int b, double l);
    void add_mutual(int l1, int l2, double m);
    /// Current of value i flowing from node a through the source into node b.
    void add_current_source(int a, int b, cplx i);
    /// Port between node and ground with a Norton source of internal
    /// impedance z0. Returns the port index.
    int add_port(int node, double z0);

    /// Node voltages (index 0 is ground) with port p driven by an open-circuit
    /// EMF emf[p]. Throws NumericalError on a singular system.
    std::vector<cplx> solve(double omega, std::span<const cplx> emf) const;

    /// n-port S-matrix, s[i][j] = b_i / a_j.
    std::vector<std::vector<cplx>> s_matrix(double omega) const;

    int port_count() const { return static_cast<int>(ports_.size()); }
    int port_node(int p) const { return ports_.at(static_cast<std::size_t>(p)).node; }

private:
    struct Admittance { int a, b; cplx y; double c; };  // y + jwc
    struct Inductor { int a, b; double l; };
    struct Mutual { int l1, l2; double m; };
    struct Source { int a, b; cplx i; };
    struct Port { int node; double z0; };

    void check_node(int n) const;

    int nodes_;
    std::vector<Admittance> admittances_;
    std::vector<Inductor> inductors_;
    std::vector<Mutual> mutuals_;
    std::vector<Source> sources_;
    std::vector<Port> ports_;
};

/// Solves a dense complex system in place by Gaussian elimination with
/// partial pivoting.
std::vector<cplx> solve_dense(std::vector<std::vector<cplx>> a, std::vector<cplx> b);

/// The line segment magnetically coupled to one SRR loop.
struct MeshCircuit {
    double ltl = 0.0;
    double lsrr = 0.0;
    double m = 0.0;
    double r_series = 0.0;     // series loss in the SRR loop
    double csrr = 0.0;
    double shunt_g = 0.0;      // conductance across the SRR capacitor; -gm when active
    double r_parallel = 0.0;   // optional parallel loss across the capacitor, 0 = none
    double ctl = 0.0;          // line capacitance, split into C/2 at each end
    bool pi_sections = false;
    double z0 = 50.0;

    /// Passive or boosted SRR from its parameters. shunt_g models the -gm.
    static MeshCircuit from(const SrrParams& srr, const TransmissionLineSection& line, double z0,
                            double shunt_g = 0.0, bool pi_sections = false);
    void validate() const;

    /// Node of the SRR capacitor's hot terminal in the built network.
    int capacitor_node() const { return r_series > 0.0 ? 4 : 3; }
    AcNetwork build() const;
};

struct SMatrix {
    cplx s11, s12, s21, s22;
};

SMatrix solve_two_port(const MeshCircuit& circuit, double omega);

TwoPortSweep sweep(const MeshCircuit& circuit, std::span<const double> freqs);

/// Voltage at port 2 per unit current injected across the SRR capacitor with
/// both ports terminated in z0.
cplx noise_transfer(const MeshCircuit& circuit, double omega);

/// Brent's method on [a, b]. Throws NumericalError without a sign change.
double brent(const std::function<double(double)>& f, double a, double b, double abs_tol,
             int max_iterations = 200);

double central_difference(const std::function<double(double)>& f, double x, double h);
/// Fourth-order five-point stencil.
double five_point_derivative(const std::function<double(double)>& f, double x, double h);

/// Composite trapezoid rule with n intervals.
double trapezoid(const std::function<double(double)>& f, double a, double b, std::size_t n);

/// Phase of each sample with 2*pi corrections wherever adjacent samples jump by more than pi.
std::vector<double> unwrap_phase(std::span<const cplx> values);

struct PhaseExtrema {
    double omega_low = 0.0;
    double omega_high = 0.0;
};

/// Extrema of the unwrapped S21 phase of a sweep: roots of the finite
/// difference derivative, located by Brent on its linear interpolant.
PhaseExtrema find_phase_extrema(const TwoPortSweep& sweep);

/// Same search on a continuous S21(w): the grid of n points on [lo, hi]
/// brackets the roots, Brent refines them to abs_tol.
PhaseExtrema find_phase_extrema(const std::function<cplx(double)>& s21, double lo, double hi,
                                std::size_t n, double abs_tol);

/// Frequencies of the local maxima of |d|S21|/dw| on the sweep grid,
/// i.e. the inflection points of |S21|.
std::vector<double> magnitude_inflections(const TwoPortSweep& sweep);

/// Cycle average of the block gm under a sinusoidal differential swing,
/// from the piecewise square-law device model (cutoff, saturation, triode).
double time_avg_gm(double v_asrr, const GmBlockParams& gm, std::size_t samples = 20000);

/// Block transconductance with small-signal offsets on each device's
/// gate-source voltage: devices 1,2 are the NMOS pair, 3,4 the PMOS pair.
/// Each pair acts as two transconductors in series.
double perturbed_block_gm(const GmBlockParams& gm, const std::array<double, 4>& dv_gs);

/// S_RES by central differences of the S21 phase at the SRR's w0, using the
/// exact reflected impedance w^2 M^2 / Z_loop. The series line inductance is
/// left out: it is common to every loading state.
double numeric_phase_slope(const SrrParams& srr, const TransmissionLineSection& line, double z0,
                           double shunt_g = 0.0);
double numeric_phase_slope(const AsrrState& state, const TransmissionLineSection& line, double z0);

}  // namespace asrr::oracle
