#include "asrr/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "asrr/error.hpp"

namespace asrr::oracle {

AcNetwork::AcNetwork(int nodes) : nodes_(nodes) {
    require(nodes >= 1, "AcNetwork needs at least one non-ground node");
}

void AcNetwork::check_node(int n) const {
    require(n >= 0 && n <= nodes_, "AcNetwork node index out of range");
}

void AcNetwork::add_admittance(int a, int b, cplx y) {
    check_node(a);
    check_node(b);
    admittances_.push_back({a, b, y, 0.0});
}

void AcNetwork::add_resistor(int a, int b, double r) {
    require(r != 0.0, "zero resistance: use a node merge instead");
    add_admittance(a, b, 1.0 / r);
}

void AcNetwork::add_capacitor(int a, int b, double c) {
    check_node(a);
    check_node(b);
    admittances_.push_back({a, b, 0.0, c});
}

int AcNetwork::add_inductor(int a, int b, double l) {
    check_node(a);
    check_node(b);
    require(l > 0.0, "inductance must be positive");
    inductors_.push_back({a, b, l});
    return static_cast<int>(inductors_.size()) - 1;
}

void AcNetwork::add_mutual(int l1, int l2, double m) {
    const int n = static_cast<int>(inductors_.size());
    require(l1 >= 0 && l1 < n && l2 >= 0 && l2 < n && l1 != l2, "mutual needs two distinct inductors");
    mutuals_.push_back({l1, l2, m});
}

void AcNetwork::add_current_source(int a, int b, cplx i) {
    check_node(a);
    check_node(b);
    sources_.push_back({a, b, i});
}

int AcNetwork::add_port(int node, double z0) {
    require(node >= 1 && node <= nodes_, "port node must be a non-ground node");
    require(z0 > 0.0, "port impedance must be positive");
    ports_.push_back({node, z0});
    return static_cast<int>(ports_.size()) - 1;
}

std::vector<cplx> solve_dense(std::vector<std::vector<cplx>> a, std::vector<cplx> b) {
    const std::size_t n = b.size();
    double scale = 0.0;
    for (const auto& row : a) {
        for (const auto& v : row) scale = std::max(scale, std::abs(v));
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        }
        if (std::abs(a[piv][col]) <= 1e-14 * scale) {
            throw NumericalError("singular nodal system (instability boundary?)");
        }
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const cplx f = a[r][col] / a[col][col];
            if (f == 0.0) continue;
            for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    std::vector<cplx> x(n);
    for (std::size_t i = n; i-- > 0;) {
        cplx sum = b[i];
        for (std::size_t c = i + 1; c < n; ++c) sum -= a[i][c] * x[c];
        x[i] = sum / a[i][i];
    }
    return x;
}

std::vector<cplx> AcNetwork::solve(double omega, std::span<const cplx> emf) const {
    require(omega > 0.0, "AC solve requires omega > 0");
    require(emf.size() == ports_.size(), "one EMF per port expected");
    const std::size_t nv = static_cast<std::size_t>(nodes_);
    const std::size_t n = nv + inductors_.size();
    std::vector<std::vector<cplx>> a(n, std::vector<cplx>(n, 0.0));
    std::vector<cplx> rhs(n, 0.0);
    // Row/column of node k is k - 1; ground is dropped.
    auto stamp_y = [&](int p, int q, cplx y) {
        if (p > 0) a[p - 1][p - 1] += y;
        if (q > 0) a[q - 1][q - 1] += y;
        if (p > 0 && q > 0) {
            a[p - 1][q - 1] -= y;
            a[q - 1][p - 1] -= y;
        }
    };
    const cplx jw{0.0, omega};
    for (const auto& el : admittances_) stamp_y(el.a, el.b, el.y + jw * el.c);
    for (std::size_t k = 0; k < inductors_.size(); ++k) {
        const auto& ind = inductors_[k];
        const std::size_t row = nv + k;
        if (ind.a > 0) {
            a[ind.a - 1][row] += 1.0;
            a[row][ind.a - 1] += 1.0;
        }
        if (ind.b > 0) {
            a[ind.b - 1][row] -= 1.0;
            a[row][ind.b - 1] -= 1.0;
        }
        a[row][row] -= jw * ind.l;
    }
    for (const auto& mu : mutuals_) {
        a[nv + mu.l1][nv + mu.l2] -= jw * mu.m;
        a[nv + mu.l2][nv + mu.l1] -= jw * mu.m;
    }
    for (const auto& src : sources_) {
        if (src.b > 0) rhs[src.b - 1] += src.i;
        if (src.a > 0) rhs[src.a - 1] -= src.i;
    }
    for (std::size_t p = 0; p < ports_.size(); ++p) {
        stamp_y(ports_[p].node, 0, 1.0 / ports_[p].z0);
        rhs[ports_[p].node - 1] += emf[p] / ports_[p].z0;
    }
    const auto x = solve_dense(std::move(a), std::move(rhs));
    std::vector<cplx> v(nv + 1, 0.0);
    std::copy(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(nv), v.begin() + 1);
    return v;
}

std::vector<std::vector<cplx>> AcNetwork::s_matrix(double omega) const {
    const std::size_t np = ports_.size();
    std::vector<std::vector<cplx>> s(np, std::vector<cplx>(np));
    std::vector<cplx> emf(np, 0.0);
    for (std::size_t j = 0; j < np; ++j) {
        emf.assign(np, 0.0);
        emf[j] = 1.0;
        const auto v = solve(omega, emf);
        for (std::size_t i = 0; i < np; ++i) {
            // Incident wave at port j is emf / 2 in voltage terms.
            const double norm = std::sqrt(ports_[j].z0 / ports_[i].z0);
            s[i][j] = 2.0 * v[ports_[i].node] * norm - (i == j ? 1.0 : 0.0);
        }
    }
    return s;
}

MeshCircuit MeshCircuit::from(const SrrParams& srr, const TransmissionLineSection& line, double z0,
                              double shunt_g, bool pi_sections) {
    srr.validate();
    MeshCircuit c;
    c.ltl = line.ltl;
    c.lsrr = srr.lsrr;
    c.m = srr.mutual_inductance(line);
    c.r_series = srr.series_loss();
    c.csrr = srr.csrr;
    c.shunt_g = shunt_g;
    c.ctl = line.ctl;
    c.pi_sections = pi_sections;
    c.z0 = z0;
    return c;
}

void MeshCircuit::validate() const {
    require(ltl > 0.0 && lsrr > 0.0 && csrr > 0.0, "mesh circuit needs positive L_TL, L_SRR, C_SRR");
    require(m >= 0.0 && m * m <= ltl * lsrr * (1.0 + 1e-12),
            "inductance matrix not positive semi-definite (k > 1)");
    require(r_series >= 0.0 && r_parallel >= 0.0, "loss resistances must be non-negative");
    require(z0 > 0.0, "mesh circuit needs z0 > 0");
    require(!pi_sections || ctl > 0.0, "pi sections need C_TL > 0");
}

AcNetwork MeshCircuit::build() const {
    validate();
    const int cap = capacitor_node();
    AcNetwork net(cap);
    net.add_port(1, z0);
    net.add_port(2, z0);
    const int line = net.add_inductor(1, 2, ltl);
    const int loop = net.add_inductor(3, 0, lsrr);
    if (m > 0.0) net.add_mutual(line, loop, m);
    if (r_series > 0.0) net.add_resistor(3, cap, r_series);
    net.add_capacitor(cap, 0, csrr);
    if (shunt_g != 0.0) net.add_admittance(cap, 0, shunt_g);
    if (r_parallel > 0.0) net.add_resistor(cap, 0, r_parallel);
    if (pi_sections) {
        net.add_capacitor(1, 0, ctl / 2.0);
        net.add_capacitor(2, 0, ctl / 2.0);
    }
    return net;
}

SMatrix solve_two_port(const MeshCircuit& circuit, double omega) {
    require(omega > 0.0, "solve_two_port requires omega > 0");
    const auto s = circuit.build().s_matrix(omega);
    return {s[0][0], s[0][1], s[1][0], s[1][1]};
}

TwoPortSweep sweep(const MeshCircuit& circuit, std::span<const double> freqs) {
    const AcNetwork net = circuit.build();
    TwoPortSweep out;
    out.freqs.assign(freqs.begin(), freqs.end());
    out.z0_ref = circuit.z0;
    for (double w : freqs) {
        const auto s = net.s_matrix(w);
        out.s11.push_back(s[0][0]);
        out.s21.push_back(s[1][0]);
    }
    out.validate();
    return out;
}

cplx noise_transfer(const MeshCircuit& circuit, double omega) {
    AcNetwork net = circuit.build();
    net.add_current_source(0, circuit.capacitor_node(), 1.0);
    const std::vector<cplx> emf(2, 0.0);
    return net.solve(omega, emf)[2];
}

double brent(const std::function<double(double)>& f, double a, double b, double abs_tol,
             int max_iterations) {
    double fa = f(a);
    double fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0.0) == (fb > 0.0)) {
        std::ostringstream msg;
        msg << "brent: no sign change on [" << a << ", " << b << "]";
        throw NumericalError(msg.str());
    }
    double c = b;
    double fc = fb;
    double d = b - a;
    double e = d;
    for (int it = 0; it < max_iterations; ++it) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol = 2.0 * 1e-16 * std::abs(b) + 0.5 * abs_tol;
        const double mid = 0.5 * (c - b);
        if (std::abs(mid) <= tol || fb == 0.0) return b;
        if (std::abs(e) >= tol && std::abs(fa) > std::abs(fb)) {
            // Inverse quadratic interpolation, or secant when only two points differ.
            double p;
            double q;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * mid * s;
                q = 1.0 - s;
            } else {
                const double qa = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * mid * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::abs(p);
            if (2.0 * p < std::min(3.0 * mid * q - std::abs(tol * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = mid;
                e = d;
            }
        } else {
            d = mid;
            e = d;
        }
        a = b;
        fa = fb;
        b += std::abs(d) > tol ? d : (mid > 0.0 ? tol : -tol);
        fb = f(b);
    }
    throw NumericalError("brent: maximum iterations exceeded");
}

double central_difference(const std::function<double(double)>& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

double five_point_derivative(const std::function<double(double)>& f, double x, double h) {
    return (-f(x + 2.0 * h) + 8.0 * f(x + h) - 8.0 * f(x - h) + f(x - 2.0 * h)) / (12.0 * h);
}

double trapezoid(const std::function<double(double)>& f, double a, double b, std::size_t n) {
    require(n >= 1, "trapezoid needs at least one interval");
    const double h = (b - a) / static_cast<double>(n);
    double sum = 0.5 * (f(a) + f(b));
    for (std::size_t i = 1; i < n; ++i) sum += f(a + h * static_cast<double>(i));
    return sum * h;
}

std::vector<double> unwrap_phase(std::span<const cplx> values) {
    std::vector<double> out;
    out.reserve(values.size());
    double offset = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double raw = std::arg(values[i]);
        if (i > 0) {
            const double prev = out.back() - offset;
            const double jump = raw - prev;
            if (jump > kPi) offset -= 2.0 * kPi;
            if (jump < -kPi) offset += 2.0 * kPi;
        }
        out.push_back(raw + offset);
    }
    return out;
}

namespace {

/// Roots of a sampled derivative: first minimum-type root (slope going from
/// negative to positive) and the next maximum-type root after it.
PhaseExtrema extrema_from_samples(const std::vector<double>& x, const std::vector<double>& d,
                                  const std::function<double(double, double, std::size_t)>& refine) {
    std::ptrdiff_t low = -1;
    for (std::size_t i = 0; i + 1 < d.size(); ++i) {
        if (low < 0 && d[i] < 0.0 && d[i + 1] >= 0.0) {
            low = static_cast<std::ptrdiff_t>(i);
        } else if (low >= 0 && d[i] > 0.0 && d[i + 1] <= 0.0) {
            const auto lo = static_cast<std::size_t>(low);
            return {refine(x[lo], x[lo + 1], lo), refine(x[i], x[i + 1], i)};
        }
    }
    throw NumericalError("find_phase_extrema: no bracket found for both phase extrema");
}

}  // namespace

PhaseExtrema find_phase_extrema(const TwoPortSweep& sweep) {
    sweep.validate();
    require(sweep.size() >= 5, "find_phase_extrema needs at least five samples");
    const auto phase = unwrap_phase(sweep.s21);
    std::vector<double> x;
    std::vector<double> d;
    for (std::size_t i = 1; i + 1 < sweep.size(); ++i) {
        x.push_back(sweep.freqs[i]);
        d.push_back((phase[i + 1] - phase[i - 1]) / (sweep.freqs[i + 1] - sweep.freqs[i - 1]));
    }
    const double tol = 1e-6 * sweep.freqs[sweep.size() / 2];
    auto refine = [&](double a, double b, std::size_t i) {
        const double da = d[i];
        const double db = d[i + 1];
        auto interp = [&](double w) { return da + (db - da) * (w - a) / (b - a); };
        return brent(interp, a, b, tol);
    };
    return extrema_from_samples(x, d, refine);
}

PhaseExtrema find_phase_extrema(const std::function<cplx(double)>& s21, double lo, double hi,
                                std::size_t n, double abs_tol) {
    require(hi > lo && lo > 0.0 && n >= 5, "find_phase_extrema needs 0 < lo < hi and n >= 5");
    const double step = (hi - lo) / static_cast<double>(n - 1);
    const double h = 1e-2 * step;
    auto slope = [&](double w) { return std::arg(s21(w + h) / s21(w - h)) / (2.0 * h); };
    std::vector<double> x(n);
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = lo + step * static_cast<double>(i);
        d[i] = slope(x[i]);
    }
    auto refine = [&](double a, double b, std::size_t) { return brent(slope, a, b, abs_tol); };
    return extrema_from_samples(x, d, refine);
}

std::vector<double> magnitude_inflections(const TwoPortSweep& sweep) {
    sweep.validate();
    const std::size_t n = sweep.size();
    std::vector<double> slope(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        slope[i] = std::abs((std::abs(sweep.s21[i + 1]) - std::abs(sweep.s21[i - 1])) /
                            (sweep.freqs[i + 1] - sweep.freqs[i - 1]));
    }
    std::vector<double> out;
    for (std::size_t i = 2; i + 2 < n; ++i) {
        if (slope[i] > slope[i - 1] && slope[i] >= slope[i + 1]) out.push_back(sweep.freqs[i]);
    }
    return out;
}

namespace {

/// gm of one device at phase theta; sign = +1 for the NMOS half, -1 for PMOS.
double device_gm(double theta, double v_asrr, double gm0, double k_wl, double vdd, double vth,
                 double sign) {
    const double swing = 0.5 * v_asrr * sign * std::sin(theta);
    const double v_gs = vdd / 2.0 + swing;
    const double v_ds = vdd / 2.0 - swing;
    if (v_gs < vth) return 0.0;
    if (v_ds < v_gs - vth) return k_wl * v_ds;
    return gm0 + k_wl * swing;
}

}  // namespace

double time_avg_gm(double v_asrr, const GmBlockParams& gm, std::size_t samples) {
    require(samples >= 10000, "time_avg_gm needs at least 1e4 samples");
    require(v_asrr >= 0.0, "time_avg_gm requires v_asrr >= 0");
    auto block = [&](double theta) {
        return 0.5 * (device_gm(theta, v_asrr, gm.gm_n(), gm.kn_wl, gm.vdd, gm.vth, 1.0) +
                      device_gm(theta, v_asrr, gm.gm_p(), gm.kp_wl, gm.vdd, gm.vth, -1.0));
    };
    return trapezoid(block, 0.0, 2.0 * kPi, samples) / (2.0 * kPi);
}

double perturbed_block_gm(const GmBlockParams& gm, const std::array<double, 4>& dv_gs) {
    const double v_bias = gm.vdd / 2.0;
    auto law = [&](double k, double v) { return k * (v - gm.vth) * (1.0 + gm.lambda * v); };
    auto device = [&](double g0, double k, double dv) {
        return g0 + law(k, v_bias + dv) - law(k, v_bias);
    };
    const double g1 = device(gm.gm_n(), gm.kn_wl, dv_gs[0]);
    const double g2 = device(gm.gm_n(), gm.kn_wl, dv_gs[1]);
    const double g3 = device(gm.gm_p(), gm.kp_wl, dv_gs[2]);
    const double g4 = device(gm.gm_p(), gm.kp_wl, dv_gs[3]);
    return g1 * g2 / (g1 + g2) + g3 * g4 / (g3 + g4);
}

double numeric_phase_slope(const SrrParams& srr, const TransmissionLineSection& line, double z0,
                           double shunt_g) {
    const double w0 = srr.omega0();
    auto phase = [&](double w) {
        const cplx z = series_loading_impedance(srr, line, w, shunt_g) - cplx{0.0, w * line.ltl};
        return std::arg(series_element_sparams(z, z0).s21);
    };
    return five_point_derivative(phase, w0, 1e-6 * w0);
}

double numeric_phase_slope(const AsrrState& state, const TransmissionLineSection& line, double z0) {
    return numeric_phase_slope(state.passive_srr(), line, z0, -state.gm().gm_total());
}

}  // namespace asrr::oracle
