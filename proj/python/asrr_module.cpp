#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "asrr/active.hpp"
#include "asrr/design.hpp"
#include "asrr/error.hpp"
#include "asrr/fixtures.hpp"
#include "asrr/noise.hpp"
#include "asrr/resonator.hpp"
#include "asrr/validate.hpp"

namespace py = pybind11;
using namespace asrr;

namespace {

py::dict sweep_dict(const TwoPortSweep& s) {
    py::dict d;
    d["omega"] = s.freqs;
    d["s11"] = s.s11;
    d["s21"] = s.s21;
    d["z0"] = s.z0_ref;
    return d;
}

py::dict design_dict(const DesignResult& r) {
    py::dict d;
    d["feasible"] = r.feasible;
    d["binding"] = std::string(to_string(r.binding));
    d["message"] = r.message;
    d["k_max"] = r.k_max;
    d["q_on_min"] = r.q_on_min;
    d["r_srr"] = r.r_srr;
    d["l_srr"] = r.l_srr;
    d["c_asrr"] = r.c_asrr;
    d["c_gm"] = r.c_gm;
    d["gm"] = r.gm_required;
    d["width_n"] = r.width_n;
    d["width_p"] = r.width_p;
    d["length"] = r.length;
    d["kf"] = r.kf;
    d["alpha_1_over_f"] = r.alpha_1_over_f;
    d["snr_dc"] = r.snr_dc;
    d["snr_dr"] = r.snr_dr;
    d["p_in_lin"] = r.p_in_lin;
    d["power_estimate"] = r.power_estimate;
    return d;
}

}  // namespace

PYBIND11_MODULE(_asrr, m) {
    m.doc() = "Active split-ring resonator analysis and pixel synthesis";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<OscillationError>(m, "OscillationError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

    py::class_<TransmissionLineSection>(m, "Line")
        .def(py::init([](double ltl, double ctl, double length) {
                 return TransmissionLineSection{ltl, ctl, length};
             }),
             py::arg("ltl"), py::arg("ctl"), py::arg("length"))
        .def_static("from_electrical_length", &TransmissionLineSection::from_electrical_length,
                    py::arg("z0"), py::arg("beta_l"), py::arg("omega"), py::arg("length"))
        .def_readwrite("ltl", &TransmissionLineSection::ltl)
        .def_readwrite("ctl", &TransmissionLineSection::ctl)
        .def_readwrite("length", &TransmissionLineSection::length)
        .def_property_readonly("z0", &TransmissionLineSection::z0)
        .def("electrical_length", &TransmissionLineSection::electrical_length);

    py::class_<SrrParams>(m, "Srr")
        .def(py::init([](double lsrr, double csrr, double q, double k) { return SrrParams{lsrr, csrr, q, k}; }),
             py::arg("lsrr"), py::arg("csrr"), py::arg("q"), py::arg("k") = 0.0)
        .def_readwrite("lsrr", &SrrParams::lsrr)
        .def_readwrite("csrr", &SrrParams::csrr)
        .def_readwrite("q", &SrrParams::q_off)
        .def_readwrite("k", &SrrParams::k)
        .def_property_readonly("omega0", &SrrParams::omega0)
        .def("with_quality", &SrrParams::with_quality);

    m.def(
        "s_parameters",
        [](const SrrParams& srr, const TransmissionLineSection& line, const std::vector<double>& omega,
           bool closed_form, double shunt_g) {
            SweepOptions opt;
            if (closed_form) opt.model = ImpedanceModel::closed_form;
            opt.shunt_conductance = shunt_g;
            return sweep_dict(s_parameters(srr, line, omega, opt));
        },
        py::arg("srr"), py::arg("line"), py::arg("omega"), py::arg("closed_form") = false,
        py::arg("shunt_g") = 0.0, "S11 and S21 of one resonator on the line at each angular frequency");

    m.def(
        "equivalent",
        [](const SrrParams& srr, const TransmissionLineSection& line) {
            const auto eq = equivalent_resonator(srr, line);
            return py::make_tuple(eq.r_eq, eq.l_eq, eq.c_eq);
        },
        "Series R', L', C' seen by the line");
    m.def("optimum_k", &optimum_k_for_q, py::arg("q_on"), py::arg("line"), py::arg("omega0"));
    m.def("optimum_q", &optimum_q_for_k, py::arg("k"), py::arg("line"), py::arg("omega0"));
    m.def(
        "phase_slope",
        [](const SrrParams& srr, const TransmissionLineSection& line, double z0) {
            return output_phase_slope(equivalent_resonator(srr, line), z0);
        },
        py::arg("srr"), py::arg("line"), py::arg("z0") = 50.0);
    m.def("q_on", &q_on, py::arg("srr"), py::arg("gm"));
    m.def("boosted_resistance", &boosted_resistance, py::arg("srr"), py::arg("gm"));

    m.def(
        "reference_noise",
        [](double delta_f_s, double offset_hz) {
            NoiseContext ctx{fixtures::reference().state()};
            ctx.delta_omega_s = hz_to_rad(delta_f_s);
            py::dict d;
            d["white_dbch"] = white_ssb_phase_noise(ctx);
            d["flicker_dbch"] = flicker_phase_noise(ctx, offset_hz).ssb_dbch;
            d["snr_dc"] = snr_delta_c(ctx);
            d["snr_dr"] = snr_delta_r(ctx, 1.0);
            return d;
        },
        py::arg("delta_f_s") = 10e6, py::arg("offset_hz") = 1e3,
        "Noise levels and SNRs of the 200 GHz reference pixel");

    m.def(
        "design_reference",
        [](std::optional<double> il_budget) {
            auto spec = fixtures::reference_design_spec();
            if (il_budget) spec.il_budget = *il_budget;
            return design_dict(synthesize(spec));
        },
        py::arg("il_budget") = py::none(), "Synthesize the 200 GHz reference pixel, optionally with another IL budget");

    m.def(
        "validate",
        [](int criterion) {
            validate::Options opt;
            const auto results = criterion > 0 ? validate::run_criterion(criterion, opt) : validate::run_all(opt);
            py::list out;
            for (const auto& r : results) {
                py::dict d;
                d["id"] = r.id;
                d["passed"] = r.passed;
                d["informational"] = r.informational;
                d["measured"] = r.measured;
                d["tolerance"] = r.tolerance;
                out.append(d);
            }
            return out;
        },
        py::arg("criterion") = 0, "Acceptance checks; 0 runs all of them");
}
