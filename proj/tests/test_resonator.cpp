#include <doctest.h>

#include <cmath>
#include <vector>

#include "asrr/error.hpp"
#include "asrr/fixtures.hpp"
#include "asrr/oracle.hpp"
#include "asrr/resonator.hpp"

using namespace asrr;

TEST_CASE("line section round-trips its electrical length") {
    const double w = hz_to_rad(200e9);
    const auto line = TransmissionLineSection::from_electrical_length(50.0, 0.4, w, 100e-6);
    CHECK(line.z0() == doctest::Approx(50.0).epsilon(1e-12));
    CHECK(line.electrical_length(w) == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(line.beta(w) == doctest::Approx(0.4 / 100e-6).epsilon(1e-12));
}

TEST_CASE("equivalent R'L'C' follows from the mutual inductance") {
    const auto ref = fixtures::reference();
    const auto srr = ref.srr();
    const auto line = ref.line();
    const auto eq = equivalent_resonator(srr, line);
    const double w0 = ref.omega0();
    const double m = ref.k * std::sqrt(line.ltl * srr.lsrr);
    CHECK(srr.mutual_inductance(line) == doctest::Approx(m).epsilon(1e-12));
    const double wm2 = w0 * w0 * m * m;
    CHECK(eq.r_eq == doctest::Approx(wm2 / srr.series_loss()).epsilon(1e-12));
    CHECK(eq.l_eq == doctest::Approx(wm2 * srr.csrr).epsilon(1e-12));
    CHECK(eq.c_eq == doctest::Approx(srr.lsrr / wm2).epsilon(1e-12));
    CHECK(eq.omega0() == doctest::Approx(w0).epsilon(1e-12));
    CHECK(eq.quality() == doctest::Approx(ref.q_off).epsilon(1e-12));
}

TEST_CASE("series element S-parameters") {
    const auto s = series_element_sparams(cplx(100.0, 0.0), 50.0);
    CHECK(s.s11.real() == doctest::Approx(0.5));
    CHECK(s.s21.real() == doctest::Approx(0.5));
    const auto thru = series_element_sparams(cplx(0.0, 0.0), 50.0);
    CHECK(std::abs(thru.s21 - 1.0) < 1e-15);
}

TEST_CASE("matched pixel sits at -3.52 dB") {
    const auto ref = fixtures::reference();
    SrrParams srr = ref.srr().with_quality(ref.q_on);
    const auto sp = s_parameters_at(srr, ref.line(), ref.omega0());
    CHECK(db20(std::abs(sp.s21)) == doctest::Approx(20.0 * std::log10(2.0 / 3.0)).epsilon(1e-9));
    CHECK(std::abs(sp.s11) == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
}

TEST_CASE("closed-form model agrees with the nodal solver") {
    fixtures::InstanceGenerator gen(7);
    for (int i = 0; i < 20; ++i) {
        const auto inst = gen.passive();
        const auto circuit = oracle::MeshCircuit::from(inst.srr, inst.line, inst.z0);
        SweepOptions opt;
        opt.model = ImpedanceModel::closed_form;
        const double w0 = inst.srr.omega0();
        for (double x : {0.95, 1.0, 1.03}) {
            const auto a = s_parameters_at(inst.srr, inst.line, x * w0, opt);
            const auto b = oracle::solve_two_port(circuit, x * w0);
            CHECK(std::abs(a.s21 - b.s21) < 1e-10);
            CHECK(std::abs(a.s11 - b.s11) < 1e-10);
        }
    }
}

TEST_CASE("zero coupling is transparent") {
    const auto ref = fixtures::reference();
    SrrParams srr = ref.srr();
    srr.k = 0.0;
    const std::vector<double> w{0.9 * ref.omega0(), ref.omega0(), 1.1 * ref.omega0()};
    const auto sw = s_parameters(srr, ref.line(), w);
    for (std::size_t i = 0; i < sw.size(); ++i) {
        CHECK(std::abs(sw.s21[i] - 1.0) < 1e-15);
        CHECK(std::abs(sw.s11[i]) < 1e-15);
    }
}

TEST_CASE("optimum coupling locus") {
    const auto ref = fixtures::reference();
    const auto line = ref.line();
    const double w0 = ref.omega0();
    CHECK(optimum_q_for_k(0.2, line, w0) == doctest::Approx(54.0).epsilon(1e-12));
    CHECK(optimum_k_for_q(54.0, line, w0) == doctest::Approx(0.2).epsilon(1e-12));
    CHECK_THROWS_AS(optimum_k_for_q(1e-6, line, w0), DomainError);
}

TEST_CASE("array insertion loss and its coupling ceiling are inverse") {
    const auto ref = fixtures::reference();
    const auto line = ref.line();
    SrrParams srr = ref.srr();
    srr.k = 0.1;
    const double il = array_insertion_loss(4, srr, line);
    const auto lim = k_max_for_il(il, 4, line, ref.q_off, ref.omega0());
    CHECK(lim.k_max == doctest::Approx(0.1).epsilon(1e-9));
    CHECK_FALSE(lim.exceeds_geometric_limit);
    CHECK(k_max_for_il(0.99, 1, line, ref.q_off, ref.omega0()).exceeds_geometric_limit);
}

TEST_CASE("phase slope and output Q") {
    const auto ref = fixtures::reference();
    const auto srr = ref.srr().with_quality(ref.q_on);
    const auto eq = equivalent_resonator(srr, ref.line());
    const double s = output_phase_slope(eq, ref.z0);
    CHECK(effective_output_q(eq, ref.z0) == doctest::Approx(s * ref.omega0() / 2.0));
    CHECK(oracle::numeric_phase_slope(srr, ref.line(), ref.z0) == doctest::Approx(s).epsilon(1e-6));
}

TEST_CASE("detection band is centred on the resonance") {
    const auto b = detection_band(1.0, 50.0);
    CHECK(b.omega_low < 1.0);
    CHECK(b.omega_high > 1.0);
    CHECK(b.width == doctest::Approx(b.omega_high - b.omega_low));
    CHECK(b.omega_low * b.omega_high == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("invalid resonators are rejected") {
    SrrParams bad{0.0, 1e-15, 10.0, 0.1};
    CHECK_THROWS_AS(bad.validate(), DomainError);
    SrrParams neg_q{1e-10, 1e-15, -1.0, 0.1};
    CHECK_THROWS_AS(neg_q.validate(), DomainError);
}
