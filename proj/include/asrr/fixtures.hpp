#pragma once

// Reference operating point near 200 GHz and seeded random instance
// generators shared by the validation suite, the tests and the CLI.

#include <cstdint>
#include <random>

#include "asrr/active.hpp"
#include "asrr/design.hpp"
#include "asrr/resonator.hpp"

namespace asrr::fixtures {

/// 200 GHz ASRR: C_ASRR = 11.7 fF, Q_OFF = 10, Q_ON = 54, optimum coupling at k = 0.2.
struct Reference {
    double f0 = 200e9;
    double c_asrr = 11.7e-15;
    double q_off = 10.0;
    double q_on = 54.0;
    double k = 0.2;
    double z0 = 50.0;
    double line_length = 100e-6;
    double vth = 0.4;
    double vdd = 1.2;  // 3 V_TH, where the cycle-averaged gm closed form is exact

    double omega0() const;
    double lsrr() const;
    double r_srr() const;
    /// gm that boosts Q_OFF to Q_ON.
    double gm() const;
    SrrParams srr() const;
    TransmissionLineSection line() const;
    GmBlockParams gm_block() const;
    AsrrState state() const;
};

Reference reference();

/// Design targets that reproduce the reference pixel: the IL budget puts
/// k_max at 0.2 and the inductance ceiling at the reference L_SRR.
DesignSpec reference_design_spec();

/// A resonator on a line, optionally carrying a -gm shunt across its capacitor.
struct Instance {
    SrrParams srr;  // passive parameters (Q = Q_OFF)
    TransmissionLineSection line;
    double z0 = 50.0;
    double shunt_g = 0.0;  // conductance across the capacitor, zero when passive
    double q_on = 0.0;     // effective boosted Q (Q_OFF when passive)
};

class InstanceGenerator {
public:
    explicit InstanceGenerator(std::uint64_t seed = 20240531) : rng_(seed) {}

    /// Passive SRR whose Q_ON lies on the optimum-coupling locus for its line.
    Instance matched();
    Instance passive();
    /// Stable active instance, loop gain gm*R_SRR in [0.3, 0.95]. The SRR loss
    /// and the -gm are both carried by shunt_g = 1/R_SRR - gm.
    Instance active();

    double uniform(double lo, double hi);
    double log_uniform(double lo, double hi);

private:
    SrrParams random_resonator(double q);
    std::mt19937_64 rng_;
};

}  // namespace asrr::fixtures
