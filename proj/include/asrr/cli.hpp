#pragma once

// Command-line front end: config interpretation and the subcommands.

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "asrr/active.hpp"
#include "asrr/design.hpp"
#include "asrr/io.hpp"
#include "asrr/resonator.hpp"

namespace asrr::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitNumerical = 2;

/// Environment variable naming the default output directory.
inline constexpr const char* kOutDirEnv = "ASRR_OUT_DIR";

/// A resonator on a line as described by a config file.
struct Scenario {
    double f0_hz = 0.0;
    SrrParams srr;  // C is the total C_ASRR, Q is Q_OFF
    TransmissionLineSection line;
    double z0 = 50.0;
    std::optional<GmBlockParams> gm;
    double q_on = 0.0;
    double p_in = 1e-3;

    bool active() const { return gm.has_value(); }
    AsrrState state() const;
    /// The loaded resonator seen by the line: Q_ON in place of Q_OFF.
    SrrParams boosted() const { return srr.with_quality(q_on); }
    /// Conductance across the SRR capacitor in the closed-form model:
    /// 1/R_SRR - gm on a lossless ring when active, 0 when passive.
    double closed_form_shunt() const;
    SrrParams closed_form_srr() const;
};

Scenario scenario_from_config(const io::Config& cfg);
DesignSpec design_spec_from_config(const io::Config& cfg);

/// Runs the CLI on args (args[0] is the program name). Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace asrr::cli
