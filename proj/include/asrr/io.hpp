#pragma once

// Flat key = value configs with unit-suffixed quantities, frequency grids,
// and CSV / Touchstone writers with atomic file replacement.

#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "asrr/noise.hpp"
#include "asrr/resonator.hpp"

namespace asrr::io {

/// Parses "200 GHz", "54.1 pH", "11.7fF", "-10 dBm" (to W), "50 Ohm" or a bare
/// number into SI. Throws ConfigError on malformed input or unknown units.
double parse_quantity(std::string_view text);

/// Fixed 12-significant-digit formatting used by every emitted file.
std::string format_number(double v);

class Config {
public:
    static Config parse(std::string_view text, const std::string& source = "<config>");
    static Config load(const std::filesystem::path& path);

    bool has(const std::string& key) const;
    std::string text(const std::string& key) const;
    double number(const std::string& key) const;
    double number_or(const std::string& key, double fallback) const;
    std::optional<double> maybe(const std::string& key) const;
    int integer_or(const std::string& key, int fallback) const;
    std::vector<std::string> keys() const;

    void set(const std::string& key, const std::string& value);

private:
    static std::string normalize(std::string key);
    [[noreturn]] void fail(const std::string& key, const std::string& why) const;

    std::string source_;
    std::map<std::string, std::string> values_;
};

/// Uniform grid in Hz.
struct FrequencyGrid {
    double start_hz = 0.0;
    double stop_hz = 0.0;
    std::size_t points = 0;

    std::vector<double> omegas() const;
    double spacing_hz() const;
};

/// "START:STOP:N", START and STOP may carry a frequency unit.
FrequencyGrid parse_grid(std::string_view spec);

/// Odd number of points centred on f0 spanning +/- span_bandwidths * f0/Q,
/// spacing no larger than f0 / (100 Q).
FrequencyGrid auto_grid(double f0_hz, double q_on, double span_bandwidths = 3.0);

void write_sweep_csv(std::ostream& os, const TwoPortSweep& sweep);

/// Touchstone v1, real/imaginary pairs, rows f S11 S21 S12 S22 with the
/// reciprocal, symmetric network filling S12 and S22.
void write_touchstone(std::ostream& os, const TwoPortSweep& sweep);

void write_noise_csv(std::ostream& os, const std::vector<NoiseRow>& rows);

/// Writes to a sibling temporary file and renames it over path.
void write_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace asrr::io
