#pragma once

#include <complex>
#include <numbers>

namespace asrr {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kBoltzmann = 1.380649e-23;  // J/K

inline constexpr double hz_to_rad(double hz) { return 2.0 * kPi * hz; }
inline constexpr double rad_to_hz(double omega) { return omega / (2.0 * kPi); }

inline double db10(double ratio) { return 10.0 * std::log10(ratio); }
inline double db20(double ratio) { return 20.0 * std::log10(ratio); }

}  // namespace asrr
