#pragma once

#include <stdexcept>
#include <string>

namespace asrr {

/// Invalid physical parameters or a degenerate model (bad input, caller's fault).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Loop gain of the -gm block reached unity; the resonator would oscillate.
class OscillationError : public DomainError {
public:
    using DomainError::DomainError;
};

/// A numerical procedure failed (singular system, no bracket, no convergence).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed configuration file or command line value.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline void require(bool condition, const std::string& message) {
    if (!condition) {
        throw DomainError(message);
    }
}

}  // namespace asrr
