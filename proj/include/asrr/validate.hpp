#pragma once

// Acceptance suite: analytic models checked against the oracle and against
// the closed-form anchors, one result line per check.

#include <cstdint>
#include <string>
#include <vector>

namespace asrr::validate {

struct CheckResult {
    int criterion = 0;
    std::string id;       // e.g. "2.mesh_s21"
    std::string title;
    bool passed = false;
    /// Diagnostic only; never counted as a failure.
    bool informational = false;
    double measured = 0.0;
    double tolerance = 0.0;
    std::string detail;
    double seconds = 0.0;
};

struct Options {
    std::uint64_t seed = 20240531;
    int instances = 100;
    /// Multiplies the coupling of every matched fixture; 1 leaves them intact.
    double k_scale = 1.0;
};

std::vector<CheckResult> run_criterion(int criterion, const Options& options = {});
std::vector<CheckResult> run_all(const Options& options = {});

/// "PASS 2.mesh_s21  analytic vs mesh |S21| ...  measured=... tol=...".
std::string format(const CheckResult& r);

/// Checks that are neither passed nor informational.
std::vector<CheckResult> failures(const std::vector<CheckResult>& results);

}  // namespace asrr::validate
