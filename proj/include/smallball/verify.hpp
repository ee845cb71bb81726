// SPDX-License-Identifier: MIT
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "smallball/quadrature.hpp"

namespace smallball {

struct CheckResult {
    std::string suite;
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

struct VerifyOptions {
    /// Run only this suite; every suite when empty.
    std::optional<std::string> suite;
    /// Relative fault injected into every computed value before comparison.
    double perturb = 0.0;
    QuadratureConfig cfg;
};

/// gamma, phi, identities, smallball, laplace, moments, tauberian
std::vector<std::string> verify_suites();

/// Raises Error(InvalidConfig) for an unknown suite name.
std::vector<CheckResult> run_verification(const VerifyOptions& options);

}  // namespace smallball
