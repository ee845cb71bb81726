// SPDX-License-Identifier: MIT
#pragma once

#include <stdexcept>
#include <string>

namespace smallball {

enum class ErrorCode {
    DomainError,
    NonFiniteEvaluation,
    TailDivergence,
    ZeroBase,
    RayDivergence,
    ImaginaryResidue,
    DimensionTooLarge,
    GridTooCoarse,
    InvalidConfig,
};

const char* to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above.
/// Non-convergence is not an exception: results carry a `converged` flag.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message);

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] void raise(ErrorCode code, const std::string& message);

}  // namespace smallball
