// SPDX-License-Identifier: MIT
#include "smallball/errors.hpp"

namespace smallball {

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::DomainError: return "DomainError";
        case ErrorCode::NonFiniteEvaluation: return "NonFiniteEvaluation";
        case ErrorCode::TailDivergence: return "TailDivergence";
        case ErrorCode::ZeroBase: return "ZeroBase";
        case ErrorCode::RayDivergence: return "RayDivergence";
        case ErrorCode::ImaginaryResidue: return "ImaginaryResidue";
        case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
        case ErrorCode::GridTooCoarse: return "GridTooCoarse";
        case ErrorCode::InvalidConfig: return "InvalidConfig";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

void raise(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace smallball
