// SPDX-License-Identifier: MIT
#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "smallball/smallball.hpp"
#include "smallball/stable_mc.hpp"
#include "smallball/tauberian.hpp"
#include "smallball/verify.hpp"

namespace smallball {

using json = nlohmann::json;

inline constexpr const char* kSchemaVersion = "1.0";

void to_json(json& j, const QuadratureResult& r);
void to_json(json& j, const SmallBallResult& r);
void from_json(const json& j, SmallBallResult& r);
void to_json(json& j, const LaplacePoint& p);
void from_json(const json& j, LaplacePoint& p);
void to_json(json& j, const LimitEstimate& e);
void to_json(json& j, const EstimateCI& e);
void from_json(const json& j, EstimateCI& e);
void to_json(json& j, const SmallBallRow& r);
void from_json(const json& j, SmallBallRow& r);
void to_json(json& j, const ExperimentResult& r);
void to_json(json& j, const CheckResult& c);
void from_json(const json& j, CheckResult& c);
void to_json(json& j, const TauberianReport& r);
void to_json(json& j, const PhiBoundsReport& r);
void to_json(json& j, const StableParams& p);
void to_json(json& j, const MonteCarloConfig& mc);

/// Header plus rows of scalar JSON cells.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<json>> rows;
};

/// Comma-separated rows; numbers at 17 significant digits.
std::string format_csv(const Table& table);

/// Indented key: value lines; arrays of objects become aligned tables.
std::string format_text(const json& doc);

}  // namespace smallball
