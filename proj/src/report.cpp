// SPDX-License-Identifier: MIT
#include "smallball/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace smallball {

namespace {

json complex_json(Complex z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

std::string cell(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_number()) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
        return buf;
    }
    if (v.is_null()) return "";
    return v.dump();
}

std::string csv_cell(const json& v) {
    std::string s = cell(v);
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    return quoted + "\"";
}

bool is_table(const json& v) {
    if (!v.is_array() || v.empty()) return false;
    return std::all_of(v.begin(), v.end(), [](const json& row) {
        return row.is_object() &&
               std::all_of(row.begin(), row.end(), [](const json& c) { return c.is_primitive(); });
    });
}

std::string text_scalar(const json& v) {
    if (v.is_number_float()) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.12g", v.get<double>());
        return buf;
    }
    return cell(v);
}

void render(std::ostringstream& out, const json& v, int indent) {
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    for (auto it = v.begin(); it != v.end(); ++it) {
        const json& value = it.value();
        if (value.is_object()) {
            out << pad << it.key() << ":\n";
            render(out, value, indent + 2);
        } else if (is_table(value)) {
            out << pad << it.key() << ":\n";
            std::vector<std::string> keys;
            for (auto c = value.front().begin(); c != value.front().end(); ++c) keys.push_back(c.key());
            std::vector<std::size_t> width(keys.size());
            for (std::size_t k = 0; k < keys.size(); ++k) width[k] = keys[k].size();
            for (const json& row : value) {
                for (std::size_t k = 0; k < keys.size(); ++k) {
                    width[k] = std::max(width[k], text_scalar(row.value(keys[k], json())).size());
                }
            }
            out << pad << "  ";
            for (std::size_t k = 0; k < keys.size(); ++k) {
                out << keys[k] << std::string(width[k] - keys[k].size() + 2, ' ');
            }
            out << "\n";
            for (const json& row : value) {
                out << pad << "  ";
                for (std::size_t k = 0; k < keys.size(); ++k) {
                    const std::string s = text_scalar(row.value(keys[k], json()));
                    out << s << std::string(width[k] - s.size() + 2, ' ');
                }
                out << "\n";
            }
        } else if (value.is_array()) {
            out << pad << it.key() << ":";
            for (const json& e : value) out << " " << (e.is_primitive() ? text_scalar(e) : e.dump());
            out << "\n";
        } else {
            out << pad << it.key() << ": " << text_scalar(value) << "\n";
        }
    }
}

}  // namespace

void to_json(json& j, const QuadratureResult& r) {
    j = json{{"value", complex_json(r.value)},
             {"error_estimate", r.error_estimate},
             {"evaluations", r.evaluations},
             {"converged", r.converged}};
}

void to_json(json& j, const SmallBallResult& r) {
    j = json{{"constant", r.constant},
             {"ray_part", r.ray_part},
             {"correction", r.correction},
             {"branch", to_string(r.branch)},
             {"error_estimate", r.error_estimate},
             {"converged", r.converged}};
}

void from_json(const json& j, SmallBallResult& r) {
    r.constant = j.at("constant").get<double>();
    r.ray_part = j.at("ray_part").get<double>();
    r.correction = j.at("correction").get<double>();
    r.branch = j.at("branch").get<std::string>() == to_string(BranchKind::MinBelowOne)
                   ? BranchKind::MinBelowOne
                   : BranchKind::MinAtLeastOne;
    r.error_estimate = j.at("error_estimate").get<double>();
    r.converged = j.at("converged").get<bool>();
}

void to_json(json& j, const LaplacePoint& p) {
    j = json{{"lambda", p.lambda},
             {"value", p.value},
             {"scaled", p.scaled},
             {"imaginary_residue", p.imaginary_residue},
             {"error_estimate", p.error_estimate},
             {"resummation_radius", p.resummation_radius},
             {"converged", p.converged}};
}

void from_json(const json& j, LaplacePoint& p) {
    p.lambda = j.at("lambda").get<double>();
    p.value = j.at("value").get<double>();
    p.scaled = j.at("scaled").get<double>();
    p.imaginary_residue = j.at("imaginary_residue").get<double>();
    p.error_estimate = j.at("error_estimate").get<double>();
    p.resummation_radius = j.at("resummation_radius").get<double>();
    p.converged = j.at("converged").get<bool>();
}

void to_json(json& j, const LimitEstimate& e) {
    j = json{{"limit", e.limit},         {"last", e.last},
             {"order", e.order},         {"residual", e.residual},
             {"monotone", e.monotone},   {"converging", e.converging},
             {"method", e.method}};
}

void to_json(json& j, const EstimateCI& e) {
    j = json{{"mean", e.mean}, {"std_error", e.std_error}, {"n", e.n}};
}

void from_json(const json& j, EstimateCI& e) {
    e.mean = j.at("mean").get<double>();
    e.std_error = j.at("std_error").get<double>();
    e.n = j.at("n").get<long>();
}

void to_json(json& j, const SmallBallRow& r) {
    j = json{{"threshold", r.threshold},
             {"p_hat", r.p_hat.mean},
             {"std_err", r.p_hat.std_error},
             {"ratio", r.ratio}};
}

void from_json(const json& j, SmallBallRow& r) {
    r.threshold = j.at("threshold").get<double>();
    r.p_hat.mean = j.at("p_hat").get<double>();
    r.p_hat.std_error = j.at("std_err").get<double>();
    r.ratio = j.at("ratio").get<double>();
}

void to_json(json& j, const ExperimentResult& r) {
    j = json{{"epsilon", r.epsilon},
             {"first_moment", r.first_moment},
             {"second_moment", r.second_moment},
             {"smallball", r.rows}};
    if (r.halving) {
        j["halving"] = json{{"fine_epsilon", r.halving->fine_epsilon},
                            {"fine_steps", r.halving->fine_steps},
                            {"fine_mean", r.halving->fine_mean},
                            {"shift", r.halving->shift}};
    }
}

void to_json(json& j, const CheckResult& c) {
    j = json{{"suite", c.suite},
             {"name", c.name},
             {"residual", c.residual},
             {"tolerance", c.tolerance},
             {"passed", c.passed}};
}

void from_json(const json& j, CheckResult& c) {
    c.suite = j.at("suite").get<std::string>();
    c.name = j.at("name").get<std::string>();
    c.residual = j.at("residual").get<double>();
    c.tolerance = j.at("tolerance").get<double>();
    c.passed = j.at("passed").get<bool>();
}

void to_json(json& j, const TauberianReport& r) {
    j = json{{"law", r.law},
             {"alpha", r.alpha},
             {"lambdas", r.lambdas},
             {"transform_sequence", r.transform_sequence},
             {"epsilons", r.epsilons},
             {"cdf_sequence", r.cdf_sequence},
             {"transform_limit", r.transform_limit},
             {"cdf_limit", r.cdf_limit},
             {"predicted_cdf_limit", r.predicted_cdf_limit},
             {"relative_error", r.relative_error},
             {"tolerance", r.tolerance},
             {"passed", r.passed}};
}

void to_json(json& j, const PhiBoundsReport& r) {
    j = json{{"modulus", r.modulus},
             {"upper_bound", r.upper_bound},
             {"upper_holds", r.upper_holds},
             {"lower_bound_min_form", r.lower_bound_min_form},
             {"lower_min_form_holds", r.lower_min_form_holds},
             {"lower_bound_max_form", r.lower_bound_max_form},
             {"lower_max_form_holds", r.lower_max_form_holds},
             {"cos_arg", r.cos_arg},
             {"cos_arg_holds", r.cos_arg_holds},
             {"modulus_lower_bound", r.modulus_lower_bound},
             {"modulus_lower_holds", r.modulus_lower_holds}};
}

void to_json(json& j, const StableParams& p) {
    j = json{{"alpha1", p.alpha1}, {"alpha2", p.alpha2}, {"T", p.horizon}};
}

void to_json(json& j, const MonteCarloConfig& mc) {
    j = json{{"paths", mc.n_paths},
             {"steps", mc.n_steps},
             {"epsilon", mc.epsilon ? json(*mc.epsilon) : json(nullptr)},
             {"seed", mc.seed},
             {"thresholds", mc.thresholds},
             {"halving", mc.halving}};
}

std::string format_csv(const Table& table) {
    std::ostringstream out;
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        out << (i ? "," : "") << table.header[i];
    }
    out << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_cell(row[i]);
        out << "\n";
    }
    return out.str();
}

std::string format_text(const json& doc) {
    std::ostringstream out;
    render(out, doc, 0);
    return out.str();
}

}  // namespace smallball
