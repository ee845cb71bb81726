// SPDX-License-Identifier: MIT
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "smallball/contour.hpp"
#include "smallball/errors.hpp"
#include "smallball/phi.hpp"
#include "smallball/report.hpp"
#include "smallball/smallball.hpp"
#include "smallball/stable_mc.hpp"
#include "smallball/tauberian.hpp"
#include "smallball/verify.hpp"

namespace sb = smallball;
using sb::json;

namespace {

enum Exit { kOk = 0, kInvalidInput = 1, kNonConvergence = 2, kVerificationFailed = 3 };

struct CommandOutput {
    json doc;
    sb::Table table;
    int exit_code = kOk;
};

/// Registers CLI options together with the flat config-file keys that feed them.
class ConfigBinder {
public:
    template <class T>
    CLI::Option* add(CLI::App* app, const std::string& name, T& target, const std::string& help) {
        setters_[name].push_back([&target](const json& v) { target = v.get<T>(); });
        return app->add_option("--" + name, target, help)->capture_default_str();
    }

    CLI::Option* add_optional(CLI::App* app, const std::string& name, std::optional<double>& target,
                              const std::string& help) {
        setters_[name].push_back([&target](const json& v) { target = v.get<double>(); });
        return app->add_option_function<double>(
            "--" + name, [&target](const double& v) { target = v; }, help);
    }

    CLI::Option* add_flag(CLI::App* app, const std::string& name, bool& target,
                          const std::string& help) {
        setters_[name].push_back([&target](const json& v) { target = v.get<bool>(); });
        return app->add_flag("--" + name, target, help);
    }

    void apply(const json& doc) const {
        if (!doc.is_object()) sb::raise(sb::ErrorCode::InvalidConfig, "config file must be a JSON object");
        for (auto it = doc.begin(); it != doc.end(); ++it) {
            const auto found = setters_.find(it.key());
            if (found == setters_.end()) {
                sb::raise(sb::ErrorCode::InvalidConfig, "unknown config key '" + it.key() + "'");
            }
            try {
                for (const auto& set : found->second) set(it.value());
            } catch (const json::exception&) {
                sb::raise(sb::ErrorCode::InvalidConfig, "config key '" + it.key() + "' has the wrong type");
            }
        }
    }

private:
    std::map<std::string, std::vector<std::function<void(const json&)>>> setters_;
};

std::optional<std::string> find_config_path(int argc, char** argv) {
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--config" && i + 1 < argc) return std::string(argv[i + 1]);
        if (arg.rfind("--config=", 0) == 0) return arg.substr(9);
    }
    return std::nullopt;
}

int default_threads() {
    if (const char* env = std::getenv("SMALLBALL_THREADS")) {
        try {
            return std::stoi(env);
        } catch (const std::exception&) {
            sb::raise(sb::ErrorCode::InvalidConfig, "SMALLBALL_THREADS must be an integer");
        }
    }
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

json header(const std::string& command) {
    return json{{"schema_version", sb::kSchemaVersion}, {"command", command}};
}

int exit_for(sb::ErrorCode code) {
    switch (code) {
        case sb::ErrorCode::DomainError:
        case sb::ErrorCode::InvalidConfig:
        case sb::ErrorCode::DimensionTooLarge:
        case sb::ErrorCode::ZeroBase:
            return kInvalidInput;
        default:
            return kNonConvergence;
    }
}

struct Options {
    std::string format = "text";
    std::string output;
    std::string config;
    int threads = 1;
    sb::QuadratureConfig quad;
    sb::StableParams params;
    double radius = 1.0;

    std::string suite;
    double perturb = 0.0;

    sb::MonteCarloConfig mc;

    double z_re = 1.0;
    double z_im = 0.0;

    double s_re = 0.5;
    double s_im = 0.0;

    std::vector<double> lambdas{1.0};
    bool asymptote = false;

    int moment = 1;
    std::string law;
    bool cross_check = false;
};

CommandOutput cmd_constant(const Options& o) {
    o.params.validate_collision();
    const sb::SmallBallResult r = sb::smallball_constant(o.params, o.quad);
    CommandOutput out{header("constant"), {}, r.converged ? kOk : kNonConvergence};
    out.doc["params"] = o.params;
    out.doc["result"] = r;
    out.doc["negative_moments"] = sb::negative_moment_statement();
    if (o.cross_check) {
        const sb::QuadratureResult c = sb::contour_constant(o.params, sb::ContourSpec{o.radius}, o.quad);
        out.doc["contour_constant"] = c.value.real();
    }
    out.table.header = {"constant", "ray_part", "correction", "branch", "error_estimate", "converged"};
    out.table.rows.push_back({r.constant, r.ray_part, r.correction, sb::to_string(r.branch),
                              r.error_estimate, r.converged});
    return out;
}

CommandOutput cmd_verify(const Options& o) {
    sb::VerifyOptions vo;
    if (!o.suite.empty()) vo.suite = o.suite;
    vo.perturb = o.perturb;
    vo.cfg = o.quad;
    const auto checks = sb::run_verification(vo);
    std::size_t failed = 0;
    for (const auto& c : checks) failed += c.passed ? 0 : 1;
    CommandOutput out{header("verify"), {}, failed == 0 ? kOk : kVerificationFailed};
    out.doc["checks"] = checks;
    out.doc["total"] = checks.size();
    out.doc["failed"] = failed;
    out.doc["passed"] = failed == 0;
    out.table.header = {"suite", "name", "residual", "tolerance", "passed"};
    for (const auto& c : checks) out.table.rows.push_back({c.suite, c.name, c.residual, c.tolerance, c.passed});
    return out;
}

CommandOutput cmd_simulate(const Options& o) {
    o.params.validate();
    o.mc.validate();
    if (o.mc.thresholds.empty()) sb::raise(sb::ErrorCode::InvalidConfig, "thresholds must be nonempty");
    if (o.threads < 1) sb::raise(sb::ErrorCode::InvalidConfig, "threads must be >= 1");
    const sb::ExperimentResult r = sb::run_experiment(o.params, o.mc, o.threads);
    CommandOutput out{header("simulate"), {}, kOk};
    out.doc["params"] = o.params;
    out.doc["config"] = o.mc;
    out.doc["results"] = r;
    if (o.params.max_alpha() > 1.0) {
        const sb::SmallBallResult c = sb::smallball_constant(o.params, o.quad);
        json ratios = json::array();
        for (const auto& row : r.rows) ratios.push_back(row.ratio / c.constant);
        const double m1 = sb::moment_formula(1, o.params, o.quad).value.real();
        const double m2 = sb::moment_formula(2, o.params, o.quad).value.real();
        out.doc["comparison"] = json{
            {"smallball_constant", c.constant},
            {"ratio_over_constant", ratios},
            {"first_moment_formula", m1},
            {"first_moment_difference", r.first_moment.mean - m1},
            {"second_moment_formula", m2},
            {"second_moment_difference", r.second_moment.mean - m2}};
    }
    out.table.header = {"threshold", "p_hat", "std_err", "ratio"};
    for (const auto& row : r.rows) {
        out.table.rows.push_back({row.threshold, row.p_hat.mean, row.p_hat.std_error, row.ratio});
    }
    return out;
}

CommandOutput cmd_phi(const Options& o) {
    o.params.validate_collision();
    const sb::Complex z{o.z_re, o.z_im};
    const sb::QuadratureResult v = sb::phi_eval(z, o.params, o.quad);
    const sb::PhiBoundsReport bounds = sb::phi_bounds_check(z, o.params, o.quad);
    const sb::PhiLimit limit = sb::phi_limit_at_zero(o.params, o.quad);
    CommandOutput out{header("phi"), {}, v.converged ? kOk : kNonConvergence};
    out.doc["params"] = o.params;
    out.doc["z"] = json{{"re", z.real()}, {"im", z.imag()}};
    out.doc["value"] = json{{"re", v.value.real()}, {"im", v.value.imag()}};
    out.doc["error_estimate"] = v.error_estimate;
    out.doc["converged"] = v.converged;
    out.doc["bounds"] = bounds;
    out.doc["branch"] = sb::to_string(limit.branch);
    out.doc["limit_at_zero"] = limit.value ? json(*limit.value) : json("infinite");
    out.table.header = {"z_re", "z_im", "phi_re", "phi_im", "error_estimate", "converged"};
    out.table.rows.push_back({z.real(), z.imag(), v.value.real(), v.value.imag(), v.error_estimate,
                              v.converged});
    return out;
}

CommandOutput cmd_gamma(const Options& o) {
    const sb::Complex s{o.s_re, o.s_im};
    const sb::QuadratureResult v = sb::reciprocal_gamma(s, sb::ContourSpec{o.radius}, o.quad);
    CommandOutput out{header("gamma"), {}, v.converged ? kOk : kNonConvergence};
    out.doc["s"] = json{{"re", s.real()}, {"im", s.imag()}};
    out.doc["radius"] = o.radius;
    out.doc["value"] = json{{"re", v.value.real()}, {"im", v.value.imag()}};
    out.doc["error_estimate"] = v.error_estimate;
    json reference = nullptr;
    if (s.imag() == 0.0) {
        const bool pole = s.real() <= 0.0 && std::floor(s.real()) == s.real();
        reference = pole ? 0.0 : 1.0 / std::tgamma(s.real());
    }
    out.doc["reference"] = reference;
    out.table.header = {"s_re", "s_im", "radius", "value_re", "value_im", "reference", "error_estimate"};
    out.table.rows.push_back({s.real(), s.imag(), o.radius, v.value.real(), v.value.imag(), reference,
                              v.error_estimate});
    return out;
}

CommandOutput cmd_laplace(const Options& o) {
    o.params.validate_collision();
    const sb::ContourSpec contour{o.radius};
    CommandOutput out{header("laplace"), {}, kOk};
    out.doc["params"] = o.params;
    std::vector<sb::LaplacePoint> points;
    if (o.asymptote) {
        const sb::LaplaceAsymptote a = sb::laplace_asymptote(o.lambdas, o.params, contour, o.quad);
        points = a.points;
        const double c = sb::smallball_constant(o.params, o.quad).constant;
        out.doc["asymptote"] = json{{"limit", a.limit},
                                    {"smallball_constant", c},
                                    {"relative_difference", std::abs(a.limit.limit - c) / c}};
    } else {
        for (double lambda : o.lambdas) points.push_back(sb::laplace_transform(lambda, o.params, contour, o.quad));
    }
    out.doc["points"] = points;
    out.table.header = {"lambda", "value", "scaled", "error_estimate", "imaginary_residue"};
    for (const auto& p : points) {
        if (!p.converged) out.exit_code = kNonConvergence;
        out.table.rows.push_back({p.lambda, p.value, p.scaled, p.error_estimate, p.imaginary_residue});
    }
    return out;
}

CommandOutput cmd_moments(const Options& o) {
    const sb::QuadratureResult v = sb::moment_formula(o.moment, o.params, o.quad);
    CommandOutput out{header("moments"), {}, v.converged ? kOk : kNonConvergence};
    out.doc["params"] = o.params;
    out.doc["m"] = o.moment;
    out.doc["value"] = v.value.real();
    out.doc["error_estimate"] = v.error_estimate;
    out.table.header = {"m", "value", "error_estimate"};
    out.table.rows.push_back({o.moment, v.value.real(), v.error_estimate});
    return out;
}

CommandOutput cmd_tauberian(const Options& o) {
    const auto lambdas = sb::default_lambda_grid();
    const auto epsilons = sb::default_eps_grid();
    CommandOutput out{header("tauberian"), {}, kOk};
    json reports = json::array();
    bool found = false;
    out.table.header = {"law", "alpha", "transform_limit", "cdf_limit", "predicted_cdf_limit",
                        "relative_error", "tolerance", "passed"};
    for (const auto& law : sb::tauberian_corpus()) {
        if (!o.law.empty() && law.name != o.law) continue;
        found = true;
        const sb::TauberianReport r = sb::tauberian_check(law, lambdas, epsilons, sb::corpus_tolerance(law));
        if (!r.passed) out.exit_code = kVerificationFailed;
        reports.push_back(r);
        out.table.rows.push_back({r.law, r.alpha, r.transform_limit.limit, r.cdf_limit.limit,
                                  r.predicted_cdf_limit, r.relative_error, r.tolerance, r.passed});
    }
    if (!found) sb::raise(sb::ErrorCode::InvalidConfig, "unknown law '" + o.law + "'");
    out.doc["reports"] = reports;
    return out;
}

void emit(const CommandOutput& out, const Options& o) {
    std::string text;
    if (o.format == "json") {
        text = out.doc.dump(2) + "\n";
    } else if (o.format == "csv") {
        text = sb::format_csv(out.table);
    } else {
        text = sb::format_text(out.doc);
    }
    if (o.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream file(o.output, std::ios::binary);
    if (!file) sb::raise(sb::ErrorCode::InvalidConfig, "cannot open output file '" + o.output + "'");
    file << text;
}

}  // namespace

int main(int argc, char** argv) {
    Options o;
    ConfigBinder binder;
    CLI::App app{"Small ball constants for the collision local time of two stable processes"};
    app.require_subcommand(1);
    app.fallthrough();

    app.add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"json", "csv", "text"}))
        ->capture_default_str();
    app.add_option("--output", o.output, "Write the output to this file instead of stdout");
    app.add_option("--config", o.config, "Flat JSON file of option values (flags override it)");
    binder.add(&app, "threads", o.threads, "Worker threads (falls back to SMALLBALL_THREADS)");
    binder.add(&app, "abs-tol", o.quad.abs_tol, "Quadrature absolute tolerance");
    binder.add(&app, "rel-tol", o.quad.rel_tol, "Quadrature relative tolerance");
    binder.add(&app, "max-subdivisions", o.quad.max_subdivisions, "Quadrature subdivision budget");

    const auto add_params = [&](CLI::App* sub) {
        binder.add(sub, "alpha1", o.params.alpha1, "Stability index of the first process, in (0,2]");
        binder.add(sub, "alpha2", o.params.alpha2, "Stability index of the second process, in (0,2]");
        binder.add(sub, "T", o.params.horizon, "Time horizon T > 0");
    };
    const auto add_radius = [&](CLI::App* sub) {
        binder.add(sub, "radius", o.radius, "Arc radius R of the contour");
    };

    CLI::App* constant = app.add_subcommand("constant", "Small ball constant C(alpha1, alpha2, T)");
    add_params(constant);
    add_radius(constant);
    binder.add_flag(constant, "cross-check", o.cross_check, "Also evaluate the constant as a contour integral");
    constant->footer("CSV columns: constant,ray_part,correction,branch,error_estimate,converged");

    CLI::App* verify = app.add_subcommand("verify", "Run the verification suites");
    binder.add(verify, "suite", o.suite, "Run a single suite")
        ->check(CLI::IsMember(sb::verify_suites()));
    binder.add(verify, "perturb", o.perturb, "Relative fault injected into computed values");
    verify->footer("CSV columns: suite,name,residual,tolerance,passed");

    CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo small ball experiment");
    add_params(simulate);
    binder.add(simulate, "paths", o.mc.n_paths, "Number of path pairs");
    binder.add(simulate, "steps", o.mc.n_steps, "Time steps per path");
    binder.add(simulate, "seed", o.mc.seed, "Generator seed");
    binder.add_optional(simulate, "epsilon", o.mc.epsilon,
                        "Heat-kernel bandwidth (default (T/steps)^{2/max alpha})");
    binder.add(simulate, "thresholds", o.mc.thresholds, "Ascending small ball thresholds")
        ->delimiter(',');
    binder.add_flag(simulate, "halving", o.mc.halving, "Also run the doubled grid and report the shift");
    simulate->footer("CSV columns: threshold,p_hat,std_err,ratio");

    CLI::App* phi = app.add_subcommand("phi", "Evaluate Phi(z) and its bounds");
    add_params(phi);
    binder.add(phi, "re", o.z_re, "Real part of z");
    binder.add(phi, "im", o.z_im, "Imaginary part of z");
    phi->footer("CSV columns: z_re,z_im,phi_re,phi_im,error_estimate,converged");

    CLI::App* gamma = app.add_subcommand("gamma", "Reciprocal gamma function by contour integration");
    binder.add(gamma, "s", o.s_re, "Real part of s");
    binder.add(gamma, "s-im", o.s_im, "Imaginary part of s");
    add_radius(gamma);
    gamma->footer("CSV columns: s_re,s_im,radius,value_re,value_im,reference,error_estimate");

    CLI::App* laplace = app.add_subcommand("laplace", "Laplace transform E exp(-lambda L(T))");
    add_params(laplace);
    add_radius(laplace);
    binder.add(laplace, "lambda", o.lambdas, "Transform arguments")->delimiter(',');
    binder.add_flag(laplace, "asymptote", o.asymptote, "Extrapolate lambda E exp(-lambda L) to lambda -> inf");
    laplace->footer("CSV columns: lambda,value,scaled,error_estimate,imaginary_residue");

    CLI::App* moments = app.add_subcommand("moments", "Limit moments E L(T)^m");
    add_params(moments);
    binder.add(moments, "m", o.moment, "Moment order (1 or 2)");
    moments->footer("CSV columns: m,value,error_estimate");

    CLI::App* tauberian = app.add_subcommand("tauberian", "Tauberian ratio test on laws with known transforms");
    binder.add(tauberian, "law", o.law, "Only this law");
    tauberian->footer(
        "CSV columns: law,alpha,transform_limit,cdf_limit,predicted_cdf_limit,relative_error,tolerance,passed");

    try {
        o.threads = default_threads();
        if (const auto path = find_config_path(argc, argv)) {
            std::ifstream file(*path);
            if (!file) sb::raise(sb::ErrorCode::InvalidConfig, "cannot read config file '" + *path + "'");
            json doc;
            try {
                doc = json::parse(file);
            } catch (const json::exception& e) {
                sb::raise(sb::ErrorCode::InvalidConfig, std::string("config file is not valid JSON: ") + e.what());
            }
            binder.apply(doc);
        }
    } catch (const sb::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalidInput;
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInvalidInput;
    }

    try {
        o.quad.validate();
        CommandOutput out;
        if (*constant) out = cmd_constant(o);
        else if (*verify) out = cmd_verify(o);
        else if (*simulate) out = cmd_simulate(o);
        else if (*phi) out = cmd_phi(o);
        else if (*gamma) out = cmd_gamma(o);
        else if (*laplace) out = cmd_laplace(o);
        else if (*moments) out = cmd_moments(o);
        else out = cmd_tauberian(o);
        emit(out, o);
        return out.exit_code;
    } catch (const sb::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_for(e.code());
    }
}
