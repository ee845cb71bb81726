// SPDX-License-Identifier: MIT
#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <json.hpp>

namespace {

struct Run {
    int status = -1;
    std::string out;
};

Run run(const std::string& args) {
    const char* cli = std::getenv("SMALLBALL_CLI");
    REQUIRE_MESSAGE(cli != nullptr, "SMALLBALL_CLI must name the command line tool");
    const std::string command = std::string(cli) + " " + args + " 2>/dev/null";
    Run result;
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buffer{};
    std::size_t n = 0;
    while ((n = std::fread(buffer.data(), 1, buffer.size(), pipe)) > 0) result.out.append(buffer.data(), n);
    const int raw = pclose(pipe);
    result.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return result;
}

}  // namespace

TEST_CASE("constant command") {
    const Run r = run("--format json constant --alpha1 2 --alpha2 2 --T 1");
    REQUIRE(r.status == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["schema_version"] == "1.0");
    CHECK(doc["result"]["constant"].get<double>() == doctest::Approx(1.5957691216057308).epsilon(1e-10));
    CHECK(doc["result"]["branch"] == "min_at_least_one");

    const Run csv = run("--format csv constant --alpha1 0.5 --alpha2 1.5");
    REQUIRE(csv.status == 0);
    CHECK(csv.out.rfind("constant,ray_part,correction", 0) == 0);
    CHECK(csv.out.find("min_below_one") != std::string::npos);
}

TEST_CASE("exit codes") {
    CHECK(run("constant --alpha1 0.5 --alpha2 0.9").status == 1);
    CHECK(run("constant --alpha1 3").status == 1);
    CHECK(run("no-such-command").status == 1);
    CHECK(run("simulate --paths 10 --steps 10 --thresholds 0.2,0.1").status == 1);
    CHECK(run("moments --m 3").status == 1);
    CHECK(run("phi --re 0 --im 0").status == 1);
    CHECK(run("verify --suite gamma").status == 0);
    CHECK(run("verify --suite gamma --perturb 0.01").status == 3);
    CHECK(run("tauberian --law exponential").status == 0);
}

TEST_CASE("simulate output is byte identical across runs and threads") {
    const std::string args = "--format csv simulate --paths 3000 --steps 100 --seed 7";
    const Run a = run("--threads 1 " + args);
    const Run b = run("--threads 1 " + args);
    const Run c = run("--threads 8 " + args);
    REQUIRE(a.status == 0);
    CHECK(a.out == b.out);
    CHECK(a.out == c.out);
    CHECK(a.out.rfind("threshold,p_hat,std_err,ratio\n", 0) == 0);
    CHECK(run("--threads 1 --format csv simulate --paths 3000 --steps 100 --seed 8").out != a.out);
}

TEST_CASE("config file values yield to command line flags") {
    const std::string path = "cli_test_config.json";
    {
        std::ofstream file(path);
        file << R"({"alpha1": 1.5, "alpha2": 1.8, "T": 2.0})";
    }
    const Run from_file = run("--format json --config " + path + " constant");
    REQUIRE(from_file.status == 0);
    const auto doc = nlohmann::json::parse(from_file.out);
    CHECK(doc["params"]["alpha1"] == 1.5);
    CHECK(doc["params"]["T"] == 2.0);

    const Run overridden = run("--format json --config " + path + " constant --T 1");
    REQUIRE(overridden.status == 0);
    CHECK(nlohmann::json::parse(overridden.out)["params"]["T"] == 1.0);

    {
        std::ofstream file(path);
        file << R"({"alpha": 1.5})";
    }
    CHECK(run("--config " + path + " constant").status == 1);
    std::remove(path.c_str());
}

TEST_CASE("output file") {
    const std::string path = "cli_test_output.json";
    REQUIRE(run("--format json --output " + path + " moments --m 1").status == 0);
    std::ifstream file(path);
    const auto doc = nlohmann::json::parse(file);
    CHECK(doc["value"].get<double>() == doctest::Approx(0.3989422804014327).epsilon(1e-9));
    std::remove(path.c_str());
}
