// SPDX-License-Identifier: MIT
#include <doctest.h>

#include <string>

#include "smallball/report.hpp"

using namespace smallball;

TEST_CASE("result types survive a JSON round trip") {
    SmallBallResult r;
    r.constant = 1.25;
    r.ray_part = 0.5;
    r.correction = 0.75;
    r.branch = BranchKind::MinBelowOne;
    r.error_estimate = 1e-12;
    r.converged = false;
    const SmallBallResult back = json(r).get<SmallBallResult>();
    CHECK(back.constant == r.constant);
    CHECK(back.correction == r.correction);
    CHECK(back.branch == r.branch);
    CHECK(back.converged == r.converged);

    LaplacePoint p;
    p.lambda = 3.0;
    p.value = 0.1;
    p.scaled = 0.3;
    p.resummation_radius = 7.0;
    const LaplacePoint p_back = json(p).get<LaplacePoint>();
    CHECK(p_back.scaled == p.scaled);
    CHECK(p_back.resummation_radius == p.resummation_radius);

    SmallBallRow row{0.05, EstimateCI{0.0123, 0.0004, 100000}, 0.246};
    const SmallBallRow row_back = json(row).get<SmallBallRow>();
    CHECK(row_back.p_hat.mean == row.p_hat.mean);
    CHECK(row_back.p_hat.std_error == row.p_hat.std_error);
    CHECK(row_back.ratio == row.ratio);

    CheckResult c{"phi", "x", 1e-3, 1e-2, true};
    const CheckResult c_back = json(c).get<CheckResult>();
    CHECK(c_back.name == c.name);
    CHECK(c_back.passed);
}

TEST_CASE("csv output") {
    Table t{{"name", "value"}, {{json("a,b"), json(0.1)}, {json("say \"hi\""), json(true)}}};
    CHECK(format_csv(t) == "name,value\n\"a,b\",0.10000000000000001\n\"say \"\"hi\"\"\",true\n");
}

TEST_CASE("text output") {
    const json doc{{"a", 1}, {"rows", json::array({json{{"x", 1}, {"y", 2}}})}};
    const std::string text = format_text(doc);
    CHECK(text.find("a: 1") != std::string::npos);
    CHECK(text.find('x') != std::string::npos);
}
