#include "fracinpaint/verify.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace fracinpaint;
using namespace fracinpaint::verify;

TEST_CASE("report pass ignores informational checks") {
  StudyReport r;
  CHECK(r.pass());
  r.checks.push_back({"a", 1.0, 0.0, 2.0, false});
  r.checks.push_back({"b", 5.0, 0.0, 2.0, true});
  CHECK(r.pass());
  r.checks.push_back({"c", std::nan(""), 0.0, 2.0, false});
  CHECK_FALSE(r.pass());

  r.name = "demo";
  r.columns = {"x", "y"};
  r.rows = {{1.0, 2.5}};
  std::ostringstream csv;
  r.write_csv(csv);
  CHECK(csv.str() == "x,y\n1,2.5\n");
  std::ostringstream txt;
  r.write_text(txt);
  CHECK(txt.str().find("FAIL  c") != std::string::npos);
  CHECK(txt.str().find("info  b") != std::string::npos);
  CHECK(txt.str().find("result: FAIL") != std::string::npos);
}

TEST_CASE("synthetic problems") {
  const SyntheticProblem p = make_problem(Problem::Stripe, 20, 0.2);
  CHECK(p.mask.damaged_count() == 81);  // round(sqrt(0.2) * 20) = 9 per side
  CHECK((p.mask.damaged().select(p.damaged, 0.0) == 0.0).all());
  const SyntheticProblem clean = make_problem(Problem::SmoothBump, 16, 0.0);
  CHECK(clean.mask.damaged_count() == 0);
  CHECK((clean.damaged == clean.ground_truth).all());
}

TEST_CASE("temporal order study input checks") {
  CHECK_THROWS_AS(temporal_order_study(Model::FMS, Problem::SmoothBump, {0.2, 0.1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(temporal_order_study(Model::FMS, Problem::SmoothBump, {0.2, 0.1, 0.04}),
                  std::invalid_argument);
}

TEST_CASE("temporal order study with three step sizes") {
  const StudyReport r = temporal_order_study(Model::CVMS, Problem::SmoothBump, {0.1, 0.05, 0.025});
  CHECK(r.rows.size() == 3);
  CHECK(r.pass());
}

TEST_CASE("temporal order study fails on divergence") {
  OrderStudyConfig c;
  c.size = 16;
  c.final_time = 480.0;
  c.damage = 0.2;
  c.params = ModelParams{};
  c.params.rel_tol = 0.0;
  const StudyReport r = temporal_order_study(Model::FMS, Problem::Stripe, {0.8, 0.4, 0.2}, c);
  CHECK_FALSE(r.pass());
}

TEST_CASE("boundedness study") {
  SUBCASE("small stripe problem") {
    BoundednessConfig c;
    c.size = 32;
    c.final_time = 20.0;
    const StudyReport r = boundedness_study(c);
    CHECK(r.pass());
    CHECK(r.rows.size() == 4);
  }
  SUBCASE("constant data uses the absolute bound") {
    BoundednessConfig c;
    c.size = 16;
    c.final_time = 10.0;
    c.problem = Problem::Constant;
    c.damage = 0.0;
    const StudyReport r = boundedness_study(c);
    CHECK(r.pass());
    CHECK_FALSE(r.notes.empty());
    for (const auto& row : r.rows) CHECK(row[3] == 0.0);
  }
  SUBCASE("requires a valid parameter set") {
    BoundednessConfig c;
    c.params.c2 = 10.0;
    CHECK_THROWS_AS(boundedness_study(c), std::domain_error);
  }
}

TEST_CASE("oracle equivalence study") {
  OracleConfig c;
  c.sizes = {6};
  const StudyReport r = oracle_equivalence_study(c);
  CHECK(r.checks.size() == 9);
  CHECK(r.pass());
}

TEST_CASE("alpha trend study") {
  SUBCASE("skips an undamaged problem") {
    AlphaTrendConfig c;
    c.size = 16;
    c.damage = 0.0;
    const StudyReport r = alpha_trend_study(c);
    CHECK(r.checks.empty());
    CHECK(r.rows.empty());
    CHECK(r.pass());
  }
  SUBCASE("emits one row per alpha") {
    AlphaTrendConfig c;
    c.size = 24;
    c.params = ModelParams::strict_defaults();
    c.params.max_iter = 50;
    c.problem = Problem::PiecewiseSmooth;
    const StudyReport r = alpha_trend_study(c);
    CHECK(r.rows.size() == c.alphas.size());
    for (const auto& row : r.rows) CHECK(std::isfinite(row[1]));
  }
}
