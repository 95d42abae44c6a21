#include "transition/suite.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace transition;

TEST_CASE("canonical JSON") {
  Json j = {{"b", 0.1}, {"a", {1, 2.5, "x"}}, {"c", std::nan("")}, {"d", true}};
  std::string s = canonical_json(j);
  CHECK(s == R"({"a":[1,2.5,"x"],"b":0.10000000000000001,"c":null,"d":true})");
  CHECK(canonical_json(Json::parse(s)) == s);
}

TEST_CASE("reports round-trip byte for byte") {
  CheckOptions opt;
  opt.exact = true;
  opt.t_text = "1/2";
  for (const Report& r : {check_report(make_family("oct_collapse"), 0.5, opt),
                          limit_report(make_family("oct_prime"), Rescaling::eta, Side::neg),
                          holonomy_report(pairing_scheme("torus_from_quad_prime"), 0.5,
                                          LoopWord::parse("LR TB LR^-1 TB^-1"))}) {
    CAPTURE(r.kind);
    std::string s = canonical_json(r.to_json());
    CHECK(canonical_json(Json::parse(s)) == s);
    CHECK(s == canonical_json(r.to_json()));
  }
}

TEST_CASE("check report contents") {
  CheckOptions opt;
  opt.exact = true;
  opt.t_text = "1";
  Report r = check_report(make_family("ideal_octahedron"), 1.0, opt);
  CHECK(r.passed());
  CHECK(r.body["vertex_counts"]["ideal"] == 6);
  CHECK(r.body["adjacency"].size() == 12);
  CHECK(r.body["exact_pairings"].size() == 12);
  for (const auto& p : r.body["exact_pairings"]) CHECK(p["pairing"] == "0");
}

TEST_CASE("a failing check is reported, not thrown") {
  CheckOptions opt;
  opt.tol = 1e-17;  // below the rounding in the right-angle residual
  Report r = check_report(make_family("ideal_octahedron"), 1.0, opt);
  CHECK_FALSE(r.passed());
  CHECK(r.text().find("FAIL") != std::string::npos);
}

TEST_CASE("limit report carries provenance and the half-pipe flags") {
  Report r = limit_report(make_family("oct_prime"), Rescaling::eta, Side::pos);
  REQUIRE(r.body["walls"].size() == 8);
  const Json& l1 = r.body["walls"][0];
  CHECK(l1["provenance"] == "oct_prime:L1");
  CHECK(l1["degenerate"] == false);
  CHECK(l1["reflection_is_hp_block"] == true);
  CHECK(r.body["walls"][1]["degenerate"] == true);
  CHECK(l1["exact"] == Json::array({"-1", "-r2", "0", "-1"}));
  CHECK_THROWS(limit_report(make_family("exp_quadrilateral"), Rescaling::gamma, Side::pos));
}

TEST_CASE("plot CSV") {
  std::string csv = plot_csv(make_family("ideal_octahedron").at(1.0));
  std::istringstream is(csv);
  std::string line;
  std::getline(is, line);
  CHECK(line == "object,kind,x0,x1,x2,x3,x4");
  int walls = 0, vertices = 0;
  while (std::getline(is, line)) {
    walls += line.find(",wall,") != std::string::npos;
    vertices += line.find(",vertex_ideal,1,") != std::string::npos;
    CHECK(std::count(line.begin(), line.end(), ',') == 6);
  }
  CHECK(walls == 8);
  CHECK(vertices == 6);
}

TEST_CASE("each criterion is reachable on its own") {
  CHECK(run_criterion(5).passed);
  CHECK_THROWS_AS(run_criterion(12), std::out_of_range);
}
