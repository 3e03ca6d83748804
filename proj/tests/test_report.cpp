#include <doctest.h>

#include "dof/report.hpp"

using namespace dof;

namespace {

NetworkConfig ex1() { return NetworkConfig({CellSpec{4, {UserSpec{3}, UserSpec{3}}}, CellSpec{4, {UserSpec{3}}}}); }

}  // namespace

TEST_CASE("header keys come first") {
  auto doc = report_header("maxdof");
  doc["result"] = 1;
  const auto text = render(doc);
  CHECK(text.rfind("{\n  \"schema\": 1,\n  \"command\": \"maxdof\"", 0) == 0);
  CHECK(text.back() == '\n');
}

TEST_CASE("rationals are strings") {
  CHECK(rational_json(make_rational(3, 2)) == "3/2");
  CHECK(rational_json(Rational(2)) == "2");
  CHECK(rational_json(ExtendedRational::infinity()) == "inf");
}

TEST_CASE("config round trip") {
  const auto c = ex1();
  const StreamAllocation a({{1, 2}, {1}});
  const auto j = config_json(c, &a);
  const auto parsed = parse_config(j.dump());
  CHECK(parsed.config == c);
  REQUIRE(parsed.streams.has_value());
  CHECK(*parsed.streams == a);
}

TEST_CASE("classification report") {
  const NetworkConfig c({CellSpec{6, {UserSpec{3}, UserSpec{3}}}, CellSpec{4, {UserSpec{3}}}});
  const auto bad = classify_allocation(c, StreamAllocation({{3, 3}, {2}}));
  REQUIRE_FALSE(bad.irreducible.base_violated);
  const auto j = classification_json(bad, c);
  CHECK(j["classification"] == "improper");
  CHECK(j["proper"]["proper"] == false);
  CHECK_FALSE(j["proper"]["violating_subsets"].empty());
  CHECK(j["irreducible"]["feasible"] == false);
  CHECK(j["irreducible"]["genie_dimensions"] == "rational");
  CHECK(j["irreducible"]["witness"]["chain"]["patterns"].is_array());
  CHECK_FALSE(j["irreducible"]["witness"]["certificate"].empty());
  CHECK_FALSE(j["irreducible"].contains("scope"));

  ChainSettings s;
  s.enumeration.budget = 1;
  const auto cut = classify_allocation(c, StreamAllocation({{1, 1}, {1}}), s);
  const auto k = classification_json(cut, c);
  CHECK(k["irreducible"]["truncated"] == true);
  CHECK(k["irreducible"]["scope"] == "necessary-conditions-checked-only");
}

TEST_CASE("reports are byte-stable") {
  const auto c = ex1();
  const auto once = render(max_dof_json(max_equal_d(c, MaxDofMode::kLinear), c));
  const auto twice = render(max_dof_json(max_equal_d(c, MaxDofMode::kLinear), c));
  CHECK(once == twice);
  const auto r1 = render(region_json(dof_region(c, RegionMode::kInfo)));
  const auto r2 = render(region_json(dof_region(c, RegionMode::kInfo)));
  CHECK(r1 == r2);
  const auto region = LinearConstraintSystem::from_json(nlohmann::json::parse(r1)["region"]);
  CHECK(region == dof_region(c, RegionMode::kInfo).region);

  VerifySettings vs;
  const auto v1 = render(oracle_json(verify(c, StreamAllocation::uniform(c, 1), vs), vs));
  const auto v2 = render(oracle_json(verify(c, StreamAllocation::uniform(c, 1), vs), vs));
  CHECK(v1 == v2);
}

TEST_CASE("closed-form report") {
  const auto j = closed_form_json(closed_form(TwoCellClassConfig{{5, 5}, {3, 3}, {2, 2}}));
  CHECK(j["d_info"] == "3/2");
  CHECK(j["pairs"][0]["pair"] == "(1,2)");
  CHECK(j["pairs"][0]["d_quan"]["branches"].size() == 2);
  const auto one = closed_form_json(closed_form(TwoCellClassConfig{{5, 5}, {2, 2}, {5, 5}}));
  CHECK(one["pairs"][0]["region"] == "I");
  CHECK(one["pairs"][0]["d_quan"].is_null());
}
