#include <doctest.h>

#include "dof/network.hpp"
#include "dof/rational.hpp"

using namespace dof;

namespace {

NetworkConfig ex1() {
  return NetworkConfig({CellSpec{4, {UserSpec{3}, UserSpec{3}}}, CellSpec{4, {UserSpec{3}}}});
}

NetworkConfig symmetric(int m, int n, int k, int g) {
  std::vector<CellSpec> cells(static_cast<std::size_t>(g));
  for (auto& c : cells) {
    c.bs_antennas = m;
    c.users.assign(static_cast<std::size_t>(k), UserSpec{n});
  }
  return NetworkConfig(cells);
}

}  // namespace

TEST_CASE("parse two-cell config") {
  const auto pc = parse_config(R"({"cells": [{"bs_antennas": 4, "users": [{"antennas": 3}, {"antennas": 3}]},
                                             {"bs_antennas": 4, "users": [{"antennas": 3}]}]})");
  CHECK(pc.config.num_cells() == 2);
  CHECK(pc.config.num_users(0) == 2);
  CHECK(pc.config.num_users(1) == 1);
  CHECK(pc.config == ex1());
  CHECK_FALSE(pc.streams.has_value());
}

TEST_CASE("single cell has no interference pairs") {
  const auto pc = parse_config(R"({"cells": [{"bs_antennas": 2, "users": [{"antennas": 2}]}]})");
  const auto pairs = interference_pair_set(pc.config);
  CHECK(pairs.empty());
  CHECK(pairs.pattern_count() == 0);
}

TEST_CASE("config validation names the field") {
  try {
    parse_config(R"({"cells": [{"bs_antennas": 0, "users": [{"antennas": 2}]}]})");
    FAIL("accepted zero antennas");
  } catch (const ConfigError& e) {
    CHECK(e.field() == "cells[0].bs_antennas");
  }
  CHECK_THROWS_AS(parse_config(R"({"cells": []})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"cells": [{"bs_antennas": 2, "users": [{"antennas": -1}]}]})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"cells": [{"bs_antennas": 2}]})"), ConfigError);
  CHECK_THROWS_AS(parse_config("{not json"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"cells": [{"bs_antennas": 2, "users": [{"antennas": 2, "streams": 1},
                                                                          {"antennas": 2}]}]})"),
                  ConfigError);
}

TEST_CASE("streams in the document") {
  const auto pc = parse_config(R"({"cells": [{"bs_antennas": 4, "users": [{"antennas": 3, "streams": 2}]},
                                             {"bs_antennas": 4, "users": [{"antennas": 3, "streams": 1}]}]})");
  REQUIRE(pc.streams.has_value());
  CHECK(pc.streams->of(UserId{0, 0}) == 2);
  CHECK(pc.streams->cell_total(1) == 1);
}

TEST_CASE("serialize round trip") {
  const auto c = ex1();
  CHECK(parse_config(serialize_config(c)).config == c);
  const StreamAllocation a({{1, 2}, {3}});
  const auto back = parse_config(serialize_config(c, &a));
  CHECK(back.config == c);
  REQUIRE(back.streams);
  CHECK(*back.streams == a);
}

TEST_CASE("pair set of the two-cell example") {
  const auto pairs = interference_pair_set(ex1());
  REQUIRE(pairs.size() == 3);
  CHECK(pairs[0].label() == "(1_1,2)");
  CHECK(pairs[1].label() == "(1_2,2)");
  CHECK(pairs[2].label() == "(2_1,1)");
  CHECK(pairs.pattern_count() == 7);
}

TEST_CASE("pair count formula") {
  CHECK(interference_pair_set(symmetric(2, 2, 2, 2)).size() == 4);
  CHECK(interference_pair_set(symmetric(2, 2, 2, 2)).pattern_count() == 15);
  for (int g = 1; g <= 3; ++g) {
    for (int k = 1; k <= 3; ++k) {
      // sum over BSs of the users in the other cells
      CHECK(interference_pair_set(symmetric(4, 2, k, g)).size() == static_cast<std::size_t>(g * (g - 1) * k));
    }
  }
}

TEST_CASE("symmetry predicate") {
  const auto s = symmetric(5, 3, 2, 2);
  CHECK(is_symmetric(s, StreamAllocation::uniform(s, 1)));
  CHECK_FALSE(is_symmetric(ex1(), StreamAllocation::uniform(ex1(), 1)));
  const auto t = symmetric(8, 4, 2, 3);
  CHECK(is_symmetric(t, StreamAllocation::uniform(t, 1)));
  CHECK_FALSE(is_symmetric(s, StreamAllocation({{1, 1}, {1, 2}})));
  CHECK_THROWS_AS(is_symmetric(s, StreamAllocation({{1}, {1}})), std::invalid_argument);
}

TEST_CASE("stream list flag") {
  const auto a = parse_stream_list("2,1;1", ex1());
  CHECK(a.of(UserId{0, 1}) == 1);
  CHECK(a.cell_total(0) == 3);
  CHECK_THROWS_AS(parse_stream_list("2;1", ex1()), ConfigError);
  CHECK_THROWS_AS(parse_stream_list("2,x;1", ex1()), ConfigError);
}

TEST_CASE("rational helpers") {
  const Rational r = make_rational(6, 4);
  CHECK(to_string(r) == "3/2");
  CHECK(parse_rational("3/2") == r);
  CHECK(parse_rational("-6/4") == -r);
  CHECK(parse_rational(to_string(r)) == r);
  CHECK(to_string(make_rational(4, 2)) == "2");
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
  CHECK(ExtendedRational(r) < ExtendedRational::infinity());
  CHECK(min(ExtendedRational::infinity(), ExtendedRational(r)) == ExtendedRational(r));
  CHECK(to_string(ExtendedRational::infinity()) == "inf");
}
