#include <doctest.h>

#include <random>

#include "dof/chain.hpp"
#include "dof/closed_form.hpp"
#include "dof/genie.hpp"
#include "dof/lp.hpp"

using namespace dof;

namespace {

NetworkConfig ex1(int n11, int n12, int m2, int n2, int m1) {
  return NetworkConfig({CellSpec{m1, {UserSpec{n11}, UserSpec{n12}}}, CellSpec{m2, {UserSpec{n2}}}});
}

const PatternChain kTwoUserChainA{ChainSide::kA, {ConnectionPattern(0b011)}};

bool passes_chain(const NetworkConfig& c, const PatternChain& chain, const StreamAllocation& a) {
  const auto st = subspace_dims(c, interference_pair_set(c), chain);
  return lp_feasible(build_genie_system(c, st, StreamModel::fixed(a)).to_system()).feasible;
}

}  // namespace

TEST_CASE("fixed allocations against the two-user chain") {
  const auto c = ex1(3, 3, 4, 3, 6);
  CHECK(passes_chain(c, kTwoUserChainA, StreamAllocation({{2, 2}, {1}})));    // 3 <= 4, 3 <= 4, 5 <= 6
  CHECK_FALSE(passes_chain(c, kTwoUserChainA, StreamAllocation({{3, 3}, {2}})));  // 3 + 2 > 4
  const auto v = irreducible_check(c, StreamAllocation({{3, 3}, {2}}));
  CHECK_FALSE(v.feasible);
  REQUIRE(v.failing_chain);
  CHECK_FALSE(v.certificate.empty());
  CHECK_FALSE(lp_feasible(v.failing_system).feasible);
  CHECK(irreducible_check(c, StreamAllocation::uniform(c, 0)).feasible);
}

TEST_CASE("truncated check is flagged") {
  const auto c = ex1(5, 4, 6, 3, 5);
  ChainSettings s;
  s.enumeration.budget = 1;
  const auto v = irreducible_check(c, StreamAllocation::uniform(c, 1), s);
  CHECK(v.truncated);
}

TEST_CASE("two-user chain region") {
  for (int n11 = 1; n11 <= 4; ++n11) {
    for (int n12 = 1; n12 <= 4; ++n12) {
      for (int m2 = std::max(n11, n12); m2 < n11 + n12; ++m2) {
        const auto c = ex1(n11, n12, m2, 3, 6);
        const auto r = chain_region(c, kTwoUserChainA).constraint_strings();
        const auto s = [](int v) { return std::to_string(v); };
        CHECK(r == std::vector<std::string>{
                       "d_1_1 <= " + s(n11),
                       "d_1_2 <= " + s(n12),
                       "d_2_1 <= 3",
                       "d_1_1 + d_2_1 <= " + s(m2),
                       "d_1_2 + d_2_1 <= " + s(m2),
                       "d_1_1 + d_1_2 + d_2_1 <= " + s(n11 + n12),
                   });
      }
    }
  }
}

TEST_CASE("full region contains the two-user chain rows") {
  const auto c = ex1(3, 3, 4, 3, 6);
  const auto r = dof_region(c, RegionMode::kInfo);
  CHECK_FALSE(r.truncated);
  for (const auto& row : chain_region(c, kTwoUserChainA, Pruning::kLp).constraints()) {
    CHECK(implies(r.region, row));
  }
}

TEST_CASE("single-cell region is the base box") {
  const NetworkConfig c({CellSpec{3, {UserSpec{2}, UserSpec{2}}}});
  const auto r = dof_region(c, RegionMode::kInfo);
  CHECK(r.region.constraint_strings() ==
        std::vector<std::string>{"d_1_1 <= 2", "d_1_2 <= 2", "d_1_1 + d_1_2 <= 3"});
  CHECK(r.chains == 0);
}

TEST_CASE("another chain adds its own rows") {
  // Side B, the lone cell-2 user against BS 1, with N_2 > M_1.
  const auto c = ex1(3, 3, 4, 5, 3);
  const PatternChain other{ChainSide::kB, {ConnectionPattern(0b100)}};
  const auto a = chain_region(c, kTwoUserChainA, Pruning::kLp);
  const auto b = chain_region(c, other, Pruning::kLp);
  CHECK(a.constraint_strings() != b.constraint_strings());
  const auto r = dof_region(c, RegionMode::kInfo);
  for (const auto& row : b.constraints()) CHECK(implies(r.region, row));
}

TEST_CASE("linear-info region carries the pointwise note") {
  const auto c = ex1(3, 3, 4, 3, 6);
  const auto r = dof_region(c, RegionMode::kLinearInfo);
  CHECK(r.note.find("proper") != std::string::npos);
}

TEST_CASE("equal-d maxima") {
  const NetworkConfig sym({CellSpec{5, {UserSpec{3}, UserSpec{3}}}, CellSpec{5, {UserSpec{3}, UserSpec{3}}}});
  auto r = max_equal_d(sym, MaxDofMode::kInfo);
  CHECK(r.value == ExtendedRational(make_rational(3, 2)));
  CHECK(r.binding_chain.has_value());
  r = max_equal_d(sym, MaxDofMode::kLinear);
  CHECK(r.value == ExtendedRational(make_rational(3, 2)));
  REQUIRE(r.proper);
  CHECK(*r.proper == ExtendedRational(make_rational(8, 5)));

  const NetworkConfig single({CellSpec{4, {UserSpec{3}, UserSpec{3}}}});
  CHECK(max_equal_d(single, MaxDofMode::kInfo).value == ExtendedRational(make_rational(2)));
  CHECK(max_equal_d(single, MaxDofMode::kLinear).value == ExtendedRational(make_rational(2)));
}

TEST_CASE("two-user chain with one shared d") {
  const auto c = ex1(3, 3, 4, 3, 6);
  const auto st = subspace_dims(c, interference_pair_set(c), kTwoUserChainA);
  CHECK(chain_max_equal_d(c, st) == ExtendedRational(make_rational(2)));
}

TEST_CASE("classification") {
  const NetworkConfig improper({CellSpec{2, {UserSpec{2}, UserSpec{2}}}, CellSpec{2, {UserSpec{2}, UserSpec{2}}}});
  CHECK(classify_allocation(improper, StreamAllocation::uniform(improper, 1)).label == AllocationClass::kImproper);

  const auto c = ex1(3, 3, 4, 3, 6);
  CHECK(classify_allocation(c, StreamAllocation({{3, 3}, {0}})).label == AllocationClass::kPassesBoth);
  CHECK(classify_allocation(c, StreamAllocation({{1, 1}, {1}})).label == AllocationClass::kPassesBoth);
  CHECK(classify_allocation(c, StreamAllocation({{0, 0}, {0}})).label == AllocationClass::kPassesBoth);
  // With d = (3,3,2) the single pair (1_1,2) already fails the counting test: (4-2)*2 + 0 < 3*2.
  CHECK(classify_allocation(ex1(3, 3, 4, 3, 20), StreamAllocation({{3, 3}, {2}})).label ==
        AllocationClass::kImproper);

  // M = (2,3), N = (3,3,4), d = (2,0,2). Counting: {(1_1,2)}: 1*2 + 1*2 >= 2*2, {(2_1,1)}: 0 + 2*2 >= 2*2,
  // both: 8 >= 8. BS 1 spends both antennas on its own streams, so user 2_1 sees two interference
  // dimensions from BS 1 and the chains rule the allocation out.
  const auto tight = ex1(3, 3, 3, 4, 2);
  const auto cl = classify_allocation(tight, StreamAllocation({{2, 0}, {2}}));
  CHECK(cl.proper.proper);
  CHECK_FALSE(cl.irreducible.feasible);
  CHECK(cl.label == AllocationClass::kProperButIrreducibleInfeasible);
}

TEST_CASE("linear never exceeds info") {
  std::mt19937_64 rng(21);
  auto cache = std::make_shared<ComponentCache>();
  ChainSettings s;
  s.cache = cache;
  for (int t = 0; t < 60; ++t) {
    std::vector<CellSpec> cells(2);
    for (auto& cell : cells) {
      cell.bs_antennas = 1 + static_cast<int>(rng() % 8);
      for (std::size_t u = 0, k = 1 + rng() % 3; u < k; ++u) cell.users.push_back(UserSpec{1 + static_cast<int>(rng() % 4)});
    }
    const NetworkConfig c(cells);
    const auto r = max_equal_d(c, MaxDofMode::kLinear, s);
    CHECK(r.value <= r.info);
  }
}

TEST_CASE("scaling antennas scales the info bound") {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 40; ++t) {
    const TwoCellClassConfig base{{1 + static_cast<int>(rng() % 6), 1 + static_cast<int>(rng() % 6)},
                                  {1 + static_cast<int>(rng() % 4), 1 + static_cast<int>(rng() % 4)},
                                  {1 + static_cast<int>(rng() % 3), 1 + static_cast<int>(rng() % 3)}};
    TwoCellClassConfig scaled = base;
    for (auto* a : {&scaled.m, &scaled.n}) {
      for (auto& v : *a) v *= 3;
    }
    const auto x = max_equal_d(base.to_config(), MaxDofMode::kInfo).value;
    const auto y = max_equal_d(scaled.to_config(), MaxDofMode::kInfo).value;
    REQUIRE(x.is_finite());
    CHECK(y == ExtendedRational(Rational(x.value() * 3)));
  }
}

TEST_CASE("region matches the chain verdicts on small boxes") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 12; ++t) {
    const auto c = ex1(1 + static_cast<int>(rng() % 4), 1 + static_cast<int>(rng() % 4),
                       1 + static_cast<int>(rng() % 5), 1 + static_cast<int>(rng() % 4),
                       1 + static_cast<int>(rng() % 5));
    const auto region = dof_region(c, RegionMode::kInfo).region;
    for (int a = 0; a <= 3; ++a) {
      for (int b = 0; b <= 3; ++b) {
        for (int e = 0; e <= 3; ++e) {
          const StreamAllocation alloc({{a, b}, {e}});
          const bool inside = region.satisfied_by({Rational(a), Rational(b), Rational(e)});
          // Per-user symbols: every user distinct.
          ChainSettings s;
          s.enumeration.use_symmetry = false;
          CHECK(irreducible_check(c, alloc, s).feasible == inside);
        }
      }
    }
  }
}

TEST_CASE("genie witnesses respect the caps") {
  const auto c = ex1(5, 4, 6, 3, 5);
  EnumerationSettings e;
  const auto chains = enumerate_chains(c, e, scope_symbolic(c));
  const StreamAllocation a({{1, 1}, {1}});
  for (const auto& ch : chains.chains) {
    const auto g = build_genie_system(c, ch.state, StreamModel::fixed(a));
    const auto v = lp_feasible(g.to_system());
    if (!v.feasible) continue;
    for (std::size_t i = 0; i < g.genies.size(); ++i) {
      const auto& w = v.witness[g.num_stream_vars() + i];
      CHECK(w >= 0);
      CHECK(w <= Rational(g.genies[i].cap));
    }
  }
}

TEST_CASE("parallel and serial runs agree") {
  const auto c = ex1(5, 4, 6, 3, 5);
  ChainSettings one, four;
  four.jobs = 4;
  CHECK(max_equal_d(c, MaxDofMode::kInfo, one).value == max_equal_d(c, MaxDofMode::kInfo, four).value);
  const StreamAllocation a({{2, 2}, {2}});
  CHECK(irreducible_check(c, a, one).feasible == irreducible_check(c, a, four).feasible);
  CHECK(dof_region(c, RegionMode::kInfo, one).region == dof_region(c, RegionMode::kInfo, four).region);
}
