#include <doctest.h>

#include "dof/chain_enum.hpp"
#include "dof/pattern.hpp"

using namespace dof;

namespace {

NetworkConfig ex1(int n11 = 3, int n12 = 3, int m2 = 4, int n2 = 3, int m1 = 4) {
  return NetworkConfig({CellSpec{m1, {UserSpec{n11}, UserSpec{n12}}}, CellSpec{m2, {UserSpec{n2}}}});
}

// The two users of cell 1 against BS 2.
const ConnectionPattern kPatternIV(0b011);

}  // namespace

TEST_CASE("all nonempty patterns") {
  const auto pairs = interference_pair_set(ex1());
  const auto all = enumerate_patterns(pairs);
  REQUIRE(all.size() == 7);
  CHECK(all.back() == ConnectionPattern::full(pairs));
  CHECK(all.back().label(pairs) == "{(1_1,2),(1_2,2),(2_1,1)}");
  for (std::size_t i = 1; i < all.size(); ++i) CHECK(all[i - 1].mask() < all[i].mask());

  // One pair: restrict J to its first element.
  const InterferencePairSet single({pairs[0]});
  CHECK(enumerate_patterns(single).size() == 1);

  const NetworkConfig sym({CellSpec{2, {UserSpec{2}, UserSpec{2}}}, CellSpec{2, {UserSpec{2}, UserSpec{2}}}});
  CHECK(enumerate_patterns(interference_pair_set(sym)).size() == 15);
}

TEST_CASE("pattern guard") {
  // 5 cells of 2 users: |J| = 5 * 4 * 2 = 40
  std::vector<CellSpec> cells(5, CellSpec{4, {UserSpec{2}, UserSpec{2}}});
  const auto pairs = interference_pair_set(NetworkConfig(cells));
  CHECK_THROWS_AS(enumerate_patterns(pairs), GuardError);
  CHECK_THROWS_AS(enumerate_patterns(interference_pair_set(ex1()), 2), GuardError);
}

TEST_CASE("pattern index maps") {
  const auto c = ex1();
  const auto pairs = interference_pair_set(c);
  const auto users = kPatternIV.users_of(pairs, BsId{1});
  REQUIRE(users.size() == 2);
  CHECK(users[0] == UserId{0, 0});
  CHECK(kPatternIV.users_of(pairs, BsId{0}).empty());
  CHECK(kPatternIV.bss_of(pairs, UserId{0, 1}) == std::vector<BsId>{BsId{1}});
  CHECK(kPatternIV.bss_of(pairs, UserId{1, 0}).empty());
}

TEST_CASE("chain classes") {
  const auto pairs = interference_pair_set(ex1());
  const auto full = ConnectionPattern::full(pairs);
  CHECK(classify_chain(PatternChain{ChainSide::kA, {kPatternIV}}, pairs) == ChainClass::kPartialEcpc);
  CHECK(classify_chain(PatternChain{ChainSide::kA, {kPatternIV, kPatternIV}}, pairs) == ChainClass::kPartialEcpc);
  CHECK(classify_chain(PatternChain{ChainSide::kB, {full}}, pairs) == ChainClass::kFullEcpc);
  CHECK(classify_chain(PatternChain{ChainSide::kA, {full, ConnectionPattern(0b110)}}, pairs) == ChainClass::kUcpc);
  CHECK_THROWS_AS(classify_chain(PatternChain{ChainSide::kA, {kPatternIV, full}}, pairs), NestingError);
  CHECK_THROWS_AS(PatternChain({ChainSide::kA, {}}).check_nesting(), NestingError);
}

TEST_CASE("induced chain lengths") {
  // N = (3,3), M_2 = 4: the BS keeps 2 dims, each user then (2 - 3)^+ = 0.
  auto c = ex1(3, 3, 4);
  auto chain = derive_induced_chain(c, kPatternIV, ChainSide::kA);
  CHECK(chain.patterns == std::vector<ConnectionPattern>{kPatternIV});
  auto st = subspace_dims(c, interference_pair_set(c), chain);
  CHECK(st.last_step == 2);

  // N = (5,5), M_2 = 4: 6 at the BS, then 1 and 1 at the users, then (1 + 1 - 4)^+ = 0.
  c = ex1(5, 5, 4);
  chain = derive_induced_chain(c, kPatternIV, ChainSide::kA);
  CHECK(chain.patterns == std::vector<ConnectionPattern>{kPatternIV, kPatternIV});
  st = subspace_dims(c, interference_pair_set(c), chain);
  CHECK(st.last_step == 3);

  // Step-1 dims all zero.
  c = ex1(1, 1, 4);
  chain = derive_induced_chain(c, kPatternIV, ChainSide::kA);
  CHECK(chain.patterns.size() == 1);

  CHECK(derive_induced_chain(c, kPatternIV, ChainSide::kA) == chain);
  CHECK_THROWS_AS(derive_induced_chain(c, ConnectionPattern(), ChainSide::kA), std::invalid_argument);
}

TEST_CASE("induced enumeration counts") {
  EnumerationSettings s;
  s.mode = EnumerationMode::kInduced;
  s.deduplicate = false;
  const auto c = ex1();
  auto e = enumerate_chains(c, s, scope_symbolic(c));
  CHECK(e.generated == 14);
  CHECK(e.chains.size() + e.nonterminating == 14);
  CHECK_FALSE(e.truncated);

  const NetworkConfig single_pair({CellSpec{3, {UserSpec{2}}}, CellSpec{3, {UserSpec{2}}}});
  // |J| = 2 here; restrict the universe to one pair.
  ChainScope scope = scope_symbolic(single_pair);
  scope.universe = 0b1;
  e = enumerate_chains(single_pair, s, scope);
  CHECK(e.generated == 2);
}

TEST_CASE("chain budget") {
  EnumerationSettings s;
  s.budget = 1;
  const auto c = ex1(5, 5, 4);
  const auto e = enumerate_chains(c, s, scope_symbolic(c));
  CHECK(e.chains.size() == 1);
  CHECK(e.truncated);
  s.budget = 0;
  CHECK_THROWS_AS(enumerate_chains(c, s, scope_symbolic(c)), std::invalid_argument);
}

TEST_CASE("enumerated chains are nested") {
  EnumerationSettings s;
  s.depth = 3;
  const auto c = ex1(5, 4, 6, 3, 5);
  const auto e = enumerate_chains(c, s, scope_symbolic(c));
  CHECK(e.chains.size() > 14);
  for (const auto& ch : e.chains) CHECK_NOTHROW(ch.chain.check_nesting());
}

TEST_CASE("induced full chain is a full ECPC") {
  // Large enough antenna counts that no node of the full pattern runs out at step 1.
  const NetworkConfig c({CellSpec{4, {UserSpec{5}}}, CellSpec{4, {UserSpec{5}}}});
  const auto pairs = interference_pair_set(c);
  const auto chain = derive_induced_chain(c, ConnectionPattern::full(pairs), ChainSide::kA);
  CHECK(classify_chain(chain, pairs) == ChainClass::kFullEcpc);
}
