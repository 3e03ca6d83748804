#include "dof/pattern.hpp"

#include <algorithm>

namespace dof {

const char* to_string(ChainSide side) { return side == ChainSide::kA ? "A" : "B"; }

const char* to_string(ChainClass c) {
  switch (c) {
    case ChainClass::kFullEcpc: return "full-ECPC";
    case ChainClass::kPartialEcpc: return "partial-ECPC";
    case ChainClass::kUcpc: return "UCPC";
  }
  return "?";
}

ConnectionPattern ConnectionPattern::full(const InterferencePairSet& pairs) {
  return ConnectionPattern(pairs.pattern_count());
}

std::vector<std::size_t> ConnectionPattern::indices() const {
  std::vector<std::size_t> out;
  for (std::uint64_t m = mask_; m != 0; m &= m - 1) out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
  return out;
}

std::vector<UserId> ConnectionPattern::users_of(const InterferencePairSet& pairs, const BsId& bs) const {
  std::vector<UserId> out;
  for (std::size_t i : indices()) {
    if (pairs[i].bs == bs) out.push_back(pairs[i].user);
  }
  return out;
}

std::vector<BsId> ConnectionPattern::bss_of(const InterferencePairSet& pairs, const UserId& user) const {
  std::vector<BsId> out;
  for (std::size_t i : indices()) {
    if (pairs[i].user == user) out.push_back(pairs[i].bs);
  }
  return out;
}

std::string ConnectionPattern::label(const InterferencePairSet& pairs) const {
  std::string s = "{";
  bool first = true;
  for (std::size_t i : indices()) {
    if (!first) s += ",";
    first = false;
    s += pairs[i].label();
  }
  return s + "}";
}

const ConnectionPattern& PatternChain::at(std::size_t step) const {
  if (patterns.empty()) throw std::out_of_range("empty pattern chain");
  if (step == 0) throw std::out_of_range("chain steps start at 1");
  return patterns[std::min(step, patterns.size()) - 1];
}

void PatternChain::check_nesting() const {
  if (patterns.empty()) throw NestingError("a pattern chain needs at least one pattern");
  for (std::size_t n = 0; n < patterns.size(); ++n) {
    const bool terminator = n > 0 && n + 1 == patterns.size();
    if (patterns[n].empty() && !terminator) {
      throw NestingError("pattern " + std::to_string(n + 1) + " of the chain is empty");
    }
    if (n + 1 < patterns.size() && !patterns[n + 1].is_subset_of(patterns[n])) {
      throw NestingError("nesting rule violated: I^<" + std::to_string(n + 2) + "> is not a subset of I^<" +
                         std::to_string(n + 1) + ">");
    }
  }
}

ChainClass classify_chain(const PatternChain& chain, const InterferencePairSet& pairs) {
  chain.check_nesting();
  const auto& first = chain.patterns.front();
  for (const auto& p : chain.patterns) {
    if (p != first) return ChainClass::kUcpc;
  }
  return first == ConnectionPattern::full(pairs) ? ChainClass::kFullEcpc : ChainClass::kPartialEcpc;
}

std::vector<ConnectionPattern> enumerate_patterns(const InterferencePairSet& pairs, std::size_t guard) {
  if (pairs.size() > guard) {
    throw GuardError("|J| = " + std::to_string(pairs.size()) + " exceeds the subset guard " + std::to_string(guard) +
                     "; raise the guard explicitly to enumerate " + std::to_string(pairs.pattern_count()) +
                     " patterns");
  }
  std::vector<ConnectionPattern> out;
  out.reserve(static_cast<std::size_t>(pairs.pattern_count()));
  for (std::uint64_t m = 1; m <= pairs.pattern_count(); ++m) out.emplace_back(m);
  return out;
}

}  // namespace dof
