#include "dof/chain_enum.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

namespace dof {

const char* to_string(EnumerationMode mode) { return mode == EnumerationMode::kInduced ? "induced" : "exhaustive"; }

ChainScope scope_equal_streams(const NetworkConfig& config) {
  ChainScope s;
  s.user_tag.assign(config.total_users(), 0);
  return s;
}

ChainScope scope_for_allocation(const NetworkConfig& config, const StreamAllocation& alloc) {
  alloc.check_matches(config);
  const auto pairs = interference_pair_set(config);
  ChainScope s;
  s.universe = 0;
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    if (alloc.of(pairs[p].user) > 0 && alloc.cell_total(pairs[p].bs.cell) > 0) s.universe |= std::uint64_t{1} << p;
  }
  for (const auto& u : config.users()) s.user_tag.push_back(alloc.of(u));
  return s;
}

ChainScope scope_symbolic(const NetworkConfig&) { return ChainScope{}; }

namespace {

struct UserClass {
  std::vector<std::size_t> users;  // flat indices
  std::size_t arity = 0;           // pairs per user within the universe
};

// Nondecreasing sequences of length `size` over [0, types): multisets of types.
std::vector<std::vector<std::size_t>> multisets(std::size_t types, std::size_t size) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur(size, 0);
  while (true) {
    out.push_back(cur);
    std::size_t i = size;
    while (i > 0 && cur[i - 1] == types - 1) --i;
    if (i == 0) break;
    const std::size_t v = cur[i - 1] + 1;
    for (std::size_t k = i - 1; k < size; ++k) cur[k] = v;
  }
  return out;
}

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

ChainEnumeration enumerate_chains(const NetworkConfig& config, const EnumerationSettings& settings,
                                  const ChainScope& scope) {
  if (settings.budget < 1) throw std::invalid_argument("chain budget must be at least 1");
  if (settings.depth < 1) throw std::invalid_argument("chain depth must be at least 1");
  const auto pairs = interference_pair_set(config);
  if (pairs.size() > settings.guard) {
    throw GuardError("|J| = " + std::to_string(pairs.size()) + " exceeds the guard " + std::to_string(settings.guard) +
                     "; raise --guard explicitly");
  }
  const std::uint64_t universe = scope.universe & ConnectionPattern::full(pairs).mask();

  // Pair indices of each user within the universe, in BS order.
  std::vector<std::vector<std::size_t>> user_pairs(config.total_users());
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    if ((universe >> p) & 1u) user_pairs[config.flat_index(pairs[p].user)].push_back(p);
  }
  std::vector<UserClass> classes;
  {
    std::map<std::tuple<std::size_t, int, long, std::size_t>, std::size_t> index;
    for (const auto& u : config.users()) {
      const std::size_t f = config.flat_index(u);
      if (user_pairs[f].empty()) continue;
      if (!settings.use_symmetry || scope.user_tag.empty()) {
        classes.push_back(UserClass{{f}, user_pairs[f].size()});
        continue;
      }
      const auto key = std::make_tuple(u.cell, config.user_antennas(u), scope.user_tag.at(f), user_pairs[f].size());
      auto it = index.find(key);
      if (it == index.end()) {
        index.emplace(key, classes.size());
        classes.push_back(UserClass{{f}, user_pairs[f].size()});
      } else {
        classes[it->second].users.push_back(f);
      }
    }
  }

  ChainEnumeration out;
  if (classes.empty()) return out;

  const int depth = settings.mode == EnumerationMode::kInduced ? 1 : settings.depth;
  // Level codes 0..depth-1 are finite lifetimes, `depth` means forever.
  const std::size_t forever = static_cast<std::size_t>(depth);
  std::set<std::pair<int, std::vector<std::uint64_t>>> seen;
  std::vector<ChainSide> sides;
  if (!settings.side || *settings.side == ChainSide::kA) sides.push_back(ChainSide::kA);
  if (!settings.side || *settings.side == ChainSide::kB) sides.push_back(ChainSide::kB);

  std::vector<std::size_t> level(pairs.size(), 0);
  bool stop = false;

  auto emit = [&](std::size_t max_finite, bool any_finite) {
    std::uint64_t start = 0;
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      if (level[p] > 0) start |= std::uint64_t{1} << p;
    }
    if (start == 0) return;
    PatternChain chain;
    const std::size_t len = any_finite ? max_finite + 1 : 1;
    for (std::size_t n = 1; n <= len; ++n) {
      std::uint64_t mask = 0;
      for (std::size_t p = 0; p < pairs.size(); ++p) {
        if (level[p] >= n) mask |= std::uint64_t{1} << p;
      }
      chain.patterns.emplace_back(mask);
    }
    for (ChainSide side : sides) {
      if (stop) return;
      chain.side = side;
      ++out.generated;
      SubspaceChainState st = subspace_dims(config, pairs, chain, settings.subspace);
      if (!st.terminated) {
        ++out.nonterminating;
        continue;
      }
      if (settings.deduplicate) {
        std::vector<std::uint64_t> key;
        for (const auto& e : st.effective) key.push_back(e.mask());
        if (!seen.emplace(static_cast<int>(side), std::move(key)).second) continue;
      }
      if (out.chains.size() >= settings.budget) {
        out.truncated = true;
        stop = true;
        return;
      }
      out.chains.push_back(EnumeratedChain{chain, std::move(st)});
    }
  };

  // Pass 0 uses lifetimes {0, forever} only; pass 1 the assignments with a finite
  // positive lifetime somewhere.
  for (int pass = 0; pass < (depth > 1 ? 2 : 1) && !stop; ++pass) {
    std::vector<std::size_t> codes = {0, forever};
    if (pass == 1) {
      codes.clear();
      for (std::size_t c = 0; c <= forever; ++c) codes.push_back(c);
    }
    std::vector<std::vector<std::vector<std::size_t>>> per_class;
    std::vector<std::size_t> types;
    for (const auto& cls : classes) {
      types.push_back(ipow(codes.size(), cls.arity));
      per_class.push_back(multisets(types.back(), cls.users.size()));
    }
    std::vector<std::size_t> choice(classes.size(), 0);
    while (!stop) {
      bool any_finite = false;
      std::size_t max_finite = 0;
      for (std::size_t c = 0; c < classes.size(); ++c) {
        const auto& ms = per_class[c][choice[c]];
        for (std::size_t k = 0; k < classes[c].users.size(); ++k) {
          std::size_t t = ms[k];
          for (std::size_t p : user_pairs[classes[c].users[k]]) {
            const std::size_t code = codes[t % codes.size()];
            t /= codes.size();
            level[p] = code;
            if (code > 0 && code < forever) {
              any_finite = true;
              max_finite = std::max(max_finite, code);
            }
          }
        }
      }
      if (pass == 0 || any_finite) {
        // Forever is stored as a lifetime longer than any listed pattern.
        std::vector<std::size_t> saved = level;
        for (auto& l : level) {
          if (l == forever) l = any_finite ? max_finite + 1 : 1;
        }
        emit(max_finite, any_finite);
        level = std::move(saved);
      }
      bool advanced = false;
      for (std::size_t c = classes.size(); c-- > 0;) {
        if (++choice[c] < per_class[c].size()) {
          advanced = true;
          break;
        }
        choice[c] = 0;
      }
      if (!advanced) break;
    }
  }
  return out;
}

PatternChain derive_induced_chain(const NetworkConfig& config, const ConnectionPattern& start, ChainSide side) {
  if (start.empty()) throw std::invalid_argument("derive_induced_chain needs a nonempty start pattern");
  const auto pairs = interference_pair_set(config);
  const PatternChain seed{side, {start}};
  const SubspaceChainState st = subspace_dims(config, pairs, seed);
  int last_positive = 1;
  for (const auto& e : st.entries) {
    if (e.dim > 0) last_positive = std::max(last_positive, e.step);
  }
  PatternChain out{side, {}};
  for (int n = 1; n <= last_positive && n <= static_cast<int>(st.effective.size()); ++n) {
    out.patterns.push_back(st.effective[static_cast<std::size_t>(n) - 1]);
  }
  return out;
}

}  // namespace dof
