#include "dof/proper.hpp"

#include <bit>
#include <functional>
#include <stdexcept>

namespace dof {

namespace {

void check_guard(const InterferencePairSet& pairs, std::size_t guard) {
  if (pairs.size() > guard) {
    throw GuardError("|J| = " + std::to_string(pairs.size()) + " exceeds the subset guard " + std::to_string(guard) +
                     "; raise --guard explicitly");
  }
}

// Calls visit(mask) for each candidate subset of the pairs in `active`.
void for_each_subset(const NetworkConfig& config, const InterferencePairSet& pairs, std::uint64_t active,
                     SubsetSearch search, const std::function<void(std::uint64_t)>& visit) {
  if (active == 0) return;
  if (search == SubsetSearch::kExhaustive) {
    for (std::uint64_t m = active;; m = (m - 1) & active) {
      if (m == 0) break;
      visit(m);
    }
    return;
  }
  const std::size_t g = config.num_cells();
  const std::size_t nu = config.total_users();
  if (nu > 62 || g > 62) throw GuardError("too many nodes for closed-subset enumeration");
  // Pair masks per user and per BS, restricted to `active`.
  std::vector<std::uint64_t> by_user(nu, 0);
  std::vector<std::uint64_t> by_bs(g, 0);
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    if (!((active >> p) & 1u)) continue;
    by_user[config.flat_index(pairs[p].user)] |= std::uint64_t{1} << p;
    by_bs[pairs[p].bs.cell] |= std::uint64_t{1} << p;
  }
  for (std::uint64_t bmask = 1; bmask < (std::uint64_t{1} << g); ++bmask) {
    std::uint64_t bs_pairs = 0;
    for (std::size_t j = 0; j < g; ++j) {
      if ((bmask >> j) & 1u) bs_pairs |= by_bs[j];
    }
    std::vector<std::size_t> cand;
    for (std::size_t u = 0; u < nu; ++u) {
      if (by_user[u] & bs_pairs) cand.push_back(u);
    }
    if (cand.empty()) continue;
    const std::uint64_t limit = std::uint64_t{1} << cand.size();
    for (std::uint64_t umask = 1; umask < limit; ++umask) {
      std::uint64_t sel = 0;
      for (std::size_t c = 0; c < cand.size(); ++c) {
        if ((umask >> c) & 1u) sel |= by_user[cand[c]];
      }
      sel &= bs_pairs;
      bool every_bs = true;
      for (std::size_t j = 0; j < g && every_bs; ++j) {
        if (((bmask >> j) & 1u) && (sel & by_bs[j]) == 0) every_bs = false;
      }
      if (every_bs) visit(sel);
    }
  }
}

struct Touched {
  std::vector<bool> bs;
  std::vector<bool> user;
};

Touched touched_nodes(const NetworkConfig& config, const InterferencePairSet& pairs, std::uint64_t mask) {
  Touched t{std::vector<bool>(config.num_cells(), false), std::vector<bool>(config.total_users(), false)};
  for (std::uint64_t m = mask; m != 0; m &= m - 1) {
    const auto p = static_cast<std::size_t>(std::countr_zero(m));
    t.bs[pairs[p].bs.cell] = true;
    t.user[config.flat_index(pairs[p].user)] = true;
  }
  return t;
}

}  // namespace

Rational proper_slack(const NetworkConfig& config, const StreamAllocation& alloc, const InterferencePairSet& pairs,
                      const ConnectionPattern& subset) {
  alloc.check_matches(config);
  const auto t = touched_nodes(config, pairs, subset.mask());
  long long lhs = 0;
  long long rhs = 0;
  for (std::size_t j = 0; j < config.num_cells(); ++j) {
    if (!t.bs[j]) continue;
    const long long dj = alloc.cell_total(j);
    lhs += (config.bs_antennas(j) - dj) * dj;
  }
  for (const auto& u : config.users()) {
    if (!t.user[config.flat_index(u)]) continue;
    const long long du = alloc.of(u);
    lhs += (config.user_antennas(u) - du) * du;
  }
  for (std::size_t p : subset.indices()) {
    rhs += static_cast<long long>(alloc.of(pairs[p].user)) * alloc.cell_total(pairs[p].bs.cell);
  }
  return make_rational(lhs - rhs);
}

ProperVerdict proper_condition_check(const NetworkConfig& config, const StreamAllocation& alloc,
                                     const ProperOptions& options) {
  alloc.check_matches(config);
  const auto pairs = interference_pair_set(config);
  check_guard(pairs, options.guard);
  std::uint64_t active = 0;
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    if (alloc.of(pairs[p].user) > 0 && alloc.cell_total(pairs[p].bs.cell) > 0) active |= std::uint64_t{1} << p;
  }
  ProperVerdict v;
  bool first = true;
  for_each_subset(config, pairs, active, options.search, [&](std::uint64_t mask) {
    ++v.subsets_checked;
    const ConnectionPattern subset(mask);
    Rational s = proper_slack(config, alloc, pairs, subset);
    if (first || s < v.min_slack) {
      v.min_slack = s;
      v.tightest = subset;
      first = false;
    }
    if (sgn(s) < 0) {
      v.proper = false;
      ++v.violations;
      if (v.violating_subsets.size() < options.max_reported) v.violating_subsets.push_back({subset, std::move(s)});
    }
  });
  return v;
}

bool symmetric_proper_shortcut(const NetworkConfig& config, const StreamAllocation& alloc) {
  if (!is_symmetric(config, alloc)) throw std::invalid_argument("symmetric_proper_shortcut needs a symmetric system");
  const long long m = config.bs_antennas(0);
  const long long n = config.user_antennas(UserId{0, 0});
  const long long g = static_cast<long long>(config.num_cells());
  const long long k = static_cast<long long>(config.num_users(0));
  const long long d = alloc.of(UserId{0, 0});
  return m + n >= (g * k + 1) * d;
}

ExtendedRational proper_subset_bound(const NetworkConfig& config, const InterferencePairSet& pairs,
                                     const ConnectionPattern& subset) {
  if (subset.empty()) return ExtendedRational::infinity();
  const auto t = touched_nodes(config, pairs, subset.mask());
  long long num = 0;
  long long den = 0;
  for (std::size_t j = 0; j < config.num_cells(); ++j) {
    if (!t.bs[j]) continue;
    const long long kj = static_cast<long long>(config.num_users(j));
    num += kj * config.bs_antennas(j);
    den += kj * kj;
  }
  for (const auto& u : config.users()) {
    if (!t.user[config.flat_index(u)]) continue;
    num += config.user_antennas(u);
    den += 1;
  }
  for (std::size_t p : subset.indices()) den += static_cast<long long>(config.num_users(pairs[p].bs.cell));
  return ExtendedRational(make_rational(num, den));
}

ProperMaxResult proper_max_equal_d(const NetworkConfig& config, const ProperOptions& options) {
  const auto pairs = interference_pair_set(config);
  check_guard(pairs, options.guard);
  ProperMaxResult r;
  r.value = ExtendedRational::infinity();
  for_each_subset(config, pairs, pairs.pattern_count(), options.search, [&](std::uint64_t mask) {
    ++r.subsets_checked;
    const ConnectionPattern subset(mask);
    ExtendedRational b = proper_subset_bound(config, pairs, subset);
    if (b < r.value) {
      r.value = std::move(b);
      r.binding = subset;
    }
  });
  return r;
}

}  // namespace dof
