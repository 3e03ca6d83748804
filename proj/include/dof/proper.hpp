#ifndef DOF_PROPER_HPP
#define DOF_PROPER_HPP

#include <vector>

#include "dof/network.hpp"
#include "dof/pattern.hpp"
#include "dof/rational.hpp"

namespace dof {

struct SubsetSlack {
  ConnectionPattern subset;
  Rational slack;  // LHS - RHS of the counting inequality; negative means violated
};

struct ProperVerdict {
  bool proper = true;
  std::vector<SubsetSlack> violating_subsets;  // capped at max_reported
  std::size_t violations = 0;                   // total count
  std::size_t subsets_checked = 0;
  // Least slack over all checked subsets (0 when J is empty).
  Rational min_slack;
  ConnectionPattern tightest;
};

enum class SubsetSearch {
  // Only subsets closed under adding pairs between their own nodes; every other
  // subset has a closed superset with smaller or equal slack.
  kClosed,
  // Every nonempty subset of J.
  kExhaustive,
};

struct ProperOptions {
  std::size_t guard = 20;
  SubsetSearch search = SubsetSearch::kClosed;
  std::size_t max_reported = 16;
};

// Slack of the counting inequality for one subset of J.
Rational proper_slack(const NetworkConfig& config, const StreamAllocation& alloc, const InterferencePairSet& pairs,
                      const ConnectionPattern& subset);

// Users and BSs with zero streams are left out of J: they contribute nothing to
// either side of any inequality.
ProperVerdict proper_condition_check(const NetworkConfig& config, const StreamAllocation& alloc,
                                     const ProperOptions& options = {});

// M + N >= (G K + 1) d. Throws std::invalid_argument unless is_symmetric().
bool symmetric_proper_shortcut(const NetworkConfig& config, const StreamAllocation& alloc);

// Equal streams d on every user: the subset's inequality divided by d.
ExtendedRational proper_subset_bound(const NetworkConfig& config, const InterferencePairSet& pairs,
                                     const ConnectionPattern& subset);

struct ProperMaxResult {
  ExtendedRational value;  // infinite when J is empty
  ConnectionPattern binding;
  std::size_t subsets_checked = 0;
};

ProperMaxResult proper_max_equal_d(const NetworkConfig& config, const ProperOptions& options = {});

}  // namespace dof

#endif  // DOF_PROPER_HPP
