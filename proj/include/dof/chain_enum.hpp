#ifndef DOF_CHAIN_ENUM_HPP
#define DOF_CHAIN_ENUM_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "dof/network.hpp"
#include "dof/pattern.hpp"
#include "dof/subspace.hpp"

namespace dof {

enum class EnumerationMode {
  // One constant chain per nonempty start pattern and side; the effective patterns
  // drop pairs whose node has nothing left to resolve.
  kInduced,
  // Also chains whose patterns shrink during the first `depth` steps: every pair
  // gets a lifetime in {0, 1, ..., depth-1, forever}.
  kExhaustive,
};

const char* to_string(EnumerationMode mode);

struct EnumerationSettings {
  EnumerationMode mode = EnumerationMode::kExhaustive;
  int depth = 2;
  std::size_t budget = 100000;  // emitted chains after deduplication
  std::size_t guard = 20;       // refuse when |J| exceeds this
  SubspaceOptions subspace;
  // Enumerate user lifetimes up to permutation within interchangeable users.
  bool use_symmetry = true;
  bool deduplicate = true;
  std::optional<ChainSide> side;  // both sides when unset
};

// Which pairs take part and which users are interchangeable.
struct ChainScope {
  std::uint64_t universe = ~std::uint64_t{0};
  // Users of the same cell with equal antennas and equal tag may be permuted.
  // Empty: no user is interchangeable with another.
  std::vector<long> user_tag;
};

// All pairs; users with equal N in a cell are interchangeable (shared-d mode).
ChainScope scope_equal_streams(const NetworkConfig& config);
// Pairs touching a zero-stream user or BS are left out; users with equal N and d
// in a cell are interchangeable.
ChainScope scope_for_allocation(const NetworkConfig& config, const StreamAllocation& alloc);
// All pairs, nothing interchangeable (per-user stream symbols).
ChainScope scope_symbolic(const NetworkConfig& config);

struct EnumeratedChain {
  PatternChain chain;
  SubspaceChainState state;
};

struct ChainEnumeration {
  std::vector<EnumeratedChain> chains;
  bool truncated = false;
  std::size_t generated = 0;       // candidate chains before deduplication
  std::size_t nonterminating = 0;  // discarded: the recursion never runs out of pairs
};

ChainEnumeration enumerate_chains(const NetworkConfig& config, const EnumerationSettings& settings,
                                  const ChainScope& scope);

// I^<1> = start; each later pattern drops the pairs whose step-n node has zero
// irresolvable dimension. Lists the patterns up to the last step with a positive
// dimension (at least one pattern); the last one repeats.
PatternChain derive_induced_chain(const NetworkConfig& config, const ConnectionPattern& start, ChainSide side);

}  // namespace dof

#endif  // DOF_CHAIN_ENUM_HPP
