#ifndef DOF_SUBSPACE_HPP
#define DOF_SUBSPACE_HPP

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "dof/network.hpp"
#include "dof/pattern.hpp"

namespace dof {

// A BS (index = cell) or a user (index = flat user index of the config).
struct ChainNode {
  enum class Kind { kBs, kUser };
  Kind kind = Kind::kBs;
  std::size_t index = 0;

  auto operator<=>(const ChainNode&) const = default;
  std::string label(const NetworkConfig& config) const;  // "BS2", "MS1_1"
};

struct SubspaceEntry {
  int step = 0;
  ChainNode node;
  std::int64_t dim = 0;
  // Nodes at the other end of the step's active pairs.
  std::vector<ChainNode> members;
};

struct SubspaceOptions {
  int max_steps = 1000;
  std::int64_t dim_cap = std::int64_t{1} << 40;
};

// Irresolvable-subspace dimensions of one chain side.
struct SubspaceChainState {
  ChainSide side = ChainSide::kA;
  // effective[n-1] is the set of pairs active at step n: the chain's I^<n>
  // minus pairs whose node at step n-1 had nothing left to resolve.
  std::vector<ConnectionPattern> effective;
  std::vector<SubspaceEntry> entries;  // step order, then node order
  int last_step = 0;                   // L: last step with an active pair
  int n_max = 0;
  // False when the recursion hit max_steps or dim_cap without running out of pairs.
  bool terminated = true;

  std::vector<std::int64_t> bs_boundary;    // step -1 (side A) or 0 (side B)
  std::vector<std::int64_t> user_boundary;  // step 0 (side A) or -1 (side B)

  // |S| at (node, step); 0 for nodes inactive at that step.
  std::int64_t dim(const ChainNode& node, int step) const;
  int boundary_step(ChainNode::Kind kind) const;
};

SubspaceChainState subspace_dims(const NetworkConfig& config, const InterferencePairSet& pairs,
                                 const PatternChain& chain, const SubspaceOptions& options = {});

}  // namespace dof

#endif  // DOF_SUBSPACE_HPP
