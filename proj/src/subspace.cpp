#include "dof/subspace.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace dof {

std::string ChainNode::label(const NetworkConfig& config) const {
  if (kind == Kind::kBs) return "BS" + std::to_string(index + 1);
  return "MS" + config.users().at(index).label();
}

int SubspaceChainState::boundary_step(ChainNode::Kind kind) const {
  const bool bs = kind == ChainNode::Kind::kBs;
  return (side == ChainSide::kA) == bs ? -1 : 0;
}

std::int64_t SubspaceChainState::dim(const ChainNode& node, int step) const {
  const bool bs = node.kind == ChainNode::Kind::kBs;
  if (step <= 0) {
    if (step != boundary_step(node.kind)) return 0;
    return bs ? bs_boundary.at(node.index) : user_boundary.at(node.index);
  }
  for (const auto& e : entries) {
    if (e.step == step && e.node == node) return e.dim;
  }
  return 0;
}

SubspaceChainState subspace_dims(const NetworkConfig& config, const InterferencePairSet& pairs,
                                 const PatternChain& chain, const SubspaceOptions& options) {
  chain.check_nesting();
  SubspaceChainState st;
  st.side = chain.side;
  for (std::size_t j = 0; j < config.num_cells(); ++j) st.bs_boundary.push_back(config.bs_antennas(j));
  for (const auto& u : config.users()) st.user_boundary.push_back(config.user_antennas(u));

  // Latest dimension per node; a node's previous value always comes from two steps back.
  std::vector<std::int64_t> bs_dim = st.bs_boundary;
  std::vector<std::int64_t> user_dim = st.user_boundary;

  ConnectionPattern active = chain.at(1) & ConnectionPattern::full(pairs);
  int n = 1;
  while (!active.empty()) {
    if (n > options.max_steps) {
      st.terminated = false;
      break;
    }
    st.effective.push_back(active);
    const bool bs_step = (n % 2 == 1) == (chain.side == ChainSide::kA);
    std::map<ChainNode, std::vector<ChainNode>> groups;
    for (std::size_t p : active.indices()) {
      const ChainNode user{ChainNode::Kind::kUser, config.flat_index(pairs[p].user)};
      const ChainNode bs{ChainNode::Kind::kBs, pairs[p].bs.cell};
      if (bs_step) {
        groups[bs].push_back(user);
      } else {
        groups[user].push_back(bs);
      }
    }
    std::map<ChainNode, std::int64_t> step_dims;
    bool overflow = false;
    for (auto& [node, members] : groups) {
      std::int64_t sum = 0;
      for (const auto& m : members) sum += m.kind == ChainNode::Kind::kBs ? bs_dim[m.index] : user_dim[m.index];
      auto& own = node.kind == ChainNode::Kind::kBs ? bs_dim[node.index] : user_dim[node.index];
      const std::int64_t value = std::max<std::int64_t>(0, sum - own);
      own = value;
      step_dims[node] = value;
      if (value > options.dim_cap) overflow = true;
      std::sort(members.begin(), members.end());
      st.entries.push_back(SubspaceEntry{n, node, value, members});
    }
    st.last_step = n;
    if (overflow) {
      st.terminated = false;
      break;
    }
    std::uint64_t next = 0;
    const ConnectionPattern listed = chain.at(static_cast<std::size_t>(n) + 1);
    for (std::size_t p : (active & listed).indices()) {
      const ChainNode receiver = bs_step ? ChainNode{ChainNode::Kind::kBs, pairs[p].bs.cell}
                                         : ChainNode{ChainNode::Kind::kUser, config.flat_index(pairs[p].user)};
      if (step_dims[receiver] > 0) next |= std::uint64_t{1} << p;
    }
    active = ConnectionPattern(next);
    ++n;
  }
  st.n_max = st.last_step > 0 ? (st.last_step - 1) / 2 : 0;
  return st;
}

}  // namespace dof
