#ifndef DOF_GENIE_HPP
#define DOF_GENIE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "dof/linear_system.hpp"
#include "dof/network.hpp"
#include "dof/subspace.hpp"

namespace dof {

enum class StreamMode {
  kFixed,    // integer allocation, no stream variables
  kPerUser,  // one variable d_i_k per user
  kShared,   // one variable d shared by every user; d_j = K_j d
};

struct StreamModel {
  StreamMode mode = StreamMode::kShared;
  StreamAllocation alloc;  // kFixed only

  static StreamModel fixed(StreamAllocation alloc) { return {StreamMode::kFixed, std::move(alloc)}; }
  static StreamModel per_user() { return {StreamMode::kPerUser, {}}; }
  static StreamModel shared() { return {StreamMode::kShared, {}}; }
};

struct GenieVariable {
  ChainNode node;
  int step = 0;
  std::int64_t cap = 0;  // |G| <= |S| at (node, step)
  std::string name;
};

// Integer row: sum a[v] x[v] <= b over stream variables then genie variables.
struct GenieRow {
  enum class Kind { kFlow, kCap, kBase };
  Kind kind = Kind::kFlow;
  std::vector<std::int64_t> a;
  std::int64_t b = 0;
};

struct GenieSystem {
  ChainSide side = ChainSide::kA;
  std::vector<std::string> stream_names;
  std::vector<GenieVariable> genies;
  std::vector<GenieRow> rows;

  std::size_t num_stream_vars() const { return stream_names.size(); }
  std::size_t num_vars() const { return stream_names.size() + genies.size(); }
  std::vector<std::size_t> genie_indices() const;
  LinearConstraintSystem to_system() const;
};

// Stream variable names of a model: {"d_1_1", ...}, {"d"} or {}.
std::vector<std::string> stream_variable_names(const NetworkConfig& config, const StreamModel& model);

// Flow inequalities of every step, caps 0 <= |G| <= |S| (a genie variable exists
// only where |S| > 0), and the side's base constraints: d_i_k <= N_i_k on side A,
// d_j <= M_j on side B.
GenieSystem build_genie_system(const NetworkConfig& config, const SubspaceChainState& state, const StreamModel& model);

// Only the base constraints of one side.
GenieSystem base_system(const NetworkConfig& config, ChainSide side, const StreamModel& model);

}  // namespace dof

#endif  // DOF_GENIE_HPP
