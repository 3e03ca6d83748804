#ifndef DOF_CHAIN_HPP
#define DOF_CHAIN_HPP

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>

#include "dof/chain_enum.hpp"
#include "dof/genie.hpp"
#include "dof/linear_system.hpp"
#include "dof/network.hpp"
#include "dof/proper.hpp"
#include "dof/rational.hpp"

namespace dof {

// Shared-d results of independent pieces of genie systems, keyed by their rows
// with genie variables renumbered in order of appearance. Safe to share between
// calls and threads.
class ComponentCache {
 public:
  std::optional<ExtendedRational> find(const std::string& key) const;
  void store(const std::string& key, const ExtendedRational& value);
  std::size_t size() const;
  std::size_t hits() const;

 private:
  mutable std::mutex mu_;
  std::unordered_map<std::string, ExtendedRational> map_;
  mutable std::size_t hits_ = 0;
};

struct ChainSettings {
  EnumerationSettings enumeration;
  unsigned jobs = 1;
  std::shared_ptr<ComponentCache> cache;  // created per call when null
};

struct IrreducibleVerdict {
  bool feasible = true;
  // The enumeration hit its budget: only the chains listed were checked.
  bool truncated = false;
  std::size_t chains_checked = 0;
  std::size_t nonterminating = 0;
  // A side's base constraints d_i_k <= N_i_k or d_j <= M_j already fail.
  bool base_violated = false;
  std::optional<PatternChain> failing_chain;
  std::optional<SubspaceChainState> failing_state;
  LinearConstraintSystem failing_system;
  std::vector<Rational> certificate;
  std::string certificate_text;
};

// Rational feasibility of the genie system of every enumerated chain, both sides.
IrreducibleVerdict irreducible_check(const NetworkConfig& config, const StreamAllocation& alloc,
                                     const ChainSettings& settings = {});

enum class RegionMode { kInfo, kLinearInfo };

const char* to_string(RegionMode mode);

struct RegionResult {
  RegionMode mode = RegionMode::kInfo;
  LinearConstraintSystem region;  // over d_i_k, canonical, redundancy-free
  bool truncated = false;
  std::size_t chains = 0;
  std::size_t nonterminating = 0;
  std::string note;
};

// Union of the projected inequalities of all enumerated chains and both sides'
// base constraints.
RegionResult dof_region(const NetworkConfig& config, RegionMode mode, const ChainSettings& settings = {});

// Projection of one chain's genie system onto the per-user stream variables.
// Throws std::invalid_argument when the chain's recursion does not terminate.
LinearConstraintSystem chain_region(const NetworkConfig& config, const PatternChain& chain,
                                    Pruning pruning = Pruning::kDuplicate);

enum class MaxDofMode { kInfo, kLinear };

const char* to_string(MaxDofMode mode);

struct MaxDofResult {
  MaxDofMode mode = MaxDofMode::kInfo;
  ExtendedRational value;
  ExtendedRational info;
  std::optional<ExtendedRational> proper;  // linear mode
  bool truncated = false;
  std::size_t chains = 0;
  std::size_t nonterminating = 0;
  // Chain attaining the info value; unset when the base constraints bind.
  std::optional<PatternChain> binding_chain;
};

// Largest d with d_i_k = d for all users that passes every enumerated chain (info),
// additionally capped by the proper condition (linear).
MaxDofResult max_equal_d(const NetworkConfig& config, MaxDofMode mode, const ChainSettings& settings = {},
                         const ProperOptions& proper_options = {});

// Largest shared d allowed by one chain's genie system.
ExtendedRational chain_max_equal_d(const NetworkConfig& config, const SubspaceChainState& state,
                                   ComponentCache* cache = nullptr);

enum class AllocationClass { kImproper, kProperButIrreducibleInfeasible, kPassesBoth };

const char* to_string(AllocationClass c);

struct Classification {
  AllocationClass label = AllocationClass::kPassesBoth;
  ProperVerdict proper;
  IrreducibleVerdict irreducible;
};

Classification classify_allocation(const NetworkConfig& config, const StreamAllocation& alloc,
                                   const ChainSettings& settings = {}, const ProperOptions& proper_options = {});

}  // namespace dof

#endif  // DOF_CHAIN_HPP
