#ifndef DOF_PATTERN_HPP
#define DOF_PATTERN_HPP

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "dof/network.hpp"

namespace dof {

enum class ChainSide { kA, kB };

// "A" or "B".
const char* to_string(ChainSide side);

// A subset I of J, stored as a bitmask over pair indices of an InterferencePairSet.
class ConnectionPattern {
 public:
  ConnectionPattern() = default;
  explicit ConnectionPattern(std::uint64_t mask) : mask_(mask) {}

  static ConnectionPattern full(const InterferencePairSet& pairs);

  std::uint64_t mask() const { return mask_; }
  bool empty() const { return mask_ == 0; }
  std::size_t size() const { return static_cast<std::size_t>(std::popcount(mask_)); }
  bool contains(std::size_t pair_index) const { return (mask_ >> pair_index) & 1u; }
  bool is_subset_of(const ConnectionPattern& other) const { return (mask_ & ~other.mask_) == 0; }

  ConnectionPattern operator&(const ConnectionPattern& o) const { return ConnectionPattern(mask_ & o.mask_); }
  ConnectionPattern operator|(const ConnectionPattern& o) const { return ConnectionPattern(mask_ | o.mask_); }

  std::vector<std::size_t> indices() const;

  // I_j: users paired with BS j in this pattern.
  std::vector<UserId> users_of(const InterferencePairSet& pairs, const BsId& bs) const;
  // I_{i_k}: BSs paired with user i_k in this pattern.
  std::vector<BsId> bss_of(const InterferencePairSet& pairs, const UserId& user) const;

  // "{(1_1,2),(2_1,1)}"
  std::string label(const InterferencePairSet& pairs) const;

  friend bool operator==(const ConnectionPattern&, const ConnectionPattern&) = default;

 private:
  std::uint64_t mask_ = 0;
};

class NestingError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class GuardError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// I^<1>, I^<2>, ...; the last listed pattern repeats for all later steps. A trailing
// empty pattern instead ends the chain: every later step uses the empty pattern.
struct PatternChain {
  ChainSide side = ChainSide::kA;
  std::vector<ConnectionPattern> patterns;

  // Pattern used at step n >= 1.
  const ConnectionPattern& at(std::size_t step) const;

  // Throws NestingError unless I^<n> ⊇ I^<n+1>, I^<1> is nonempty and only the last
  // pattern may be empty.
  void check_nesting() const;

  friend bool operator==(const PatternChain&, const PatternChain&) = default;
};

enum class ChainClass { kFullEcpc, kPartialEcpc, kUcpc };

const char* to_string(ChainClass c);

ChainClass classify_chain(const PatternChain& chain, const InterferencePairSet& pairs);

// All nonempty subsets of J by increasing mask value. Refuses when |J| > guard.
std::vector<ConnectionPattern> enumerate_patterns(const InterferencePairSet& pairs, std::size_t guard = 20);

}  // namespace dof

#endif  // DOF_PATTERN_HPP
