#ifndef DOF_NETWORK_HPP
#define DOF_NETWORK_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dof {

// Raised for malformed or invalid configuration documents. `field()` names the
// offending JSON path, e.g. "cells[1].users[0].antennas".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field.empty() ? message : field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// User k of cell i (zero-based in code, printed 1-based as "i_k").
struct UserId {
  std::size_t cell = 0;
  std::size_t index = 0;

  auto operator<=>(const UserId&) const = default;
  std::string label() const;
};

// Base station of a cell.
struct BsId {
  std::size_t cell = 0;

  auto operator<=>(const BsId&) const = default;
  std::string label() const;
};

struct UserSpec {
  int antennas = 0;
};

struct CellSpec {
  int bs_antennas = 0;
  std::vector<UserSpec> users;
};

// Asymmetric MIMO-IBC antenna configuration. Immutable once constructed.
class NetworkConfig {
 public:
  // Throws ConfigError when a cell list, user list or antenna count is invalid.
  explicit NetworkConfig(std::vector<CellSpec> cells);

  std::size_t num_cells() const { return cells_.size(); }
  std::size_t num_users(std::size_t cell) const { return cells_.at(cell).users.size(); }
  std::size_t total_users() const { return users_.size(); }

  int bs_antennas(std::size_t cell) const { return cells_.at(cell).bs_antennas; }
  int user_antennas(const UserId& user) const { return cells_.at(user.cell).users.at(user.index).antennas; }

  // All users in cell-major order; flat_index() maps back into this list.
  const std::vector<UserId>& users() const { return users_; }
  std::size_t flat_index(const UserId& user) const { return offsets_.at(user.cell) + user.index; }

  const std::vector<CellSpec>& cells() const { return cells_; }

  friend bool operator==(const NetworkConfig& a, const NetworkConfig& b);

 private:
  std::vector<CellSpec> cells_;
  std::vector<UserId> users_;
  std::vector<std::size_t> offsets_;
};

// Per-user stream counts d_{i_k}, indexed like the config.
class StreamAllocation {
 public:
  StreamAllocation() = default;
  explicit StreamAllocation(std::vector<std::vector<int>> streams);

  // Every user of `config` gets `d` streams.
  static StreamAllocation uniform(const NetworkConfig& config, int d);

  int of(const UserId& user) const { return streams_.at(user.cell).at(user.index); }
  // d_j: total streams of cell j.
  int cell_total(std::size_t cell) const;
  std::size_t num_cells() const { return streams_.size(); }
  const std::vector<std::vector<int>>& streams() const { return streams_; }

  bool matches(const NetworkConfig& config) const;
  // Throws std::invalid_argument unless matches(config).
  void check_matches(const NetworkConfig& config) const;

  friend bool operator==(const StreamAllocation&, const StreamAllocation&) = default;

 private:
  std::vector<std::vector<int>> streams_;
};

// (i_k, j): user i_k and base station j of another cell interfere mutually.
struct InterferencePair {
  UserId user;
  BsId bs;

  auto operator<=>(const InterferencePair&) const = default;
  std::string label() const;  // "(1_2,2)"
};

// The set J of all cross-cell MS-BS pairs, in lexicographic (user, bs) order.
class InterferencePairSet {
 public:
  // Hard limit imposed by the 64-bit pattern representation.
  static constexpr std::size_t kMaxPairs = 63;

  explicit InterferencePairSet(std::vector<InterferencePair> pairs);

  std::size_t size() const { return pairs_.size(); }
  bool empty() const { return pairs_.empty(); }
  const InterferencePair& operator[](std::size_t i) const { return pairs_[i]; }
  const std::vector<InterferencePair>& pairs() const { return pairs_; }
  auto begin() const { return pairs_.begin(); }
  auto end() const { return pairs_.end(); }

  // L_J = 2^{|J|} - 1 nonempty subsets.
  std::uint64_t pattern_count() const;

  std::optional<std::size_t> index_of(const InterferencePair& pair) const;

 private:
  std::vector<InterferencePair> pairs_;
};

InterferencePairSet interference_pair_set(const NetworkConfig& config);

// True iff all M_i, K_i, N_{i_k} and d_{i_k} coincide. Throws on index mismatch.
bool is_symmetric(const NetworkConfig& config, const StreamAllocation& alloc);

struct ParsedConfig {
  NetworkConfig config;
  std::optional<StreamAllocation> streams;
};

// Parses {"cells": [{"bs_antennas": M, "users": [{"antennas": N, "streams": d?}]}]}.
// "streams" must be given for every user or for none.
ParsedConfig parse_config(std::string_view json_text);

std::string serialize_config(const NetworkConfig& config, const StreamAllocation* streams = nullptr);

// "2,1;1" -> cells separated by ';', users by ','. Throws ConfigError.
StreamAllocation parse_stream_list(std::string_view text, const NetworkConfig& config);

}  // namespace dof

#endif  // DOF_NETWORK_HPP
