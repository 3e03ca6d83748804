#include "dof/network.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>

namespace dof {

std::string UserId::label() const { return std::to_string(cell + 1) + "_" + std::to_string(index + 1); }

std::string BsId::label() const { return std::to_string(cell + 1); }

std::string InterferencePair::label() const { return "(" + user.label() + "," + bs.label() + ")"; }

NetworkConfig::NetworkConfig(std::vector<CellSpec> cells) : cells_(std::move(cells)) {
  if (cells_.empty()) throw ConfigError("cells", "at least one cell is required");
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    const std::string prefix = "cells[" + std::to_string(i) + "]";
    if (cells_[i].bs_antennas < 1) throw ConfigError(prefix + ".bs_antennas", "must be a positive integer");
    if (cells_[i].users.empty()) throw ConfigError(prefix + ".users", "each cell needs at least one user");
    offsets_.push_back(users_.size());
    for (std::size_t k = 0; k < cells_[i].users.size(); ++k) {
      if (cells_[i].users[k].antennas < 1) {
        throw ConfigError(prefix + ".users[" + std::to_string(k) + "].antennas", "must be a positive integer");
      }
      users_.push_back(UserId{i, k});
    }
  }
}

bool operator==(const NetworkConfig& a, const NetworkConfig& b) {
  if (a.cells_.size() != b.cells_.size()) return false;
  for (std::size_t i = 0; i < a.cells_.size(); ++i) {
    const auto& ca = a.cells_[i];
    const auto& cb = b.cells_[i];
    if (ca.bs_antennas != cb.bs_antennas || ca.users.size() != cb.users.size()) return false;
    for (std::size_t k = 0; k < ca.users.size(); ++k) {
      if (ca.users[k].antennas != cb.users[k].antennas) return false;
    }
  }
  return true;
}

StreamAllocation::StreamAllocation(std::vector<std::vector<int>> streams) : streams_(std::move(streams)) {
  for (const auto& cell : streams_) {
    for (int d : cell) {
      if (d < 0) throw std::invalid_argument("stream counts must be nonnegative");
    }
  }
}

StreamAllocation StreamAllocation::uniform(const NetworkConfig& config, int d) {
  std::vector<std::vector<int>> s;
  for (std::size_t i = 0; i < config.num_cells(); ++i) s.emplace_back(config.num_users(i), d);
  return StreamAllocation(std::move(s));
}

int StreamAllocation::cell_total(std::size_t cell) const {
  int total = 0;
  for (int d : streams_.at(cell)) total += d;
  return total;
}

bool StreamAllocation::matches(const NetworkConfig& config) const {
  if (streams_.size() != config.num_cells()) return false;
  for (std::size_t i = 0; i < streams_.size(); ++i) {
    if (streams_[i].size() != config.num_users(i)) return false;
  }
  return true;
}

void StreamAllocation::check_matches(const NetworkConfig& config) const {
  if (!matches(config)) throw std::invalid_argument("stream allocation does not match the configuration");
}

InterferencePairSet::InterferencePairSet(std::vector<InterferencePair> pairs) : pairs_(std::move(pairs)) {
  if (pairs_.size() > kMaxPairs) {
    throw std::length_error("interference pair set exceeds " + std::to_string(kMaxPairs) + " pairs");
  }
  std::sort(pairs_.begin(), pairs_.end());
}

std::uint64_t InterferencePairSet::pattern_count() const {
  return (std::uint64_t{1} << pairs_.size()) - 1;
}

std::optional<std::size_t> InterferencePairSet::index_of(const InterferencePair& pair) const {
  auto it = std::lower_bound(pairs_.begin(), pairs_.end(), pair);
  if (it == pairs_.end() || *it != pair) return std::nullopt;
  return static_cast<std::size_t>(it - pairs_.begin());
}

InterferencePairSet interference_pair_set(const NetworkConfig& config) {
  std::vector<InterferencePair> pairs;
  for (const auto& user : config.users()) {
    for (std::size_t j = 0; j < config.num_cells(); ++j) {
      if (j != user.cell) pairs.push_back({user, BsId{j}});
    }
  }
  return InterferencePairSet(std::move(pairs));
}

bool is_symmetric(const NetworkConfig& config, const StreamAllocation& alloc) {
  alloc.check_matches(config);
  const int m = config.bs_antennas(0);
  const std::size_t k = config.num_users(0);
  const int n = config.user_antennas(UserId{0, 0});
  const int d = alloc.of(UserId{0, 0});
  for (std::size_t i = 0; i < config.num_cells(); ++i) {
    if (config.bs_antennas(i) != m || config.num_users(i) != k) return false;
  }
  for (const auto& u : config.users()) {
    if (config.user_antennas(u) != n || alloc.of(u) != d) return false;
  }
  return true;
}

namespace {

int positive_int(const nlohmann::json& node, const std::string& field, int min_value) {
  if (!node.is_number_integer()) throw ConfigError(field, "expected an integer");
  const auto v = node.get<long long>();
  if (v < min_value) {
    throw ConfigError(field, min_value > 0 ? "must be a positive integer" : "must be a nonnegative integer");
  }
  if (v > 1'000'000) throw ConfigError(field, "value out of range");
  return static_cast<int>(v);
}

}  // namespace

ParsedConfig parse_config(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("", std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("", "top level must be an object");
  if (!doc.contains("cells")) throw ConfigError("cells", "missing");
  const auto& cells = doc["cells"];
  if (!cells.is_array()) throw ConfigError("cells", "expected an array");
  if (cells.empty()) throw ConfigError("cells", "at least one cell is required");

  std::vector<CellSpec> specs;
  std::vector<std::vector<int>> streams;
  std::optional<bool> have_streams;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const std::string prefix = "cells[" + std::to_string(i) + "]";
    const auto& cell = cells[i];
    if (!cell.is_object()) throw ConfigError(prefix, "expected an object");
    if (!cell.contains("bs_antennas")) throw ConfigError(prefix + ".bs_antennas", "missing");
    if (!cell.contains("users")) throw ConfigError(prefix + ".users", "missing");
    CellSpec spec;
    spec.bs_antennas = positive_int(cell["bs_antennas"], prefix + ".bs_antennas", 1);
    const auto& users = cell["users"];
    if (!users.is_array()) throw ConfigError(prefix + ".users", "expected an array");
    if (users.empty()) throw ConfigError(prefix + ".users", "each cell needs at least one user");
    streams.emplace_back();
    for (std::size_t k = 0; k < users.size(); ++k) {
      const std::string uprefix = prefix + ".users[" + std::to_string(k) + "]";
      const auto& user = users[k];
      if (!user.is_object()) throw ConfigError(uprefix, "expected an object");
      if (!user.contains("antennas")) throw ConfigError(uprefix + ".antennas", "missing");
      spec.users.push_back(UserSpec{positive_int(user["antennas"], uprefix + ".antennas", 1)});
      const bool has = user.contains("streams");
      if (have_streams && *have_streams != has) {
        throw ConfigError(uprefix + ".streams", "streams must be given for every user or for none");
      }
      have_streams = has;
      if (has) streams.back().push_back(positive_int(user["streams"], uprefix + ".streams", 0));
    }
    specs.push_back(std::move(spec));
  }
  ParsedConfig out{NetworkConfig(std::move(specs)), std::nullopt};
  if (have_streams.value_or(false)) out.streams = StreamAllocation(std::move(streams));
  return out;
}

std::string serialize_config(const NetworkConfig& config, const StreamAllocation* streams) {
  if (streams) streams->check_matches(config);
  nlohmann::ordered_json cells = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < config.num_cells(); ++i) {
    nlohmann::ordered_json cell;
    cell["bs_antennas"] = config.bs_antennas(i);
    nlohmann::ordered_json users = nlohmann::ordered_json::array();
    for (std::size_t k = 0; k < config.num_users(i); ++k) {
      nlohmann::ordered_json user;
      user["antennas"] = config.user_antennas(UserId{i, k});
      if (streams) user["streams"] = streams->of(UserId{i, k});
      users.push_back(std::move(user));
    }
    cell["users"] = std::move(users);
    cells.push_back(std::move(cell));
  }
  nlohmann::ordered_json doc;
  doc["cells"] = std::move(cells);
  return doc.dump(2);
}

StreamAllocation parse_stream_list(std::string_view text, const NetworkConfig& config) {
  std::vector<std::vector<int>> out;
  std::string s(text);
  std::stringstream cells(s);
  std::string cell;
  while (std::getline(cells, cell, ';')) {
    out.emplace_back();
    std::stringstream users(cell);
    std::string tok;
    while (std::getline(users, tok, ',')) {
      try {
        std::size_t used = 0;
        const int v = std::stoi(tok, &used);
        if (used != tok.size() || v < 0) throw std::invalid_argument(tok);
        out.back().push_back(v);
      } catch (const std::exception&) {
        throw ConfigError("streams", "malformed stream count '" + tok + "'");
      }
    }
  }
  StreamAllocation alloc(std::move(out));
  if (!alloc.matches(config)) throw ConfigError("streams", "stream list does not match the configuration shape");
  return alloc;
}

}  // namespace dof
