#include "dof/genie.hpp"

#include <map>
#include <stdexcept>

namespace dof {

namespace {

struct Expr {
  std::map<std::size_t, std::int64_t> terms;
  std::int64_t constant = 0;

  Expr& operator+=(const Expr& o) {
    for (const auto& [v, c] : o.terms) terms[v] += c;
    constant += o.constant;
    return *this;
  }
  Expr& operator-=(const Expr& o) {
    for (const auto& [v, c] : o.terms) terms[v] -= c;
    constant -= o.constant;
    return *this;
  }
};

class Builder {
 public:
  Builder(const NetworkConfig& config, const StreamModel& model, ChainSide side)
      : config_(config), model_(model), side_(side) {
    if (model.mode == StreamMode::kFixed) model.alloc.check_matches(config);
    sys_.side = side;
    sys_.stream_names = stream_variable_names(config, model);
  }

  Expr stream(std::size_t flat_user) const {
    Expr e;
    const UserId& u = config_.users().at(flat_user);
    switch (model_.mode) {
      case StreamMode::kFixed: e.constant = model_.alloc.of(u); break;
      case StreamMode::kPerUser: e.terms[flat_user] = 1; break;
      case StreamMode::kShared: e.terms[0] = 1; break;
    }
    return e;
  }

  Expr cell_streams(std::size_t cell) const {
    Expr e;
    switch (model_.mode) {
      case StreamMode::kFixed: e.constant = model_.alloc.cell_total(cell); break;
      case StreamMode::kPerUser:
        for (std::size_t k = 0; k < config_.num_users(cell); ++k) e.terms[config_.flat_index(UserId{cell, k})] = 1;
        break;
      case StreamMode::kShared: e.terms[0] = static_cast<std::int64_t>(config_.num_users(cell)); break;
    }
    return e;
  }

  Expr boundary(const ChainNode& node, int step) const {
    const bool bs = node.kind == ChainNode::Kind::kBs;
    const bool side_a = side_ == ChainSide::kA;
    // Side A: G_user^0 = d_u, G_bs^-1 = M_j - d_j. Side B swaps the roles.
    if (bs && step == (side_a ? -1 : 0)) {
      if (side_a) {
        Expr e;
        e.constant = config_.bs_antennas(node.index);
        e -= cell_streams(node.index);
        return e;
      }
      return cell_streams(node.index);
    }
    if (!bs && step == (side_a ? 0 : -1)) {
      if (!side_a) {
        Expr e;
        e.constant = config_.user_antennas(config_.users().at(node.index));
        e -= stream(node.index);
        return e;
      }
      return stream(node.index);
    }
    throw std::logic_error("genie boundary requested at a step without a boundary value");
  }

  Expr genie(const ChainNode& node, int step) const {
    if (step <= 0) return boundary(node, step);
    Expr e;
    auto it = index_.find({node, step});
    if (it != index_.end()) e.terms[sys_.num_stream_vars() + it->second] = 1;
    return e;
  }

  void add_genie(const ChainNode& node, int step, std::int64_t cap) {
    index_[{node, step}] = sys_.genies.size();
    std::string name = std::string("G_") + to_string(side_) + "_" + node.label(config_) + "_" + std::to_string(step);
    sys_.genies.push_back(GenieVariable{node, step, cap, std::move(name)});
  }

  void add_row(const Expr& lhs_minus_rhs, GenieRow::Kind kind) {
    GenieRow row;
    row.kind = kind;
    row.a.assign(sys_.num_vars(), 0);
    for (const auto& [v, c] : lhs_minus_rhs.terms) row.a.at(v) += c;
    row.b = -lhs_minus_rhs.constant;
    sys_.rows.push_back(std::move(row));
  }

  void add_base_rows() {
    if (side_ == ChainSide::kA) {
      for (const auto& u : config_.users()) {
        Expr e = stream(config_.flat_index(u));
        e.constant -= config_.user_antennas(u);
        add_row(e, GenieRow::Kind::kBase);
      }
    } else {
      for (std::size_t j = 0; j < config_.num_cells(); ++j) {
        Expr e = cell_streams(j);
        e.constant -= config_.bs_antennas(j);
        add_row(e, GenieRow::Kind::kBase);
      }
    }
  }

  GenieSystem& system() { return sys_; }

 private:
  const NetworkConfig& config_;
  const StreamModel& model_;
  ChainSide side_;
  GenieSystem sys_;
  std::map<std::pair<ChainNode, int>, std::size_t> index_;
};

}  // namespace

std::vector<std::size_t> GenieSystem::genie_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t g = 0; g < genies.size(); ++g) out.push_back(num_stream_vars() + g);
  return out;
}

LinearConstraintSystem GenieSystem::to_system() const {
  LinearConstraintSystem sys;
  for (const auto& n : stream_names) sys.add_variable(n);
  for (const auto& g : genies) sys.add_variable(g.name);
  for (const auto& row : rows) {
    std::vector<Rational> a;
    a.reserve(row.a.size());
    for (std::int64_t c : row.a) a.push_back(make_rational(c));
    sys.add(std::move(a), Relation::kLe, make_rational(row.b));
  }
  return sys;
}

std::vector<std::string> stream_variable_names(const NetworkConfig& config, const StreamModel& model) {
  std::vector<std::string> out;
  if (model.mode == StreamMode::kPerUser) {
    for (const auto& u : config.users()) out.push_back("d_" + u.label());
  } else if (model.mode == StreamMode::kShared) {
    out.push_back("d");
  }
  return out;
}

GenieSystem build_genie_system(const NetworkConfig& config, const SubspaceChainState& state, const StreamModel& model) {
  Builder b(config, model, state.side);
  for (const auto& e : state.entries) {
    if (e.dim > 0) b.add_genie(e.node, e.step, e.dim);
  }
  for (const auto& e : state.entries) {
    Expr row;
    for (const auto& m : e.members) row += b.genie(m, e.step - 1);
    row -= b.genie(e.node, e.step - 2);
    row -= b.genie(e.node, e.step);
    b.add_row(row, GenieRow::Kind::kFlow);
  }
  const auto& genies = b.system().genies;
  for (std::size_t g = 0; g < genies.size(); ++g) {
    Expr cap;
    cap.terms[b.system().num_stream_vars() + g] = 1;
    cap.constant = -genies[g].cap;
    b.add_row(cap, GenieRow::Kind::kCap);
  }
  b.add_base_rows();
  return std::move(b.system());
}

GenieSystem base_system(const NetworkConfig& config, ChainSide side, const StreamModel& model) {
  Builder b(config, model, side);
  b.add_base_rows();
  return std::move(b.system());
}

}  // namespace dof
