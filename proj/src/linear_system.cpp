#include "dof/linear_system.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "dof/lp.hpp"

namespace dof {

const char* to_string(Relation rel) {
  switch (rel) {
    case Relation::kLe: return "<=";
    case Relation::kGe: return ">=";
    case Relation::kEq: return "=";
  }
  return "?";
}

LinearConstraintSystem::LinearConstraintSystem(std::vector<std::string> variables)
    : names_(std::move(variables)), free_(names_.size(), false) {}

std::size_t LinearConstraintSystem::add_variable(std::string name, bool is_free) {
  for (auto& row : rows_) row.coeffs.emplace_back(0);
  names_.push_back(std::move(name));
  free_.push_back(is_free);
  return names_.size() - 1;
}

std::optional<std::size_t> LinearConstraintSystem::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return i;
  }
  return std::nullopt;
}

void LinearConstraintSystem::add(LinearConstraint c) {
  if (c.coeffs.size() != names_.size()) {
    throw std::invalid_argument("constraint has " + std::to_string(c.coeffs.size()) + " coefficients for " +
                                std::to_string(names_.size()) + " variables");
  }
  rows_.push_back(std::move(c));
}

void LinearConstraintSystem::add(std::vector<Rational> coeffs, Relation rel, Rational rhs) {
  add(LinearConstraint{std::move(coeffs), rel, std::move(rhs)});
}

bool LinearConstraintSystem::satisfied_by(const std::vector<Rational>& x) const {
  if (x.size() != names_.size()) return false;
  for (std::size_t v = 0; v < x.size(); ++v) {
    if (!free_[v] && sgn(x[v]) < 0) return false;
  }
  for (const auto& row : rows_) {
    Rational lhs;
    for (std::size_t v = 0; v < x.size(); ++v) {
      if (sgn(row.coeffs[v]) != 0) lhs += row.coeffs[v] * x[v];
    }
    switch (row.rel) {
      case Relation::kLe: if (lhs > row.rhs) return false; break;
      case Relation::kGe: if (lhs < row.rhs) return false; break;
      case Relation::kEq: if (lhs != row.rhs) return false; break;
    }
  }
  return true;
}

LinearConstraintSystem LinearConstraintSystem::without_variables(const std::vector<std::size_t>& vars) const {
  std::vector<bool> drop(names_.size(), false);
  for (std::size_t v : vars) drop.at(v) = true;
  LinearConstraintSystem out;
  for (std::size_t v = 0; v < names_.size(); ++v) {
    if (!drop[v]) out.add_variable(names_[v], free_[v]);
  }
  for (const auto& row : rows_) {
    LinearConstraint c;
    c.rel = row.rel;
    c.rhs = row.rhs;
    for (std::size_t v = 0; v < names_.size(); ++v) {
      if (drop[v]) {
        if (sgn(row.coeffs[v]) != 0) throw std::invalid_argument("dropped variable " + names_[v] + " is still used");
      } else {
        c.coeffs.push_back(row.coeffs[v]);
      }
    }
    out.add(std::move(c));
  }
  return out;
}

std::string LinearConstraintSystem::constraint_string(const LinearConstraint& c) const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t v = 0; v < c.coeffs.size(); ++v) {
    const Rational& a = c.coeffs[v];
    if (sgn(a) == 0) continue;
    const Rational mag = abs(a);
    if (first) {
      if (sgn(a) < 0) os << "-";
    } else {
      os << (sgn(a) < 0 ? " - " : " + ");
    }
    first = false;
    if (mag != 1) os << to_string(mag) << " ";
    os << names_.at(v);
  }
  if (first) os << "0";
  os << " " << to_string(c.rel) << " " << to_string(c.rhs);
  return os.str();
}

std::vector<std::string> LinearConstraintSystem::constraint_strings() const {
  std::vector<std::string> out;
  for (const auto& row : rows_) out.push_back(constraint_string(row));
  return out;
}

std::string LinearConstraintSystem::to_text() const {
  std::string out;
  for (const auto& s : constraint_strings()) out += s + "\n";
  return out;
}

nlohmann::ordered_json LinearConstraintSystem::to_json() const {
  nlohmann::ordered_json doc;
  doc["variables"] = names_;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : rows_) {
    nlohmann::ordered_json r;
    std::vector<std::string> coeffs;
    for (const auto& a : row.coeffs) coeffs.push_back(to_string(a));
    r["coeffs"] = coeffs;
    r["rel"] = to_string(row.rel);
    r["const"] = to_string(row.rhs);
    r["text"] = constraint_string(row);
    rows.push_back(std::move(r));
  }
  doc["constraints"] = std::move(rows);
  return doc;
}

LinearConstraintSystem LinearConstraintSystem::from_json(const nlohmann::json& doc) {
  LinearConstraintSystem sys;
  for (const auto& name : doc.at("variables")) sys.add_variable(name.get<std::string>());
  for (const auto& r : doc.at("constraints")) {
    LinearConstraint c;
    for (const auto& a : r.at("coeffs")) c.coeffs.push_back(parse_rational(a.get<std::string>()));
    const auto rel = r.at("rel").get<std::string>();
    if (rel == "<=") c.rel = Relation::kLe;
    else if (rel == ">=") c.rel = Relation::kGe;
    else if (rel == "=") c.rel = Relation::kEq;
    else throw std::invalid_argument("unknown relation " + rel);
    c.rhs = parse_rational(r.at("const").get<std::string>());
    sys.add(std::move(c));
  }
  return sys;
}

LinearConstraint normalize_row(const LinearConstraint& c) {
  LinearConstraint out = c;
  if (out.rel == Relation::kGe) {
    for (auto& a : out.coeffs) a = -a;
    out.rhs = -out.rhs;
    out.rel = Relation::kLe;
  }
  BigInt lcm = 1;
  for (const auto& a : out.coeffs) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), a.get_den_mpz_t());
  mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), out.rhs.get_den_mpz_t());
  BigInt g = 0;
  for (auto& a : out.coeffs) {
    a *= lcm;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_num_mpz_t());
  }
  out.rhs *= lcm;
  const bool constant_row = g == 0;
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out.rhs.get_num_mpz_t());
  if (constant_row) {
    // 0 <= b: keep only its sign.
    out.rhs = sgn(out.rhs);
    return out;
  }
  if (g != 0 && g != 1) {
    for (auto& a : out.coeffs) a /= g;
    out.rhs /= g;
  }
  if (out.rel == Relation::kEq) {
    for (const auto& a : out.coeffs) {
      if (sgn(a) == 0) continue;
      if (sgn(a) < 0) {
        for (auto& x : out.coeffs) x = -x;
        out.rhs = -out.rhs;
      }
      break;
    }
  }
  return out;
}

namespace {

bool trivially_true(const LinearConstraintSystem& sys, const LinearConstraint& c) {
  for (std::size_t v = 0; v < c.coeffs.size(); ++v) {
    const int s = sgn(c.coeffs[v]);
    if (s > 0 || (s != 0 && sys.is_free(v))) return false;
  }
  return sgn(c.rhs) >= 0;
}

// Support size, then coefficients in decreasing lexicographic order, then constant.
bool canonical_less(const LinearConstraint& a, const LinearConstraint& b) {
  auto support = [](const LinearConstraint& c) {
    return std::count_if(c.coeffs.begin(), c.coeffs.end(), [](const Rational& x) { return sgn(x) != 0; });
  };
  const auto sa = support(a);
  const auto sb = support(b);
  if (sa != sb) return sa < sb;
  for (std::size_t v = 0; v < a.coeffs.size(); ++v) {
    if (a.coeffs[v] != b.coeffs[v]) return a.coeffs[v] > b.coeffs[v];
  }
  return a.rhs < b.rhs;
}

// a.x <= b implies a'.x <= b' on x >= 0 when a' <= a componentwise and b <= b'.
bool row_implies(const LinearConstraintSystem& sys, const LinearConstraint& a, const LinearConstraint& b) {
  if (a.rhs > b.rhs) return false;
  for (std::size_t v = 0; v < a.coeffs.size(); ++v) {
    if (sys.is_free(v)) {
      if (a.coeffs[v] != b.coeffs[v]) return false;
    } else if (b.coeffs[v] > a.coeffs[v]) {
      return false;
    }
  }
  return true;
}

}  // namespace

LinearConstraintSystem canonicalize(const LinearConstraintSystem& system, Pruning pruning) {
  LinearConstraintSystem base;
  for (std::size_t v = 0; v < system.num_variables(); ++v) base.add_variable(system.name(v), system.is_free(v));

  std::vector<LinearConstraint> rows;
  bool infeasible_constant = false;
  auto push = [&](const LinearConstraint& c) {
    LinearConstraint n = normalize_row(c);
    const bool constant_row =
        std::all_of(n.coeffs.begin(), n.coeffs.end(), [](const Rational& x) { return sgn(x) == 0; });
    if (constant_row && sgn(n.rhs) < 0) {
      infeasible_constant = true;
      return;
    }
    if (trivially_true(base, n)) return;
    rows.push_back(std::move(n));
  };
  for (const auto& c : system.constraints()) {
    if (c.rel == Relation::kEq) {
      push(LinearConstraint{c.coeffs, Relation::kLe, c.rhs});
      push(LinearConstraint{c.coeffs, Relation::kGe, c.rhs});
    } else {
      push(c);
    }
  }
  if (infeasible_constant) {
    base.add(std::vector<Rational>(system.num_variables()), Relation::kLe, Rational(-1));
    return base;
  }

  // Same coefficients: keep the smallest constant.
  std::map<std::vector<std::string>, std::size_t> seen;
  std::vector<LinearConstraint> unique;
  for (auto& r : rows) {
    std::vector<std::string> key;
    for (const auto& a : r.coeffs) key.push_back(a.get_str());
    auto it = seen.find(key);
    if (it == seen.end()) {
      seen.emplace(std::move(key), unique.size());
      unique.push_back(std::move(r));
    } else if (r.rhs < unique[it->second].rhs) {
      unique[it->second].rhs = r.rhs;
    }
  }
  std::sort(unique.begin(), unique.end(), canonical_less);

  if (pruning != Pruning::kDuplicate) {
    std::vector<bool> keep(unique.size(), true);
    for (std::size_t i = 0; i < unique.size(); ++i) {
      for (std::size_t j = 0; j < unique.size() && keep[i]; ++j) {
        if (i != j && keep[j] && row_implies(base, unique[j], unique[i])) keep[i] = false;
      }
    }
    std::vector<LinearConstraint> kept;
    for (std::size_t i = 0; i < unique.size(); ++i) {
      if (keep[i]) kept.push_back(std::move(unique[i]));
    }
    unique = std::move(kept);
  }
  for (auto& r : unique) base.add(std::move(r));
  if (pruning == Pruning::kLp) {
    if (!lp_feasible(base).feasible) {
      LinearConstraintSystem out;
      for (std::size_t v = 0; v < system.num_variables(); ++v) out.add_variable(system.name(v), system.is_free(v));
      out.add(std::vector<Rational>(system.num_variables()), Relation::kLe, Rational(-1));
      return out;
    }
    base = remove_redundant(base);
  }
  return base;
}

}  // namespace dof
