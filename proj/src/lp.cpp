#include "dof/lp.hpp"

#include <algorithm>
#include <sstream>

namespace dof {

namespace {

enum class ColKind { kStructural, kSlack, kArtificial };

// Dense tableau: rows 0..m-1 are constraints, row m holds reduced costs. The last
// column is the right-hand side.
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : m_(rows), n_(cols), a_((rows + 1) * (cols + 1)) {}

  Rational& at(std::size_t i, std::size_t j) { return a_[i * (n_ + 1) + j]; }
  const Rational& at(std::size_t i, std::size_t j) const { return a_[i * (n_ + 1) + j]; }
  Rational& rhs(std::size_t i) { return at(i, n_); }
  std::size_t rows() const { return m_; }
  std::size_t cols() const { return n_; }

  void pivot(std::size_t r, std::size_t c) {
    const Rational inv = 1 / at(r, c);
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j <= n_; ++j) {
      if (sgn(at(r, j)) != 0) {
        at(r, j) *= inv;
        nz.push_back(j);
      }
    }
    for (std::size_t i = 0; i <= m_; ++i) {
      if (i == r || sgn(at(i, c)) == 0) continue;
      const Rational f = at(i, c);
      for (std::size_t j : nz) at(i, j) -= f * at(r, j);
    }
    basis[r] = c;
  }

  void erase_row(std::size_t r) {
    a_.erase(a_.begin() + static_cast<std::ptrdiff_t>(r * (n_ + 1)),
             a_.begin() + static_cast<std::ptrdiff_t>((r + 1) * (n_ + 1)));
    basis.erase(basis.begin() + static_cast<std::ptrdiff_t>(r));
    --m_;
  }

  // Reduced-cost row for cost vector c (minimization).
  void set_costs(const std::vector<Rational>& c) {
    for (std::size_t j = 0; j <= n_; ++j) at(m_, j) = j < n_ ? c[j] : Rational(0);
    for (std::size_t i = 0; i < m_; ++i) {
      const Rational& cb = c[basis[i]];
      if (sgn(cb) == 0) continue;
      for (std::size_t j = 0; j <= n_; ++j) {
        if (sgn(at(i, j)) != 0) at(m_, j) -= cb * at(i, j);
      }
    }
  }

  std::vector<std::size_t> basis;

 private:
  std::size_t m_;
  std::size_t n_;
  std::vector<Rational> a_;
};

enum class RunStatus { kOptimal, kUnbounded };

// Minimizes over the allowed columns. Dantzig pricing, switching to Bland's rule
// while pivots are degenerate so the method cannot cycle.
RunStatus run_simplex(Tableau& t, const std::vector<bool>& allowed) {
  bool bland = false;
  const std::size_t m = t.rows();
  while (true) {
    std::size_t enter = t.cols();
    for (std::size_t j = 0; j < t.cols(); ++j) {
      if (!allowed[j] || sgn(t.at(m, j)) >= 0) continue;
      if (enter == t.cols()) {
        enter = j;
        if (bland) break;
      } else if (t.at(m, j) < t.at(m, enter)) {
        enter = j;
      }
    }
    if (enter == t.cols()) return RunStatus::kOptimal;
    std::size_t leave = m;
    Rational best;
    for (std::size_t i = 0; i < m; ++i) {
      if (sgn(t.at(i, enter)) <= 0) continue;
      Rational ratio = t.rhs(i) / t.at(i, enter);
      if (leave == m || ratio < best || (ratio == best && t.basis[i] < t.basis[leave])) {
        leave = i;
        best = std::move(ratio);
      }
    }
    if (leave == m) return RunStatus::kUnbounded;
    bland = sgn(best) == 0;
    t.pivot(leave, enter);
  }
}

struct Standardized {
  Tableau tableau{0, 0};
  std::vector<ColKind> kinds;
  std::vector<std::size_t> pos_col;  // per original variable
  std::vector<long> neg_col;         // per original variable, -1 unless free
  std::vector<bool> flipped;         // per original row
  std::vector<std::size_t> init_col; // per original row: initial basic column
  std::size_t num_artificial = 0;
};

Standardized standardize(const LinearConstraintSystem& sys) {
  Standardized s;
  const std::size_t nv = sys.num_variables();
  const std::size_t m = sys.size();
  std::size_t ncols = 0;
  for (std::size_t v = 0; v < nv; ++v) {
    s.pos_col.push_back(ncols++);
    s.kinds.push_back(ColKind::kStructural);
    if (sys.is_free(v)) {
      s.neg_col.push_back(static_cast<long>(ncols++));
      s.kinds.push_back(ColKind::kStructural);
    } else {
      s.neg_col.push_back(-1);
    }
  }
  std::vector<Relation> rels(m);
  std::vector<long> slack(m, -1);
  std::vector<long> art(m, -1);
  s.flipped.assign(m, false);
  for (std::size_t r = 0; r < m; ++r) {
    Relation rel = sys[r].rel;
    const int sb = sgn(sys[r].rhs);
    if (sb < 0 || (sb == 0 && rel == Relation::kGe)) {
      s.flipped[r] = true;
      if (rel == Relation::kLe) rel = Relation::kGe;
      else if (rel == Relation::kGe) rel = Relation::kLe;
    }
    rels[r] = rel;
    if (rel != Relation::kEq) {
      slack[r] = static_cast<long>(ncols++);
      s.kinds.push_back(ColKind::kSlack);
    }
  }
  for (std::size_t r = 0; r < m; ++r) {
    if (rels[r] != Relation::kLe) {
      art[r] = static_cast<long>(ncols++);
      s.kinds.push_back(ColKind::kArtificial);
      ++s.num_artificial;
    }
  }
  s.tableau = Tableau(m, ncols);
  auto& t = s.tableau;
  t.basis.resize(m);
  s.init_col.resize(m);
  for (std::size_t r = 0; r < m; ++r) {
    const Rational sign = s.flipped[r] ? -1 : 1;
    for (std::size_t v = 0; v < nv; ++v) {
      const Rational& c = sys[r].coeffs[v];
      if (sgn(c) == 0) continue;
      t.at(r, s.pos_col[v]) = sign * c;
      if (s.neg_col[v] >= 0) t.at(r, static_cast<std::size_t>(s.neg_col[v])) = -sign * c;
    }
    t.rhs(r) = sign * sys[r].rhs;
    if (slack[r] >= 0) t.at(r, static_cast<std::size_t>(slack[r])) = rels[r] == Relation::kLe ? 1 : -1;
    if (art[r] >= 0) t.at(r, static_cast<std::size_t>(art[r])) = 1;
    s.init_col[r] = static_cast<std::size_t>(rels[r] == Relation::kLe ? slack[r] : art[r]);
    t.basis[r] = s.init_col[r];
  }
  return s;
}

std::vector<Rational> combine(const LinearConstraintSystem& sys, const std::vector<Rational>& y, Rational& constant) {
  std::vector<Rational> row(sys.num_variables());
  constant = 0;
  for (std::size_t r = 0; r < sys.size(); ++r) {
    if (sgn(y[r]) == 0) continue;
    for (std::size_t v = 0; v < row.size(); ++v) row[v] += y[r] * sys[r].coeffs[v];
    constant += y[r] * sys[r].rhs;
  }
  return row;
}

void check_certificate(const LinearConstraintSystem& sys, const std::vector<Rational>& y) {
  for (std::size_t r = 0; r < sys.size(); ++r) {
    if ((sys[r].rel == Relation::kLe && sgn(y[r]) < 0) || (sys[r].rel == Relation::kGe && sgn(y[r]) > 0)) {
      throw std::logic_error("simplex produced a certificate with a wrong multiplier sign");
    }
  }
  Rational constant;
  const auto row = combine(sys, y, constant);
  for (std::size_t v = 0; v < row.size(); ++v) {
    const int s = sgn(row[v]);
    if (s < 0 || (s != 0 && sys.is_free(v))) throw std::logic_error("simplex produced an invalid certificate");
  }
  if (sgn(constant) >= 0) throw std::logic_error("simplex produced an invalid certificate");
}

}  // namespace

LpSolution solve_lp(const LinearConstraintSystem& system, const std::vector<Rational>& objective, bool maximize) {
  if (objective.size() != system.num_variables()) throw std::invalid_argument("objective arity mismatch");
  Standardized s = standardize(system);
  Tableau& t = s.tableau;
  const std::size_t ncols = t.cols();
  LpSolution out;

  if (s.num_artificial > 0) {
    std::vector<Rational> c1(ncols);
    for (std::size_t j = 0; j < ncols; ++j) {
      if (s.kinds[j] == ColKind::kArtificial) c1[j] = 1;
    }
    t.set_costs(c1);
    run_simplex(t, std::vector<bool>(ncols, true));
    Rational w = -t.rhs(t.rows());
    if (sgn(w) > 0) {
      out.status = LpStatus::kInfeasible;
      out.farkas.resize(system.size());
      for (std::size_t r = 0; r < system.size(); ++r) {
        Rational pi;
        for (std::size_t i = 0; i < t.rows(); ++i) pi += c1[t.basis[i]] * t.at(i, s.init_col[r]);
        out.farkas[r] = s.flipped[r] ? pi : -pi;
      }
      check_certificate(system, out.farkas);
      return out;
    }
    for (std::size_t i = 0; i < t.rows();) {
      if (s.kinds[t.basis[i]] != ColKind::kArtificial) {
        ++i;
        continue;
      }
      std::size_t col = ncols;
      for (std::size_t j = 0; j < ncols; ++j) {
        if (s.kinds[j] != ColKind::kArtificial && sgn(t.at(i, j)) != 0) {
          col = j;
          break;
        }
      }
      if (col == ncols) {
        t.erase_row(i);
      } else {
        t.pivot(i, col);
        ++i;
      }
    }
  }

  std::vector<Rational> c2(ncols);
  for (std::size_t v = 0; v < objective.size(); ++v) {
    const Rational c = maximize ? Rational(-objective[v]) : objective[v];
    c2[s.pos_col[v]] = c;
    if (s.neg_col[v] >= 0) c2[static_cast<std::size_t>(s.neg_col[v])] = -c;
  }
  t.set_costs(c2);
  std::vector<bool> allowed(ncols);
  for (std::size_t j = 0; j < ncols; ++j) allowed[j] = s.kinds[j] != ColKind::kArtificial;
  const RunStatus st = run_simplex(t, allowed);

  std::vector<Rational> col_value(ncols);
  for (std::size_t i = 0; i < t.rows(); ++i) col_value[t.basis[i]] = t.rhs(i);
  out.x.resize(system.num_variables());
  for (std::size_t v = 0; v < out.x.size(); ++v) {
    out.x[v] = col_value[s.pos_col[v]];
    if (s.neg_col[v] >= 0) out.x[v] -= col_value[static_cast<std::size_t>(s.neg_col[v])];
  }
  if (!system.satisfied_by(out.x)) throw std::logic_error("simplex produced a point violating the system");
  if (st == RunStatus::kUnbounded) {
    out.status = LpStatus::kUnbounded;
    return out;
  }
  out.status = LpStatus::kOptimal;
  for (std::size_t v = 0; v < objective.size(); ++v) out.value += objective[v] * out.x[v];
  return out;
}

FeasibilityVerdict lp_feasible(const LinearConstraintSystem& system) {
  FeasibilityVerdict v;
  const LpSolution sol = solve_lp(system, std::vector<Rational>(system.num_variables()), false);
  if (sol.status == LpStatus::kInfeasible) {
    v.feasible = false;
    v.certificate = sol.farkas;
    v.certificate_text = describe_certificate(system, sol.farkas);
  } else {
    v.feasible = true;
    v.witness = sol.x;
  }
  return v;
}

MaximizeResult maximize(const LinearConstraintSystem& system, const std::vector<Rational>& objective) {
  const LpSolution sol = solve_lp(system, objective, true);
  if (sol.status == LpStatus::kInfeasible) throw InfeasibleSystemError("maximize: the constraint system is infeasible");
  MaximizeResult r;
  r.unbounded = sol.status == LpStatus::kUnbounded;
  r.value = sol.value;
  r.argmax = sol.x;
  return r;
}

MaximizeResult maximize(const LinearConstraintSystem& system, std::size_t variable) {
  if (variable >= system.num_variables()) throw std::out_of_range("maximize: no such variable");
  std::vector<Rational> c(system.num_variables());
  c[variable] = 1;
  return maximize(system, c);
}

MaximizeResult maximize(const LinearConstraintSystem& system, const std::string& variable) {
  const auto idx = system.index_of(variable);
  if (!idx) throw std::out_of_range("maximize: unknown variable " + variable);
  return maximize(system, *idx);
}

bool implies(const LinearConstraintSystem& system, const LinearConstraint& c) {
  auto test_le = [&](const std::vector<Rational>& a, const Rational& b) {
    const LpSolution sol = solve_lp(system, a, true);
    if (sol.status == LpStatus::kInfeasible) return true;
    if (sol.status == LpStatus::kUnbounded) return false;
    return sol.value <= b;
  };
  std::vector<Rational> neg(c.coeffs.size());
  for (std::size_t i = 0; i < neg.size(); ++i) neg[i] = -c.coeffs[i];
  switch (c.rel) {
    case Relation::kLe: return test_le(c.coeffs, c.rhs);
    case Relation::kGe: return test_le(neg, -c.rhs);
    case Relation::kEq: return test_le(c.coeffs, c.rhs) && test_le(neg, -c.rhs);
  }
  return false;
}

LinearConstraintSystem remove_redundant(const LinearConstraintSystem& system) {
  auto empty_copy = [&] {
    LinearConstraintSystem out;
    for (std::size_t v = 0; v < system.num_variables(); ++v) out.add_variable(system.name(v), system.is_free(v));
    return out;
  };
  std::vector<bool> keep(system.size(), true);
  for (std::size_t r = 0; r < system.size(); ++r) {
    LinearConstraintSystem rest = empty_copy();
    for (std::size_t q = 0; q < system.size(); ++q) {
      if (q != r && keep[q]) rest.add(system[q]);
    }
    if (implies(rest, system[r])) keep[r] = false;
  }
  LinearConstraintSystem out = empty_copy();
  for (std::size_t r = 0; r < system.size(); ++r) {
    if (keep[r]) out.add(system[r]);
  }
  return out;
}

std::string describe_certificate(const LinearConstraintSystem& system, const std::vector<Rational>& multipliers) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t r = 0; r < system.size() && r < multipliers.size(); ++r) {
    if (sgn(multipliers[r]) == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << to_string(multipliers[r]) << ") * [" << system.constraint_string(system[r]) << "]";
  }
  Rational constant;
  const auto row = combine(system, multipliers, constant);
  LinearConstraint combined{row, Relation::kLe, constant};
  os << "  =>  " << system.constraint_string(combined) << ", impossible with the sign restrictions";
  return os.str();
}

}  // namespace dof
