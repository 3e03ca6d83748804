#include "dof/fourier_motzkin.hpp"

#include <algorithm>
#include <stdexcept>

namespace dof {

namespace {

constexpr std::size_t kIntermediateLpThreshold = 40;

LinearConstraintSystem eliminate_one(const LinearConstraintSystem& sys, std::size_t k) {
  std::vector<const LinearConstraint*> pos;
  std::vector<const LinearConstraint*> neg;
  LinearConstraintSystem out;
  for (std::size_t v = 0; v < sys.num_variables(); ++v) out.add_variable(sys.name(v), sys.is_free(v));
  for (const auto& row : sys.constraints()) {
    const int s = sgn(row.coeffs[k]);
    if (s > 0) pos.push_back(&row);
    else if (s < 0) neg.push_back(&row);
    else out.add(row);
  }
  LinearConstraint lower;
  if (!sys.is_free(k)) {
    lower.coeffs.assign(sys.num_variables(), Rational(0));
    lower.coeffs[k] = -1;
    lower.rel = Relation::kLe;
    lower.rhs = 0;
    neg.push_back(&lower);
  }
  for (const auto* p : pos) {
    for (const auto* n : neg) {
      const Rational wp = -n->coeffs[k];
      const Rational& wn = p->coeffs[k];
      LinearConstraint c;
      c.rel = Relation::kLe;
      c.coeffs.resize(sys.num_variables());
      for (std::size_t v = 0; v < sys.num_variables(); ++v) c.coeffs[v] = wp * p->coeffs[v] + wn * n->coeffs[v];
      c.coeffs[k] = 0;
      c.rhs = wp * p->rhs + wn * n->rhs;
      out.add(std::move(c));
    }
  }
  return out;
}

}  // namespace

LinearConstraintSystem fm_eliminate(const LinearConstraintSystem& system, const std::vector<std::size_t>& drop,
                                    Pruning pruning) {
  for (std::size_t v : drop) {
    if (v >= system.num_variables()) throw std::out_of_range("fm_eliminate: no such variable");
  }
  // Fourier-Motzkin works on "<=" rows; canonicalize() splits equalities.
  LinearConstraintSystem cur = canonicalize(system, Pruning::kDuplicate);
  std::vector<std::size_t> pending(drop.begin(), drop.end());
  std::sort(pending.begin(), pending.end());
  pending.erase(std::unique(pending.begin(), pending.end()), pending.end());
  while (!pending.empty()) {
    // Fewest new rows first; ties by variable index keep the result deterministic.
    std::size_t best = 0;
    long best_cost = 0;
    for (std::size_t i = 0; i < pending.size(); ++i) {
      long p = 0;
      long n = cur.is_free(pending[i]) ? 0 : 1;
      for (const auto& row : cur.constraints()) {
        const int s = sgn(row.coeffs[pending[i]]);
        if (s > 0) ++p;
        else if (s < 0) ++n;
      }
      const long cost = p * n - p - n;
      if (i == 0 || cost < best_cost) {
        best = i;
        best_cost = cost;
      }
    }
    const std::size_t k = pending[best];
    pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(best));
    cur = eliminate_one(cur, k);
    const bool large = cur.size() > kIntermediateLpThreshold && pruning == Pruning::kLp;
    cur = canonicalize(cur, large ? Pruning::kLp : (pruning == Pruning::kDuplicate ? Pruning::kDuplicate
                                                                                   : Pruning::kPairwise));
  }
  cur = canonicalize(cur, pruning);
  return cur.without_variables(drop);
}

LinearConstraintSystem fm_eliminate(const LinearConstraintSystem& system, const std::vector<std::string>& drop,
                                    Pruning pruning) {
  std::vector<std::size_t> idx;
  for (const auto& name : drop) {
    const auto i = system.index_of(name);
    if (!i) throw std::out_of_range("fm_eliminate: unknown variable " + name);
    idx.push_back(*i);
  }
  return fm_eliminate(system, idx, pruning);
}

}  // namespace dof
