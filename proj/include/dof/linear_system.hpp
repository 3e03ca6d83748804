#ifndef DOF_LINEAR_SYSTEM_HPP
#define DOF_LINEAR_SYSTEM_HPP

#include <json.hpp>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dof/rational.hpp"

namespace dof {

enum class Relation { kLe, kGe, kEq };

const char* to_string(Relation rel);  // "<=", ">=", "="

struct LinearConstraint {
  std::vector<Rational> coeffs;
  Relation rel = Relation::kLe;
  Rational rhs;

  friend bool operator==(const LinearConstraint&, const LinearConstraint&) = default;
};

// Variables are >= 0 unless marked free.
class LinearConstraintSystem {
 public:
  LinearConstraintSystem() = default;
  explicit LinearConstraintSystem(std::vector<std::string> variables);

  std::size_t add_variable(std::string name, bool is_free = false);
  std::size_t num_variables() const { return names_.size(); }
  const std::vector<std::string>& variables() const { return names_; }
  const std::string& name(std::size_t var) const { return names_.at(var); }
  bool is_free(std::size_t var) const { return free_.at(var); }
  std::optional<std::size_t> index_of(const std::string& name) const;

  // Throws std::invalid_argument on arity mismatch.
  void add(LinearConstraint c);
  void add(std::vector<Rational> coeffs, Relation rel, Rational rhs);

  std::size_t size() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }
  const LinearConstraint& operator[](std::size_t i) const { return rows_[i]; }
  const std::vector<LinearConstraint>& constraints() const& { return rows_; }
  std::vector<LinearConstraint> constraints() && { return std::move(rows_); }

  // Exact check of every constraint and of the sign restrictions.
  bool satisfied_by(const std::vector<Rational>& x) const;

  // Drops the listed variables, which must have zero coefficients everywhere.
  LinearConstraintSystem without_variables(const std::vector<std::size_t>& vars) const;

  // One constraint per line, e.g. "d_1_1 + d_2_1 <= 4".
  std::string to_text() const;
  std::vector<std::string> constraint_strings() const;
  std::string constraint_string(const LinearConstraint& c) const;

  // {"variables": [...], "constraints": [{"coeffs": ["p/q", ...], "rel": "<=", "const": "p/q"}]}
  nlohmann::ordered_json to_json() const;
  static LinearConstraintSystem from_json(const nlohmann::json& doc);

  friend bool operator==(const LinearConstraintSystem&, const LinearConstraintSystem&) = default;

 private:
  std::vector<std::string> names_;
  std::vector<bool> free_;
  std::vector<LinearConstraint> rows_;
};

// Drop rules applied by canonicalize().
enum class Pruning {
  kDuplicate,  // identical coefficient vectors: keep the tightest constant
  kPairwise,   // also a.x <= b implied by one other row on the nonnegative orthant
  kLp,         // also every row implied by the remaining rows (exact LP test)
};

// Integer coprime coefficients (gcd taken with the constant), "<=" only ("=" is
// split), trivially satisfied rows removed, sorted by support size and then by
// coefficient tuple in decreasing order. An infeasible constant row is kept as
// "0 <= -1".
LinearConstraintSystem canonicalize(const LinearConstraintSystem& system, Pruning pruning = Pruning::kDuplicate);

// Single-row normalization used by canonicalize(); also scales "=" rows.
LinearConstraint normalize_row(const LinearConstraint& c);

}  // namespace dof

#endif  // DOF_LINEAR_SYSTEM_HPP
