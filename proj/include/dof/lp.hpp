#ifndef DOF_LP_HPP
#define DOF_LP_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "dof/linear_system.hpp"
#include "dof/rational.hpp"

namespace dof {

struct FeasibilityVerdict {
  bool feasible = false;
  // Feasible: a point satisfying every constraint exactly.
  std::vector<Rational> witness;
  // Infeasible: one multiplier per constraint (>= 0 on "<=", <= 0 on ">=", free on
  // "="). The combined row has coefficients >= 0 (= 0 on free variables) and a
  // negative constant, which no point can satisfy.
  std::vector<Rational> certificate;
  std::string certificate_text;
};

FeasibilityVerdict lp_feasible(const LinearConstraintSystem& system);

enum class LpStatus { kOptimal, kUnbounded, kInfeasible };

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  Rational value;
  std::vector<Rational> x;
  std::vector<Rational> farkas;  // set when infeasible, as in FeasibilityVerdict
};

// Exact two-phase simplex over the rationals.
LpSolution solve_lp(const LinearConstraintSystem& system, const std::vector<Rational>& objective,
                    bool maximize = true);

class InfeasibleSystemError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MaximizeResult {
  bool unbounded = false;
  Rational value;
  std::vector<Rational> argmax;
};

// Throws InfeasibleSystemError if the system has no feasible point.
MaximizeResult maximize(const LinearConstraintSystem& system, const std::vector<Rational>& objective);
MaximizeResult maximize(const LinearConstraintSystem& system, std::size_t variable);
MaximizeResult maximize(const LinearConstraintSystem& system, const std::string& variable);

// True iff every feasible point of `system` satisfies `c` (vacuously true when
// `system` is infeasible).
bool implies(const LinearConstraintSystem& system, const LinearConstraint& c);

// Removes, in order, every constraint implied by the ones still kept.
LinearConstraintSystem remove_redundant(const LinearConstraintSystem& system);

// Human-readable rendering of an infeasibility certificate.
std::string describe_certificate(const LinearConstraintSystem& system, const std::vector<Rational>& multipliers);

}  // namespace dof

#endif  // DOF_LP_HPP
