#ifndef DOF_FOURIER_MOTZKIN_HPP
#define DOF_FOURIER_MOTZKIN_HPP

#include <string>
#include <vector>

#include "dof/linear_system.hpp"

namespace dof {

// Projects out the `drop` variables; the result keeps only the other variables, in
// their original order, in canonical form.
LinearConstraintSystem fm_eliminate(const LinearConstraintSystem& system, const std::vector<std::size_t>& drop,
                                    Pruning pruning = Pruning::kLp);
LinearConstraintSystem fm_eliminate(const LinearConstraintSystem& system, const std::vector<std::string>& drop,
                                    Pruning pruning = Pruning::kLp);

}  // namespace dof

#endif  // DOF_FOURIER_MOTZKIN_HPP
