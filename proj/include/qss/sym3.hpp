#pragma once

#include <array>

#include "qss/numeric.hpp"

namespace qss {

// Eigenvalues of a real symmetric 3x3 matrix, descending order.
// Cyclic Jacobi rotations; converges to off-diagonal mass below
// policy.jacobi_convergence.
std::array<double, 3> sym3_eigenvalues(const std::array<std::array<double, 3>, 3>& m,
                                       const NumericPolicy& policy = {});

}  // namespace qss
