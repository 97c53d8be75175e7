#pragma once

#include <optional>
#include <vector>

#include "pb/exact_scalar.hpp"

namespace pb {

using Matrix = std::vector<std::vector<ExactScalar>>;

// Solves A x = b exactly by Gaussian elimination with first-nonzero pivoting.
// Returns nullopt when A is singular.
std::optional<std::vector<ExactScalar>> solve_linear(Matrix A, std::vector<ExactScalar> b);

}  // namespace pb
