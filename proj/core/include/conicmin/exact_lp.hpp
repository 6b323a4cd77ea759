#pragma once

#include <optional>

#include "conicmin/exact.hpp"

namespace conicmin {

// Finds lambda >= 0 with A * lambda = b, exactly, by a phase-one simplex with
// Bland's rule. Returns nullopt when no such lambda exists.
std::optional<Vector> nonnegative_solution(const Matrix& a, const Vector& b);

}  // namespace conicmin
