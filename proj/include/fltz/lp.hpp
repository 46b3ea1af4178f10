#pragma once
// Exact feasibility over Q: dense two-phase simplex with Bland's rule.

#include "fltz/rational.hpp"

#include <optional>
#include <vector>

namespace fltz {

// A point x (free variables) with A x >= b, or nullopt if none exists.
std::optional<QVec> feasible_point(const std::vector<QVec>& A, const QVec& b, int nvars);

// v in cone(gens)?
bool cone_contains(const std::vector<QVec>& gens, const QVec& v);
// v in conv(points)?
bool hull_contains(const std::vector<QVec>& points, const QVec& v);

}  // namespace fltz
