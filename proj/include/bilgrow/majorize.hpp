#pragma once

#include "bilgrow/scalar.hpp"

#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace bilgrow {

/// Sparse convex-or-less combination: (index into the basis, weight > 0).
using Weights = std::vector<std::pair<std::size_t, Scalar>>;

/// Weights mu >= 0 with sum(mu) <= 1 and v <= sum mu_t basis_t componentwise,
/// or nullopt when none exist. Decided by an exact rational LP.
std::optional<Weights> majorization_weights(const Vector& v, std::span<const Vector> basis);

bool is_majorized(const Vector& v, std::span<const Vector> basis);

/// sum mu_t basis_t.
Vector combine(const Weights& w, std::span<const Vector> basis, std::size_t dim);

/// True iff p is a convex combination of `points` (exact LP feasibility).
bool in_convex_hull(const Vector& p, std::span<const Vector> points);

/// Number of extreme points of the convex hull of a set of distinct points.
/// d = 1 and d = 2 use direct exact logic; d >= 3 tests each point by LP.
std::size_t hull_vertex_count(std::span<const Vector> points);

}  // namespace bilgrow
