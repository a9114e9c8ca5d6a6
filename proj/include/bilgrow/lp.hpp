#pragma once

#include "bilgrow/scalar.hpp"

#include <optional>
#include <vector>

namespace bilgrow::lp {

/// maximize c.x  subject to  A x = b,  x >= 0,  with b >= 0.
struct Problem {
  std::vector<Vector> a;  ///< rows
  Vector b;
  Vector c;
};

enum class Status { optimal, infeasible, unbounded, target_reached };

struct Solution {
  Status status = Status::infeasible;
  Vector x;
  Scalar objective;
};

/// Two-phase dense simplex over exact rationals with Bland's rule, so it
/// always terminates. With `stop_at`, returns as soon as a feasible basis
/// reaches that objective value.
Solution maximize(const Problem& problem, const std::optional<Scalar>& stop_at = std::nullopt);

}  // namespace bilgrow::lp
