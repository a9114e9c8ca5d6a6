#include "bilgrow/lp.hpp"

#include <limits>

namespace bilgrow::lp {

namespace {

class Tableau {
public:
  Tableau(const Problem& p) : m_(p.a.size()), n_(p.c.size()) {
    if (p.b.size() != m_) throw InputError("lp: row count and rhs length differ");
    for (const auto& row : p.a)
      if (row.size() != n_) throw InputError("lp: ragged constraint matrix");
    for (const auto& bi : p.b)
      if (bi < 0) throw InputError("lp: negative right-hand side");

    // Reuse unit columns as the starting basis; add artificials elsewhere.
    basis_.assign(m_, npos);
    for (std::size_t j = 0; j < n_; ++j) {
      std::size_t hit = npos;
      bool unit = true;
      for (std::size_t r = 0; r < m_ && unit; ++r) {
        if (p.a[r][j] == 0) continue;
        if (p.a[r][j] == 1 && hit == npos)
          hit = r;
        else
          unit = false;
      }
      if (unit && hit != npos && basis_[hit] == npos) basis_[hit] = j;
    }
    std::size_t artificials = 0;
    for (auto j : basis_)
      if (j == npos) ++artificials;
    cols_ = n_ + artificials;
    rows_.assign(m_, Vector(cols_ + 1));
    std::size_t next = n_;
    for (std::size_t r = 0; r < m_; ++r) {
      for (std::size_t j = 0; j < n_; ++j) rows_[r][j] = p.a[r][j];
      rows_[r][cols_] = p.b[r];
      if (basis_[r] == npos) {
        rows_[r][next] = 1;
        basis_[r] = next++;
      }
    }
  }

  bool has_artificials() const { return cols_ > n_; }

  // Runs the simplex on `cost` (length cols_), restricted to columns < `usable`.
  Status run(const Vector& cost, std::size_t usable, const std::optional<Scalar>& stop_at) {
    Vector reduced(cols_ + 1);
    for (std::size_t j = 0; j <= cols_; ++j) {
      Scalar d = j < cols_ ? cost[j] : Scalar(0);
      for (std::size_t r = 0; r < m_; ++r)
        if (cost[basis_[r]] != 0 && rows_[r][j] != 0) d -= cost[basis_[r]] * rows_[r][j];
      reduced[j] = d;
    }
    // reduced[cols_] holds -objective
    while (true) {
      if (stop_at && -reduced[cols_] >= *stop_at) return Status::target_reached;
      std::size_t enter = npos;
      for (std::size_t j = 0; j < usable; ++j)
        if (reduced[j] > 0) {
          enter = j;
          break;
        }
      if (enter == npos) return Status::optimal;
      std::size_t leave = npos;
      Scalar best;
      for (std::size_t r = 0; r < m_; ++r) {
        if (rows_[r][enter] <= 0) continue;
        Scalar ratio = rows_[r][cols_] / rows_[r][enter];
        if (leave == npos || ratio < best || (ratio == best && basis_[r] < basis_[leave])) {
          leave = r;
          best = ratio;
        }
      }
      if (leave == npos) return Status::unbounded;
      pivot(leave, enter, reduced);
    }
  }

  // Pivots basic artificials out where possible; drops redundant rows.
  void expel_artificials() {
    for (std::size_t r = 0; r < m_;) {
      if (basis_[r] < n_) {
        ++r;
        continue;
      }
      std::size_t enter = npos;
      for (std::size_t j = 0; j < n_; ++j)
        if (rows_[r][j] != 0) {
          enter = j;
          break;
        }
      if (enter == npos) {
        rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(r));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
        --m_;
        continue;
      }
      Vector dummy(cols_ + 1);
      pivot(r, enter, dummy);
      ++r;
    }
  }

  Vector primal() const {
    Vector x(n_);
    for (std::size_t r = 0; r < m_; ++r)
      if (basis_[r] < n_) x[basis_[r]] = rows_[r][cols_];
    return x;
  }

  std::size_t cols() const { return cols_; }
  std::size_t structural() const { return n_; }

private:
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  void pivot(std::size_t pr, std::size_t pc, Vector& reduced) {
    Vector& prow = rows_[pr];
    Scalar inv = 1 / prow[pc];
    for (auto& x : prow)
      if (x != 0) x *= inv;
    Scalar f;
    for (std::size_t r = 0; r < m_; ++r) {
      if (r == pr || rows_[r][pc] == 0) continue;
      f = rows_[r][pc];
      for (std::size_t j = 0; j <= cols_; ++j)
        if (prow[j] != 0) rows_[r][j] -= f * prow[j];
    }
    if (reduced[pc] != 0) {
      f = reduced[pc];
      for (std::size_t j = 0; j <= cols_; ++j)
        if (prow[j] != 0) reduced[j] -= f * prow[j];
    }
    basis_[pr] = pc;
  }

  std::size_t m_, n_, cols_ = 0;
  std::vector<Vector> rows_;
  std::vector<std::size_t> basis_;
};

}  // namespace

Solution maximize(const Problem& problem, const std::optional<Scalar>& stop_at) {
  Tableau t(problem);
  Solution sol;
  if (t.has_artificials()) {
    Vector phase1(t.cols());
    for (std::size_t j = t.structural(); j < t.cols(); ++j) phase1[j] = -1;
    t.run(phase1, t.cols(), std::nullopt);
    // artificials carry the residual b - A x of the structural part
    Scalar art;
    {
      Vector x = t.primal();
      for (std::size_t r = 0; r < problem.a.size(); ++r) {
        Scalar lhs;
        for (std::size_t j = 0; j < x.size(); ++j)
          if (x[j] != 0 && problem.a[r][j] != 0) lhs += problem.a[r][j] * x[j];
        art += problem.b[r] - lhs;
      }
    }
    if (art != 0) {
      sol.status = Status::infeasible;
      return sol;
    }
    t.expel_artificials();
  }
  Vector cost(t.cols());
  for (std::size_t j = 0; j < problem.c.size(); ++j) cost[j] = problem.c[j];
  sol.status = t.run(cost, t.structural(), stop_at);
  sol.x = t.primal();
  for (std::size_t j = 0; j < sol.x.size(); ++j) sol.objective += problem.c[j] * sol.x[j];
  return sol;
}

}  // namespace bilgrow::lp
