#include "bilgrow/majorize.hpp"

#include "bilgrow/lp.hpp"

#include <algorithm>

namespace bilgrow {

std::optional<Weights> majorization_weights(const Vector& v, std::span<const Vector> basis) {
  const std::size_t d = v.size();
  std::vector<std::size_t> active;
  for (std::size_t k = 0; k < d; ++k)
    if (v[k] != 0) active.push_back(k);
  if (active.empty()) return Weights{};
  if (basis.empty()) return std::nullopt;

  for (std::size_t t = 0; t < basis.size(); ++t)
    if (leq(v, basis[t])) return Weights{{t, Scalar(1)}};
  for (auto k : active) {
    bool reachable = false;
    for (const auto& b : basis)
      if (b[k] >= v[k]) {
        reachable = true;
        break;
      }
    if (!reachable) return std::nullopt;
  }

  // maximize tau:  tau v_k - sum mu_t b_tk + s_k = 0,  sum mu_t + s = 1
  const std::size_t T = basis.size(), r = active.size();
  const std::size_t cols = 1 + T + r + 1;
  lp::Problem p;
  p.a.assign(r + 1, Vector(cols));
  p.b.assign(r + 1, Scalar(0));
  p.c.assign(cols, Scalar(0));
  p.c[0] = 1;
  for (std::size_t row = 0; row < r; ++row) {
    const auto k = active[row];
    p.a[row][0] = v[k];
    for (std::size_t t = 0; t < T; ++t) p.a[row][1 + t] = -basis[t][k];
    p.a[row][1 + T + row] = 1;
  }
  for (std::size_t t = 0; t < T; ++t) p.a[r][1 + t] = 1;
  p.a[r][cols - 1] = 1;
  p.b[r] = 1;

  auto sol = lp::maximize(p, Scalar(1));
  if (sol.status == lp::Status::infeasible || sol.objective < 1) return std::nullopt;
  Weights w;
  for (std::size_t t = 0; t < T; ++t)
    if (sol.x[1 + t] != 0) w.emplace_back(t, sol.x[1 + t]);
  return w;
}

bool is_majorized(const Vector& v, std::span<const Vector> basis) {
  return majorization_weights(v, basis).has_value();
}

Vector combine(const Weights& w, std::span<const Vector> basis, std::size_t dim) {
  Vector out(dim);
  for (const auto& [t, mu] : w)
    for (std::size_t k = 0; k < dim; ++k)
      if (basis[t][k] != 0) out[k] += mu * basis[t][k];
  return out;
}

bool in_convex_hull(const Vector& p, std::span<const Vector> points) {
  if (points.empty()) return false;
  const std::size_t d = p.size(), T = points.size();
  lp::Problem prob;
  prob.a.assign(d + 1, Vector(T));
  prob.b.assign(d + 1, Scalar(0));
  prob.c.assign(T, Scalar(0));
  for (std::size_t k = 0; k < d; ++k) {
    for (std::size_t t = 0; t < T; ++t) prob.a[k][t] = points[t][k];
    prob.b[k] = p[k];
  }
  for (std::size_t t = 0; t < T; ++t) prob.a[d][t] = 1;
  prob.b[d] = 1;
  return lp::maximize(prob).status != lp::Status::infeasible;
}

namespace {

Scalar cross(const Vector& o, const Vector& a, const Vector& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

std::size_t planar_vertex_count(std::vector<Vector> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() <= 2) return pts.size();
  std::vector<const Vector*> hull;
  auto chain = [&](auto begin, auto end) {
    std::size_t base = hull.size();
    for (auto it = begin; it != end; ++it) {
      while (hull.size() >= base + 2 && cross(*hull[hull.size() - 2], *hull.back(), *it) <= 0) hull.pop_back();
      hull.push_back(&*it);
    }
    hull.pop_back();
  };
  chain(pts.begin(), pts.end());
  chain(pts.rbegin(), pts.rend());
  // all points collinear collapses to the two endpoints
  return std::max<std::size_t>(hull.size(), 2);
}

}  // namespace

std::size_t hull_vertex_count(std::span<const Vector> points) {
  if (points.empty()) return 0;
  const std::size_t d = points.front().size();
  if (d == 1) {
    auto [lo, hi] = std::minmax_element(points.begin(), points.end(),
                                        [](const Vector& a, const Vector& b) { return a[0] < b[0]; });
    return (*lo)[0] == (*hi)[0] ? 1 : 2;
  }
  if (d == 2) return planar_vertex_count(std::vector<Vector>(points.begin(), points.end()));

  std::size_t count = 0;
  std::vector<Vector> others;
  for (std::size_t t = 0; t < points.size(); ++t) {
    others.clear();
    for (std::size_t u = 0; u < points.size(); ++u)
      if (u != t) others.push_back(points[u]);
    if (!in_convex_hull(points[t], others)) ++count;
  }
  return count;
}

}  // namespace bilgrow
