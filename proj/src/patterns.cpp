#include "bilgrow/patterns.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace bilgrow {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix operator*(const Matrix& x, const Matrix& y) {
  if (x.n_ != y.n_) throw InputError("matrix product: dimension mismatch");
  const std::size_t n = x.n_;
  Matrix z(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k < n; ++k) {
      const Scalar& a = x(r, k);
      if (a == 0) continue;
      for (std::size_t c = 0; c < n; ++c)
        if (y(k, c) != 0) z(r, c) += a * y(k, c);
    }
  return z;
}

Vector Matrix::apply(const Vector& v) const {
  Vector out(n_);
  for (std::size_t r = 0; r < n_; ++r)
    for (std::size_t c = 0; c < n_; ++c)
      if ((*this)(r, c) != 0 && v[c] != 0) out[r] += (*this)(r, c) * v[c];
  return out;
}

std::vector<BranchStep> PatternMatrix::steps() const {
  std::vector<BranchStep> out;
  for (auto node = witness; node; node = node->next) out.push_back(*node->step);
  return out;
}

std::string PatternMatrix::text() const {
  std::string inner = "x";
  auto all = steps();
  for (auto it = all.rbegin(); it != all.rend(); ++it)
    inner = it->marked == Side::left ? "(" + inner + " " + it->tree + ")" : "(" + it->tree + " " + inner + ")";
  return inner;
}

Matrix branch_matrix(const BilinearMap& map, const Vector& branch, Side marked) {
  if (branch.size() != map.dim()) throw InputError("branch_matrix: vector length differs from dimension");
  Matrix m(map.dim());
  for (const auto& t : map.terms()) {
    if (marked == Side::left) {
      if (branch[t.j] != 0) m(t.k, t.i) += t.value * branch[t.j];
    } else {
      if (branch[t.i] != 0) m(t.k, t.j) += t.value * branch[t.i];
    }
  }
  return m;
}

namespace {

PatternMatrix single_step(const BilinearMap& map, BranchStep step) {
  PatternMatrix p;
  p.matrix = branch_matrix(map, step.branch, step.marked);
  p.leaves = step.leaves;
  p.witness = std::make_shared<const WitnessNode>(
      WitnessNode{std::make_shared<const BranchStep>(std::move(step)), nullptr});
  return p;
}

std::shared_ptr<const WitnessNode> concat(const std::shared_ptr<const WitnessNode>& a,
                                          const std::shared_ptr<const WitnessNode>& b) {
  if (!a) return b;
  return std::make_shared<const WitnessNode>(WitnessNode{a->step, concat(a->next, b)});
}

}  // namespace

std::vector<PatternMatrix> branch_matrices(const System& system, const FrontierTable& table, int m) {
  const auto& lvl = table.level(m);
  std::vector<PatternMatrix> out;
  for (Side side : {Side::left, Side::right})
    for (std::size_t t = 0; t < lvl.vectors.size(); ++t)
      out.push_back(single_step(system.map, {side, lvl.vectors[t], m, table.tree_text(m, t)}));
  return out;
}

PatternMatrix compose(const PatternMatrix& outer, const PatternMatrix& inner) {
  if (outer.matrix.size() != inner.matrix.size()) throw InputError("compose: dimension mismatch");
  PatternMatrix p;
  p.matrix = outer.matrix * inner.matrix;
  p.leaves = outer.leaves + inner.leaves;
  p.witness = concat(outer.witness, inner.witness);
  return p;
}

Matrix replay(const System& system, const std::vector<BranchStep>& steps) {
  const std::size_t d = system.dim();
  if (steps.empty()) throw InputError("replay: a pattern has at least one step");
  Matrix total;
  for (std::size_t s = 0; s < steps.size(); ++s) {
    Matrix m(d);
    for (std::size_t i = 0; i < d; ++i) {
      Vector unit(d);
      unit[i] = 1;
      Vector col = steps[s].marked == Side::left ? star(system.map, unit, steps[s].branch)
                                                 : star(system.map, steps[s].branch, unit);
      for (std::size_t k = 0; k < d; ++k) m(k, i) = col[k];
    }
    total = s == 0 ? m : total * m;
  }
  return total;
}

Vector evaluate_pattern(const System& system, const std::vector<BranchStep>& steps) {
  Vector value = system.seed;
  for (auto it = steps.rbegin(); it != steps.rend(); ++it)
    value = it->marked == Side::left ? star(system.map, value, it->branch) : star(system.map, it->branch, value);
  return value;
}

PatternMatrix pattern_for_path(const System& system, const std::vector<std::size_t>& path) {
  if (path.size() < 2) throw InputError("pattern_for_path: a pattern needs at least one edge");
  const auto& seed = system.seed;
  std::optional<PatternMatrix> acc;
  for (std::size_t e = 0; e + 1 < path.size(); ++e) {
    const std::size_t k = path[e], i = path[e + 1];
    if (k >= system.dim() || i >= system.dim()) throw InputError("pattern_for_path: vertex out of range");
    Scalar left, right;
    for (const auto& t : system.map.terms()) {
      if (t.k != k) continue;
      if (t.i == i) left += t.value * seed[t.j];
      if (t.j == i) right += t.value * seed[t.i];
    }
    if (left == 0 && right == 0) {
      std::ostringstream os;
      os << "pattern_for_path: no edge " << k + 1 << " -> " << i + 1 << " supported by the seed";
      throw InputError(os.str());
    }
    auto step = single_step(system.map, {left > 0 ? Side::left : Side::right, seed, 1, "s"});
    acc = acc ? compose(*acc, step) : step;
  }
  return *acc;
}

RootValue RootValue::make(Scalar base, unsigned long root) {
  RootValue v;
  v.scaled_floor = root_floor_scaled(base, root, kRootDigits);
  v.base = std::move(base);
  v.root = root;
  return v;
}

Scalar RootValue::lower_rational() const {
  Scalar r(scaled_floor, pow10(kRootDigits));
  r.canonicalize();
  return r;
}

std::string RootValue::decimal_down(int digits) const { return root_decimal(base, root, digits, Rounding::down); }
std::string RootValue::decimal_up(int digits) const { return root_decimal(base, root, digits, Rounding::up); }

bool better_bound(const DiagonalBound& a, const DiagonalBound& b) {
  if (a.value.scaled_floor != b.value.scaled_floor) return a.value.scaled_floor > b.value.scaled_floor;
  if (a.value.root != b.value.root) return a.value.root < b.value.root;
  return a.pattern.text() < b.pattern.text();
}

namespace {

std::optional<DiagonalBound> best_diagonal(const System& system, const PatternMatrix& p) {
  std::optional<DiagonalBound> best;
  Vector image = p.matrix.apply(system.seed);
  for (std::size_t i = 0; i < p.matrix.size(); ++i) {
    // repeating P keeps entry i alive only when it starts positive
    if (p.matrix(i, i) == 0 || image[i] == 0) continue;
    DiagonalBound b{RootValue::make(p.matrix(i, i), static_cast<unsigned long>(p.leaves)), p, i, 1};
    if (!best || better_bound(b, *best)) best = std::move(b);
  }
  return best;
}

}  // namespace

PatternSearch search_lower_bound(const System& system, const FrontierTable& table,
                                 const PatternSearchOptions& options) {
  if (options.max_leaves < 1) throw InputError("search_lower_bound: max_leaves must be positive");
  if (table.depth() < options.max_leaves) {
    std::ostringstream os;
    os << "search_lower_bound: frontier has " << table.depth() << " levels, need " << options.max_leaves;
    throw InputError(os.str());
  }
  PatternSearch result;
  std::vector<std::vector<PatternMatrix>> branches(static_cast<std::size_t>(options.max_leaves) + 1);
  std::vector<std::vector<PatternMatrix>> kept(static_cast<std::size_t>(options.max_leaves) + 1);

  for (int L = 1; L <= options.max_leaves; ++L) {
    branches[static_cast<std::size_t>(L)] = branch_matrices(system, table, L);
    std::vector<PatternMatrix> cands = branches[static_cast<std::size_t>(L)];
    for (int m = 1; m < L; ++m)
      for (const auto& b : branches[static_cast<std::size_t>(m)])
        for (const auto& x : kept[static_cast<std::size_t>(L - m)]) cands.push_back(compose(b, x));

    // dedup keeping the first generated, then keep entrywise-maximal matrices
    std::vector<std::size_t> order(cands.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return cands[a].matrix.entries() < cands[b].matrix.entries();
    });
    std::vector<Vector> flat;
    std::vector<std::size_t> owner;
    for (auto idx : order) {
      if (!flat.empty() && flat.back() == cands[idx].matrix.entries()) continue;
      flat.push_back(cands[idx].matrix.entries());
      owner.push_back(idx);
    }
    auto& level = kept[static_cast<std::size_t>(L)];
    for (auto t : prune_sorted(flat, PruneStrategy::dominance)) level.push_back(std::move(cands[owner[t]]));
    if (level.size() > options.budget) {
      std::ostringstream os;
      os << "pattern search keeps " << level.size() << " matrices at " << L << " leaves, over the budget of "
         << options.budget;
      throw BudgetError(os.str(), L);
    }
    result.kept.push_back(level.size());

    for (const auto& p : level) {
      auto b = best_diagonal(system, p);
      if (b && (!result.best || better_bound(*b, *result.best))) result.best = std::move(b);
    }
    result.curve.push_back(result.best ? std::optional<RootValue>(result.best->value) : std::nullopt);
  }
  return result;
}

std::optional<DiagonalBound> power_diagonal_bound(const PatternMatrix& pattern, unsigned max_power) {
  if (max_power < 1) throw InputError("power_diagonal_bound: power must be at least 1");
  std::optional<DiagonalBound> best;
  Matrix power = pattern.matrix;
  for (unsigned t = 1; t <= max_power; ++t) {
    if (t > 1) power = power * pattern.matrix;
    for (std::size_t i = 0; i < power.size(); ++i) {
      if (power(i, i) == 0) continue;
      DiagonalBound b{RootValue::make(power(i, i), static_cast<unsigned long>(t) * pattern.leaves), pattern, i, t};
      if (!best || b.value.scaled_floor > best->value.scaled_floor) best = std::move(b);
    }
  }
  return best;
}

}  // namespace bilgrow
