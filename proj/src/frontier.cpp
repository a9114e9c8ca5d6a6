#include "bilgrow/frontier.hpp"

#include "bilgrow/majorize.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <thread>

namespace bilgrow {

std::string_view to_string(PruneStrategy s) {
  switch (s) {
    case PruneStrategy::none:
      return "none";
    case PruneStrategy::dominance:
      return "dominance";
    case PruneStrategy::majorized:
      return "majorized";
  }
  return "?";
}

PruneStrategy parse_strategy(std::string_view text) {
  if (text == "none") return PruneStrategy::none;
  if (text == "dominance") return PruneStrategy::dominance;
  if (text == "majorized" || text == "majorized-hull") return PruneStrategy::majorized;
  throw InputError("unknown pruning strategy '" + std::string(text) + "'");
}

namespace {

// Pareto-maximal members of a sorted duplicate-free list. Anything that
// dominates v is lexicographically larger, so a descending scan suffices.
std::vector<std::size_t> pareto_indices(const std::vector<Vector>& sorted) {
  std::vector<std::size_t> kept;
  for (std::size_t t = sorted.size(); t-- > 0;) {
    bool dominated = false;
    for (auto u : kept)
      if (leq(sorted[t], sorted[u])) {
        dominated = true;
        break;
      }
    if (!dominated) kept.push_back(t);
  }
  std::reverse(kept.begin(), kept.end());
  return kept;
}

std::vector<std::size_t> majorized_indices(const std::vector<Vector>& sorted) {
  std::vector<std::size_t> kept = pareto_indices(sorted);
  if (kept.size() <= 1) return kept;
  const std::size_t d = sorted[kept.front()].size();
  std::vector<bool> alive(kept.size(), true);
  std::vector<Vector> others;
  for (std::size_t a = 0; a < kept.size(); ++a) {
    const Vector& v = sorted[kept[a]];
    // a coordinate where v beats every other survivor makes it irremovable
    Vector top(d);
    others.clear();
    for (std::size_t b = 0; b < kept.size(); ++b) {
      if (b == a || !alive[b]) continue;
      others.push_back(sorted[kept[b]]);
      for (std::size_t k = 0; k < d; ++k)
        if (others.back()[k] > top[k]) top[k] = others.back()[k];
    }
    bool sticks_out = others.empty();
    for (std::size_t k = 0; k < d && !sticks_out; ++k)
      if (v[k] > top[k]) sticks_out = true;
    if (sticks_out) continue;
    if (is_majorized(v, others)) alive[a] = false;
  }
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < kept.size(); ++a)
    if (alive[a]) out.push_back(kept[a]);
  return out;
}

struct Candidate {
  Vector value;
  Origin origin;
  mpz_class multiplicity;
};

}  // namespace

std::vector<std::size_t> prune_sorted(const std::vector<Vector>& sorted, PruneStrategy strategy) {
  switch (strategy) {
    case PruneStrategy::none: {
      std::vector<std::size_t> all(sorted.size());
      std::iota(all.begin(), all.end(), std::size_t{0});
      return all;
    }
    case PruneStrategy::dominance:
      return pareto_indices(sorted);
    case PruneStrategy::majorized:
      return majorized_indices(sorted);
  }
  return {};
}

std::vector<Vector> prune(std::vector<Vector> vectors, PruneStrategy strategy) {
  std::sort(vectors.begin(), vectors.end());
  vectors.erase(std::unique(vectors.begin(), vectors.end()), vectors.end());
  std::vector<Vector> out;
  for (auto t : prune_sorted(vectors, strategy)) out.push_back(std::move(vectors[t]));
  return out;
}

FrontierTable::FrontierTable(System system, EnumerateOptions options)
    : system_(std::move(system)), options_(options) {
  require_valid(system_);
  if (options_.threads == 0) options_.threads = 1;
  LevelSet first;
  first.n = 1;
  first.vectors.push_back(system_.seed);
  first.origins.push_back({});
  if (options_.count_shapes) first.multiplicity.push_back(1);
  first.raw_count = 1;
  first.shape_count = 1;
  levels_.push_back(std::move(first));
}

const LevelSet& FrontierTable::level(int n) const {
  if (n < 1 || n > depth()) {
    std::ostringstream os;
    os << "level " << n << " outside the enumerated range 1.." << depth();
    throw InputError(os.str());
  }
  return levels_[static_cast<std::size_t>(n - 1)];
}

void FrontierTable::extend_to(int n) {
  while (depth() < n) build_next();
}

void FrontierTable::build_next() {
  const int n = depth() + 1;
  const auto& map = system_.map;
  const bool shapes = options_.count_shapes;

  // one task per (m, left index); contiguous task ranges per thread
  struct Task {
    int m;
    std::size_t left;
  };
  std::vector<Task> tasks;
  for (int m = 1; m < n; ++m)
    for (std::size_t i = 0; i < level(m).vectors.size(); ++i) tasks.push_back({m, i});

  auto work = [&](std::size_t begin, std::size_t end, std::vector<Candidate>& out) {
    for (std::size_t t = begin; t < end; ++t) {
      const auto& left = level(tasks[t].m);
      const auto& right = level(n - tasks[t].m);
      const Vector& u = left.vectors[tasks[t].left];
      for (std::size_t j = 0; j < right.vectors.size(); ++j) {
        Candidate c{star(map, u, right.vectors[j]), {tasks[t].m, tasks[t].left, j}, 0};
        if (shapes) c.multiplicity = left.multiplicity[tasks[t].left] * right.multiplicity[j];
        out.push_back(std::move(c));
      }
    }
  };

  std::vector<Candidate> cands;
  const std::size_t nthreads = std::min<std::size_t>(options_.threads, std::max<std::size_t>(tasks.size(), 1));
  if (nthreads <= 1) {
    work(0, tasks.size(), cands);
  } else {
    std::vector<std::vector<Candidate>> parts(nthreads);
    std::vector<std::jthread> pool;
    const std::size_t chunk = (tasks.size() + nthreads - 1) / nthreads;
    for (std::size_t p = 0; p < nthreads; ++p) {
      std::size_t b = std::min(tasks.size(), p * chunk), e = std::min(tasks.size(), b + chunk);
      pool.emplace_back([&, b, e, p] { work(b, e, parts[p]); });
    }
    pool.clear();
    for (auto& part : parts)
      for (auto& c : part) cands.push_back(std::move(c));
  }

  LevelSet lvl;
  lvl.n = n;
  lvl.raw_count = cands.size();

  // stable sort keeps the first generated origin for each distinct vector
  std::vector<std::size_t> order(cands.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return cands[a].value < cands[b].value; });
  std::vector<Vector> distinct;
  std::vector<Origin> origins;
  std::vector<mpz_class> mult;
  for (auto idx : order) {
    auto& c = cands[idx];
    if (shapes) lvl.shape_count += c.multiplicity;
    if (!distinct.empty() && distinct.back() == c.value) {
      if (shapes) mult.back() += c.multiplicity;
      continue;
    }
    distinct.push_back(std::move(c.value));
    origins.push_back(c.origin);
    if (shapes) mult.push_back(std::move(c.multiplicity));
  }
  cands.clear();

  auto keep = prune_sorted(distinct, options_.strategy);
  lvl.pruned_count = distinct.size() - keep.size();
  if (keep.size() > options_.budget) {
    std::ostringstream os;
    os << "level " << n << " retains " << keep.size() << " vectors, over the budget of " << options_.budget;
    throw BudgetError(os.str(), n);
  }
  for (auto t : keep) {
    lvl.vectors.push_back(std::move(distinct[t]));
    lvl.origins.push_back(origins[t]);
    if (shapes) lvl.multiplicity.push_back(std::move(mult[t]));
  }
  levels_.push_back(std::move(lvl));
}

Scalar FrontierTable::g_k(int n, std::size_t k) const {
  if (k >= system_.dim()) throw InputError("entry index out of range");
  const auto& lvl = level(n);
  return lvl.vectors[argmax(n, k)][k];
}

Scalar FrontierTable::g(int n) const {
  Scalar best;
  for (std::size_t k = 0; k < system_.dim(); ++k) best = std::max(best, g_k(n, k));
  return best;
}

std::size_t FrontierTable::argmax(int n, std::size_t k) const {
  const auto& vs = level(n).vectors;
  std::size_t best = 0;
  for (std::size_t t = 1; t < vs.size(); ++t)
    if (vs[t][k] > vs[best][k]) best = t;
  return best;
}

std::size_t FrontierTable::argmax(int n) const {
  std::size_t bestk = 0;
  Scalar best = -1;
  for (std::size_t k = 0; k < system_.dim(); ++k) {
    Scalar v = g_k(n, k);
    if (v > best) {
      best = v;
      bestk = k;
    }
  }
  return argmax(n, bestk);
}

std::string FrontierTable::tree_text(int n, std::size_t index) const {
  const auto& o = level(n).origins.at(index);
  if (o.left_n == 0) return "s";
  return "(" + tree_text(o.left_n, o.left) + " " + tree_text(n - o.left_n, o.right) + ")";
}

std::vector<int> FrontierTable::subtree_sizes(int n, std::size_t index) const {
  std::vector<int> sizes{n};
  const auto& o = level(n).origins.at(index);
  if (o.left_n == 0) return sizes;
  for (int s : subtree_sizes(o.left_n, o.left)) sizes.push_back(s);
  for (int s : subtree_sizes(n - o.left_n, o.right)) sizes.push_back(s);
  return sizes;
}

FrontierTable enumerate(const System& system, int depth, const EnumerateOptions& options) {
  if (depth < 1) throw InputError("depth must be at least 1");
  FrontierTable table(system, options);
  table.extend_to(depth);
  return table;
}

HullCount hull_vertex_count(const FrontierTable& table, int n) {
  const auto& vs = table.level(n).vectors;
  return {hull_vertex_count(std::span<const Vector>(vs)), table.strategy() == PruneStrategy::none};
}

mpz_class tree_count(int n) {
  if (n < 1) throw InputError("tree_count: n must be at least 1");
  const unsigned long m = static_cast<unsigned long>(n - 1);
  mpz_class c;
  mpz_bin_uiui(c.get_mpz_t(), 2 * m, m);
  return c / (m + 1);
}

}  // namespace bilgrow
