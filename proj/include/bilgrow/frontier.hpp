#pragma once

#include "bilgrow/system.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace bilgrow {

/// How level sets are thinned after deduplication. Each strategy keeps a
/// subset of what the previous one keeps, and all preserve every g_k.
enum class PruneStrategy { none, dominance, majorized };

std::string_view to_string(PruneStrategy s);
PruneStrategy parse_strategy(std::string_view text);

/// Where a retained vector came from: left operand at level `left_n`, index
/// `left`; right operand at level n - left_n, index `right`. left_n == 0
/// marks the seed.
struct Origin {
  int left_n = 0;
  std::size_t left = 0;
  std::size_t right = 0;
};

struct LevelSet {
  int n = 0;
  std::vector<Vector> vectors;  ///< deduplicated, lexicographically ascending
  std::vector<Origin> origins;  ///< parallel to `vectors`
  /// Trees evaluating to each vector; only filled when shape counting is on.
  std::vector<mpz_class> multiplicity;
  std::uint64_t raw_count = 0;     ///< products formed before dedup
  std::size_t pruned_count = 0;    ///< distinct vectors dropped by pruning
  mpz_class shape_count;           ///< trees evaluated, with multiplicity
};

struct EnumerateOptions {
  PruneStrategy strategy = PruneStrategy::dominance;
  std::size_t budget = 100000;  ///< retained vectors allowed per level
  bool count_shapes = false;
  unsigned threads = 1;
};

/// Level sets A_1..A_N built bottom-up from all splits (m, n-m) of the
/// already-pruned lower levels.
class FrontierTable {
public:
  FrontierTable(System system, EnumerateOptions options);

  /// Builds levels until depth() >= n. Throws BudgetError naming the level.
  void extend_to(int n);

  int depth() const noexcept { return static_cast<int>(levels_.size()); }
  const System& system() const noexcept { return system_; }
  PruneStrategy strategy() const noexcept { return options_.strategy; }
  const EnumerateOptions& options() const noexcept { return options_; }
  const LevelSet& level(int n) const;

  Scalar g(int n) const;
  Scalar g_k(int n, std::size_t k) const;
  /// Index of the first retained vector at level n attaining g_k(n).
  std::size_t argmax(int n, std::size_t k) const;
  /// Index of the first retained vector at level n attaining g(n).
  std::size_t argmax(int n) const;

  /// Bracketed tree for a retained vector: "s" or "(L R)".
  std::string tree_text(int n, std::size_t index) const;
  /// Leaf counts of every subtree (including the whole tree and the leaves).
  std::vector<int> subtree_sizes(int n, std::size_t index) const;

private:
  void build_next();

  System system_;
  EnumerateOptions options_;
  std::vector<LevelSet> levels_;
};

FrontierTable enumerate(const System& system, int depth, const EnumerateOptions& options);

/// Deduplicates and prunes; the result is sorted and independent of input order.
std::vector<Vector> prune(std::vector<Vector> vectors, PruneStrategy strategy);

/// Indices (into a sorted, duplicate-free list) that survive pruning.
std::vector<std::size_t> prune_sorted(const std::vector<Vector>& sorted, PruneStrategy strategy);

struct HullCount {
  std::size_t vertices = 0;
  bool exact = false;  ///< false when the table was pruned (proxy only)
};

HullCount hull_vertex_count(const FrontierTable& table, int n);

/// Rooted binary trees with n leaves: Catalan(n - 1).
mpz_class tree_count(int n);

}  // namespace bilgrow
