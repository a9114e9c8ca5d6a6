#pragma once

#include "bilgrow/frontier.hpp"
#include "bilgrow/system.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace bilgrow {

/// Dense square matrix of exact rationals.
class Matrix {
public:
  Matrix() = default;
  explicit Matrix(std::size_t n) : n_(n), a_(n * n) {}
  static Matrix identity(std::size_t n);

  std::size_t size() const noexcept { return n_; }
  Scalar& operator()(std::size_t r, std::size_t c) { return a_[r * n_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return a_[r * n_ + c]; }
  const Vector& entries() const noexcept { return a_; }

  friend Matrix operator*(const Matrix& x, const Matrix& y);
  friend bool operator==(const Matrix&, const Matrix&) = default;
  Vector apply(const Vector& v) const;

private:
  std::size_t n_ = 0;
  Vector a_;
};

/// Which child of the root carries the marked leaf.
enum class Side { left, right };

/// One root-branch pattern: the marked leaf is one child of the root and the
/// other child is a concrete subtree with value `branch`.
struct BranchStep {
  Side marked = Side::left;
  Vector branch;
  int leaves = 1;         ///< leaves of the opposite branch
  std::string tree = "s"; ///< bracketed shape of the opposite branch
};

/// Persistent list of steps, outermost first, so prefixing is O(1).
struct WitnessNode {
  std::shared_ptr<const BranchStep> step;
  std::shared_ptr<const WitnessNode> next;
};

/// Associated matrix M(P) of a linear pattern P with |P| = leaves (marked
/// leaf excluded) and a replayable witness.
struct PatternMatrix {
  Matrix matrix;
  int leaves = 0;
  std::shared_ptr<const WitnessNode> witness;

  std::vector<BranchStep> steps() const;
  /// The whole pattern tree with "x" at the marked leaf.
  std::string text() const;
};

/// Matrix of a root-branch pattern: for Side::left,
/// M_{k,i} = sum_j c^(k)_{i,j} v_j; for Side::right, M_{k,i} = sum_j c^(k)_{j,i} v_j.
Matrix branch_matrix(const BilinearMap& map, const Vector& branch, Side marked);

/// Left-marked then right-marked matrices for every retained vector at level m.
std::vector<PatternMatrix> branch_matrices(const System& system, const FrontierTable& table, int m);

/// M(P1 (+) P2) = M(P1) M(P2); leaves add; witnesses concatenate.
PatternMatrix compose(const PatternMatrix& outer, const PatternMatrix& inner);

/// Rebuilds the matrix from the witness alone, column by column through star.
Matrix replay(const System& system, const std::vector<BranchStep>& steps);

/// Value of the full pattern tree with the seed placed at the marked leaf.
Vector evaluate_pattern(const System& system, const std::vector<BranchStep>& steps);

/// A pattern of path.size()-1 leaves whose matrix has M_{front,back} > 0, one
/// seed-branch step per edge. Throws InputError for a non-edge or an empty path.
PatternMatrix pattern_for_path(const System& system, const std::vector<std::size_t>& path);

/// base^(1/root) together with floor(base^(1/root) * 10^kRootDigits).
struct RootValue {
  static constexpr int kRootDigits = 60;

  Scalar base;
  unsigned long root = 1;
  mpz_class scaled_floor;

  static RootValue make(Scalar base, unsigned long root);
  /// Largest rational p / 10^60 not above the value.
  Scalar lower_rational() const;
  std::string decimal_down(int digits) const;
  std::string decimal_up(int digits) const;
};

/// A certified lower bound on the growth rate: (M^power)_{i,i}^(1/(power |P|)).
struct DiagonalBound {
  RootValue value;
  PatternMatrix pattern;
  std::size_t index = 0;
  unsigned power = 1;
};

struct PatternSearchOptions {
  int max_leaves = 16;
  std::size_t budget = 20000;  ///< matrices kept per leaf count
};

struct PatternSearch {
  std::optional<DiagonalBound> best;
  /// Best bound found using patterns of at most L leaves, for L = 1..max_leaves.
  std::vector<std::optional<RootValue>> curve;
  std::vector<std::size_t> kept;  ///< matrices kept per leaf count
};

/// Dynamic program over compositions of root-branch patterns, pruned by
/// entrywise dominance at each leaf count.
PatternSearch search_lower_bound(const System& system, const FrontierTable& table,
                                 const PatternSearchOptions& options);

/// max over t <= max_power and i of ((M^t)_{i,i})^(1/(t |P|)).
std::optional<DiagonalBound> power_diagonal_bound(const PatternMatrix& pattern, unsigned max_power);

/// Orders bounds: larger value first, then fewer leaves, then smaller witness text.
bool better_bound(const DiagonalBound& a, const DiagonalBound& b);

}  // namespace bilgrow
