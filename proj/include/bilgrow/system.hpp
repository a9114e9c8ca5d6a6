#pragma once

#include "bilgrow/scalar.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace bilgrow {

/// One coefficient c^(k)_{i,j}: (x*y)_k gains value * x_i * y_j. Indices are 0-based.
struct Term {
  std::size_t k = 0, i = 0, j = 0;
  Scalar value;

  friend bool operator==(const Term&, const Term&) = default;
};

/// Sparse bilinear map on Q^d. Terms are kept sorted by (k, i, j), without
/// zeros and without repeated index triples.
class BilinearMap {
public:
  BilinearMap() = default;
  /// Repeated (k,i,j) triples and out-of-range indices are input errors.
  BilinearMap(std::size_t dim, std::vector<Term> terms);

  std::size_t dim() const noexcept { return dim_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  /// c^(k)_{i,j}, zero when absent.
  Scalar coeff(std::size_t k, std::size_t i, std::size_t j) const;
  /// Terms whose output index is k.
  std::vector<Term> row(std::size_t k) const;

  friend bool operator==(const BilinearMap&, const BilinearMap&) = default;

private:
  std::size_t dim_ = 0;
  std::vector<Term> terms_;
};

/// How strictly seed entries are checked. The standing assumption is a
/// strictly positive seed; `nonnegative` admits zero entries (matrix-product
/// systems need it).
enum class SeedPolicy { positive, nonnegative };

struct System {
  BilinearMap map;
  Vector seed;
  SeedPolicy seed_policy = SeedPolicy::positive;
  std::string name;
  std::string notes;

  std::size_t dim() const noexcept { return map.dim(); }
};

/// (u*v)_k = sum_{i,j} c^(k)_{i,j} u_i v_j, exactly.
Vector star(const BilinearMap& map, const Vector& u, const Vector& v);

struct Violation {
  enum class Kind { negative_coefficient, nonpositive_seed, negative_seed, dimension_mismatch };
  Kind kind;
  std::size_t k = 0, i = 0, j = 0;  ///< coefficient indices, or i = seed index
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const noexcept { return violations.empty(); }
  std::string describe() const;
};

ValidationReport validate(const System& system);
/// Throws InputError carrying the report text when validation fails.
void require_valid(const System& system);

/// The same map with seed s / lambda0. Level-n vectors scale by lambda0^-n.
System scale_seed(const System& system, const Scalar& lambda0);

}  // namespace bilgrow
