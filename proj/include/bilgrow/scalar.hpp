#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bilgrow {

/// Exact rational. GMP keeps it canonical (reduced, positive denominator).
using Scalar = mpq_class;
using Vector = std::vector<Scalar>;

/// Malformed or out-of-contract input supplied by a caller.
class InputError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A configured resource cap was hit. `level` names where it happened.
class BudgetError : public std::runtime_error {
public:
  BudgetError(const std::string& what, int level)
      : std::runtime_error(what), level_(level) {}
  int level() const noexcept { return level_; }

private:
  int level_;
};

enum class Rounding { down, up, nearest_even };

/// Parses "p/q", "p" or a plain decimal literal such as "1.51".
Scalar parse_scalar(std::string_view text);
/// Canonical "p/q" text ("p" when the denominator is 1).
std::string to_string(const Scalar& q);
std::string to_string(const Vector& v, std::string_view sep = " ");

/// Decimal with `digits` places after the point, rounded as requested.
std::string format_fixed(const Scalar& q, int digits, Rounding mode);
/// Decimal with `sig` significant digits, rounded as requested.
std::string format_significant(const Scalar& q, int sig, Rounding mode);

/// floor(base^(1/n) * 10^digits), exact. base >= 0, n >= 1.
mpz_class root_floor_scaled(const Scalar& base, unsigned long n, int digits);
/// base^(1/n) as a decimal string with `digits` places, rounded as requested.
std::string root_decimal(const Scalar& base, unsigned long n, int digits, Rounding mode);
/// Largest rational with denominator 10^digits that is <= base^(1/n).
Scalar root_lower_rational(const Scalar& base, unsigned long n, int digits);
/// Smallest rational with denominator 10^digits that is >= base^(1/n).
Scalar root_upper_rational(const Scalar& base, unsigned long n, int digits);

/// Natural logarithm in double precision; -inf for zero. Never overflows.
double log_of(const Scalar& q);

Scalar pow(const Scalar& q, unsigned long e);
mpz_class pow10(unsigned long e);

bool leq(const Vector& a, const Vector& b);  ///< componentwise a <= b
bool is_zero(const Vector& v);

}  // namespace bilgrow
