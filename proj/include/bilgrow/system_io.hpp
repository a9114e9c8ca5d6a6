#pragma once

#include "bilgrow/system.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace bilgrow {

/// A malformed system file; line and column are 1-based (0 when unknown).
class ParseError : public InputError {
public:
  ParseError(const std::string& what, int line, int column)
      : InputError(format(what, line, column)), line_(line), column_(column) {}
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

private:
  static std::string format(const std::string& what, int line, int column);
  int line_, column_;
};

/// Line-oriented system file:
///   # comment
///   name <text>
///   notes <text>            (repeatable)
///   dim <d>
///   seed <s_1> ... <s_d>
///   seed-policy positive|nonnegative
///   coef <k> <i> <j> <value>   (1-based, repeated triples are errors)
/// Values are "p/q", integers or plain decimals. The result is validated.
System parse_system(std::string_view text);
System load_system(const std::string& path);

/// Canonical text: metadata, dim, seed, policy, then coefficients in (k, i, j) order.
std::string serialize_system(const System& system);

/// Flattened d x d matrix product: entry (r, c) sits at index r d + c and
/// (x*y)_(r,c) = sum_l x_(r,l) y_(l,c). The seed is the given matrix.
System matmul_system(std::size_t d, const std::vector<Scalar>& matrix);

/// Built-in names: linear-order, quadratic-order, quartic-order, aho-sloane,
/// and the generator matmul:<d>:<comma-separated entries>.
std::vector<std::string> example_names();
System example(std::string_view name);

}  // namespace bilgrow
