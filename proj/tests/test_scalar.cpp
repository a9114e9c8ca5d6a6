#include "bilgrow/scalar.hpp"

#include <doctest.h>

using namespace bilgrow;

TEST_CASE("parse_scalar accepts fractions, integers and decimals") {
  CHECK(parse_scalar("3/4") == Scalar(3, 4));
  CHECK(parse_scalar("6/8") == Scalar(3, 4));
  CHECK(parse_scalar("-2") == Scalar(-2));
  CHECK(parse_scalar("1.51") == Scalar(151, 100));
  CHECK(parse_scalar(" 7 ") == Scalar(7));
  CHECK(parse_scalar(".5") == Scalar(1, 2));
  CHECK(parse_scalar("+0") == Scalar(0));
}

TEST_CASE("parse_scalar rejects malformed text") {
  for (const char* bad : {"", "1/0", "a", "1.2.3", "1/", "/2", "--1", "1e5", "."}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_scalar(bad), InputError);
  }
}

TEST_CASE("to_string is canonical p/q") {
  CHECK(to_string(Scalar(1, 2) + Scalar(1, 4)) == "3/4");
  CHECK(to_string(Scalar(3, 2) + Scalar(1, 2)) == "2");
  CHECK(to_string(Vector{Scalar(1), Scalar(1, 3)}, ",") == "1,1/3");
}

TEST_CASE("format_fixed honours the rounding direction") {
  CHECK(format_fixed(Scalar(1, 3), 4, Rounding::down) == "0.3333");
  CHECK(format_fixed(Scalar(1, 3), 4, Rounding::up) == "0.3334");
  CHECK(format_fixed(Scalar(2, 3), 4, Rounding::nearest_even) == "0.6667");
  CHECK(format_fixed(Scalar(1, 8), 2, Rounding::nearest_even) == "0.12");
  CHECK(format_fixed(Scalar(3, 8), 2, Rounding::nearest_even) == "0.38");
  CHECK(format_fixed(Scalar(-1, 3), 2, Rounding::down) == "-0.34");
  CHECK(format_fixed(Scalar(5), 0, Rounding::down) == "5");
}

TEST_CASE("format_significant") {
  CHECK(format_significant(Scalar(56), 12, Rounding::nearest_even) == "56.0000000000");
  CHECK(format_significant(Scalar(1, 3), 3, Rounding::nearest_even) == "0.333");
  CHECK(format_significant(Scalar(24999, 25), 4, Rounding::nearest_even) == "1000");
  CHECK(format_significant(Scalar(123456), 2, Rounding::down) == "120000");
  CHECK(format_significant(Scalar(0), 5, Rounding::down) == "0");
}

TEST_CASE("exact n-th roots") {
  CHECK(root_floor_scaled(Scalar(2), 2, 10) == mpz_class("14142135623"));
  // 56^(1/10) = 1.49561152357..., 5^(1/4) = 1.49534878122... (mpmath, 40 digits)
  CHECK(root_decimal(Scalar(56), 10, 4, Rounding::down) == "1.4956");
  CHECK(root_decimal(Scalar(56), 10, 4, Rounding::up) == "1.4957");
  CHECK(root_decimal(Scalar(5), 4, 4, Rounding::down) == "1.4953");
  CHECK(root_decimal(Scalar(4), 2, 3, Rounding::up) == "2.000");
  CHECK(root_decimal(Scalar(1, 4), 2, 2, Rounding::nearest_even) == "0.50");
  CHECK(root_lower_rational(Scalar(2), 2, 3) == Scalar(707, 500));
  CHECK(root_upper_rational(Scalar(2), 2, 3) == Scalar(283, 200));
  CHECK(root_upper_rational(Scalar(9), 2, 3) == Scalar(3));
  CHECK_THROWS_AS(root_floor_scaled(Scalar(2), 0, 3), InputError);
  CHECK_THROWS_AS(root_floor_scaled(Scalar(-2), 3, 3), InputError);
}

TEST_CASE("small helpers") {
  CHECK(pow(Scalar(2, 3), 3) == Scalar(8, 27));
  CHECK(pow10(3) == 1000);
  CHECK(log_of(Scalar(1)) == doctest::Approx(0.0));
  CHECK(log_of(Scalar(mpz_class("1" + std::string(400, '0')))) == doctest::Approx(400 * 2.302585092994046));
  CHECK(leq({Scalar(1), Scalar(2)}, {Scalar(1), Scalar(3)}));
  CHECK_FALSE(leq({Scalar(2), Scalar(2)}, {Scalar(1), Scalar(3)}));
  CHECK(is_zero({Scalar(0), Scalar(0)}));
}
