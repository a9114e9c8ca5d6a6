#include "bilgrow/scalar.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace bilgrow {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

mpz_class parse_integer(std::string_view s, std::string_view whole) {
  if (!all_digits(s)) throw InputError("not a nonnegative rational: '" + std::string(whole) + "'");
  return mpz_class(std::string(s), 10);
}

// floor(a/b) for b > 0 and a >= 0.
mpz_class floor_div(const mpz_class& a, const mpz_class& b) {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

// Rounds the nonnegative rational q * 10^shift to an integer.
mpz_class round_scaled(const Scalar& q, long shift, Rounding mode) {
  mpz_class num = q.get_num();
  mpz_class den = q.get_den();
  if (shift >= 0)
    num *= pow10(static_cast<unsigned long>(shift));
  else
    den *= pow10(static_cast<unsigned long>(-shift));
  mpz_class fl = floor_div(num, den);
  mpz_class rem = num - fl * den;
  if (rem == 0) return fl;
  switch (mode) {
    case Rounding::down:
      return fl;
    case Rounding::up:
      return fl + 1;
    case Rounding::nearest_even: {
      int c = cmp(mpz_class(2 * rem), den);
      if (c > 0 || (c == 0 && mpz_odd_p(fl.get_mpz_t()))) return fl + 1;
      return fl;
    }
  }
  return fl;
}

std::string place_point(const mpz_class& scaled, int digits) {
  std::string s = scaled.get_str();
  if (digits <= 0) return s;
  if (static_cast<int>(s.size()) <= digits) s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
  s.insert(s.size() - static_cast<std::size_t>(digits), 1, '.');
  return s;
}

}  // namespace

mpz_class pow10(unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

Scalar pow(const Scalar& q, unsigned long e) {
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), q.get_num_mpz_t(), e);
  mpz_pow_ui(d.get_mpz_t(), q.get_den_mpz_t(), e);
  Scalar r(n, d);
  r.canonicalize();
  return r;
}

Scalar parse_scalar(std::string_view text) {
  std::string_view t = text;
  while (!t.empty() && (t.front() == ' ' || t.front() == '\t')) t.remove_prefix(1);
  while (!t.empty() && (t.back() == ' ' || t.back() == '\t')) t.remove_suffix(1);
  if (t.empty()) throw InputError("empty number");
  bool negative = false;
  if (t.front() == '-' || t.front() == '+') {
    negative = t.front() == '-';
    t.remove_prefix(1);
  }
  Scalar value;
  if (auto slash = t.find('/'); slash != std::string_view::npos) {
    mpz_class p = parse_integer(t.substr(0, slash), text);
    mpz_class q = parse_integer(t.substr(slash + 1), text);
    if (q == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
    value = Scalar(p, q);
  } else if (auto dot = t.find('.'); dot != std::string_view::npos) {
    std::string_view ip = t.substr(0, dot), fp = t.substr(dot + 1);
    if (ip.empty() && fp.empty()) throw InputError("not a number: '" + std::string(text) + "'");
    mpz_class p = ip.empty() ? mpz_class(0) : parse_integer(ip, text);
    mpz_class f = fp.empty() ? mpz_class(0) : parse_integer(fp, text);
    mpz_class scale = pow10(fp.size());
    value = Scalar(p * scale + f, scale);
  } else {
    value = Scalar(parse_integer(t, text));
  }
  value.canonicalize();
  if (negative) value = -value;
  return value;
}

std::string to_string(const Scalar& q) { return q.get_str(); }

std::string to_string(const Vector& v, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += v[i].get_str();
  }
  return out;
}

std::string format_fixed(const Scalar& q, int digits, Rounding mode) {
  if (q < 0) {
    Rounding flipped = mode == Rounding::down ? Rounding::up
                       : mode == Rounding::up ? Rounding::down
                                              : mode;
    std::string s = format_fixed(-q, digits, flipped);
    return s.find_first_not_of("0.") == std::string::npos ? s : "-" + s;
  }
  return place_point(round_scaled(q, digits, mode), digits);
}

std::string format_significant(const Scalar& q, int sig, Rounding mode) {
  if (q == 0) return "0";
  if (q < 0) return "-" + format_significant(-q, sig, mode);
  // exponent e with 10^e <= q < 10^(e+1)
  long e = static_cast<long>(mpz_sizeinbase(q.get_num_mpz_t(), 10)) -
           static_cast<long>(mpz_sizeinbase(q.get_den_mpz_t(), 10));
  auto at_least = [&](long ex) {
    Scalar p = ex >= 0 ? Scalar(pow10(static_cast<unsigned long>(ex)))
                       : Scalar(mpz_class(1), pow10(static_cast<unsigned long>(-ex)));
    return q >= p;
  };
  while (!at_least(e)) --e;
  while (at_least(e + 1)) ++e;
  long places = sig - 1 - e;
  mpz_class scaled = round_scaled(q, places, mode);
  if (mpz_sizeinbase(scaled.get_mpz_t(), 10) > static_cast<std::size_t>(sig) &&
      scaled == pow10(static_cast<unsigned long>(sig))) {
    // rounding carried into a new digit
    --places;
    scaled /= 10;
  }
  if (places >= 0) return place_point(scaled, static_cast<int>(places));
  return mpz_class(scaled * pow10(static_cast<unsigned long>(-places))).get_str();
}

mpz_class root_floor_scaled(const Scalar& base, unsigned long n, int digits) {
  if (n == 0) throw InputError("root of order zero");
  if (base < 0) throw InputError("root of a negative number");
  mpz_class num = base.get_num() * pow10(static_cast<unsigned long>(digits) * n);
  mpz_class inner = floor_div(num, base.get_den());
  mpz_class r;
  mpz_root(r.get_mpz_t(), inner.get_mpz_t(), n);
  return r;
}

namespace {
// True iff (x / 10^digits)^n == base exactly.
bool root_is_exact(const mpz_class& x, const Scalar& base, unsigned long n, int digits) {
  mpz_class xn;
  mpz_pow_ui(xn.get_mpz_t(), x.get_mpz_t(), n);
  return xn * base.get_den() == base.get_num() * pow10(static_cast<unsigned long>(digits) * n);
}
}  // namespace

std::string root_decimal(const Scalar& base, unsigned long n, int digits, Rounding mode) {
  mpz_class x = root_floor_scaled(base, n, digits);
  switch (mode) {
    case Rounding::down:
      break;
    case Rounding::up:
      if (!root_is_exact(x, base, n, digits)) x += 1;
      break;
    case Rounding::nearest_even: {
      // compare (x + 1/2)^n with base * 10^(digits n)
      mpz_class h = 2 * x + 1, hn;
      mpz_pow_ui(hn.get_mpz_t(), h.get_mpz_t(), n);
      mpz_class two_n;
      mpz_ui_pow_ui(two_n.get_mpz_t(), 2, n);
      mpz_class lhs = hn * base.get_den();
      mpz_class rhs = two_n * base.get_num() * pow10(static_cast<unsigned long>(digits) * n);
      int c = cmp(lhs, rhs);
      if (c < 0 || (c == 0 && mpz_odd_p(x.get_mpz_t()))) x += 1;
      break;
    }
  }
  return place_point(x, digits);
}

Scalar root_lower_rational(const Scalar& base, unsigned long n, int digits) {
  Scalar r(root_floor_scaled(base, n, digits), pow10(static_cast<unsigned long>(digits)));
  r.canonicalize();
  return r;
}

Scalar root_upper_rational(const Scalar& base, unsigned long n, int digits) {
  mpz_class x = root_floor_scaled(base, n, digits);
  if (!root_is_exact(x, base, n, digits)) x += 1;
  Scalar r(x, pow10(static_cast<unsigned long>(digits)));
  r.canonicalize();
  return r;
}

double log_of(const Scalar& q) {
  if (q == 0) return -std::numeric_limits<double>::infinity();
  long en = 0, ed = 0;
  double mn = mpz_get_d_2exp(&en, q.get_num_mpz_t());
  double md = mpz_get_d_2exp(&ed, q.get_den_mpz_t());
  return std::log(std::fabs(mn)) - std::log(md) + static_cast<double>(en - ed) * std::log(2.0);
}

bool leq(const Vector& a, const Vector& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

bool is_zero(const Vector& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

}  // namespace bilgrow
