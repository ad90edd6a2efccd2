#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>

#include "veelab/errors.hpp"

namespace veelab {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Element of the real quadratic field tower Q(sqrt2, sqrt3):
/// a + b*sqrt2 + c*sqrt3 + d*sqrt6 with rational coefficients.
/// All arithmetic is exact; division goes through the three field conjugates.
struct ExactScalar {
  Rational a, b, c, d;

  ExactScalar() : a(0), b(0), c(0), d(0) {}
  ExactScalar(long v) : a(v), b(0), c(0), d(0) {}  // NOLINT(runtime/explicit)
  ExactScalar(Rational ra, Rational rb = 0, Rational rc = 0, Rational rd = 0)
      : a(std::move(ra)), b(std::move(rb)), c(std::move(rc)), d(std::move(rd)) {}

  static ExactScalar rational(Rational r) { return ExactScalar(std::move(r)); }
  static ExactScalar sqrt2() { return ExactScalar(0, 1, 0, 0); }
  static ExactScalar sqrt3() { return ExactScalar(0, 0, 1, 0); }
  static ExactScalar sqrt6() { return ExactScalar(0, 0, 0, 1); }

  bool is_zero() const { return a == 0 && b == 0 && c == 0 && d == 0; }
  bool is_rational() const { return b == 0 && c == 0 && d == 0; }
  bool is_integer() const { return is_rational() && denominator(a) == 1; }

  friend ExactScalar operator+(const ExactScalar& x, const ExactScalar& y) {
    return ExactScalar(x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d);
  }
  friend ExactScalar operator-(const ExactScalar& x, const ExactScalar& y) {
    return ExactScalar(x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d);
  }
  friend ExactScalar operator-(const ExactScalar& x) { return ExactScalar(-x.a, -x.b, -x.c, -x.d); }

  friend ExactScalar operator*(const ExactScalar& x, const ExactScalar& y) {
    return ExactScalar(
        x.a * y.a + 2 * x.b * y.b + 3 * x.c * y.c + 6 * x.d * y.d,
        x.a * y.b + x.b * y.a + 3 * (x.c * y.d + x.d * y.c),
        x.a * y.c + x.c * y.a + 2 * (x.b * y.d + x.d * y.b),
        x.a * y.d + x.d * y.a + x.b * y.c + x.c * y.b);
  }

  // Galois conjugates: sigma2 flips sqrt2, sigma3 flips sqrt3 (sqrt6 follows).
  ExactScalar conj2() const { return ExactScalar(a, -b, c, -d); }
  ExactScalar conj3() const { return ExactScalar(a, b, -c, -d); }
  ExactScalar conj23() const { return ExactScalar(a, -b, -c, d); }

  ExactScalar inverse() const {
    if (is_zero()) fail(errc::invalid_argument, "division by zero ExactScalar");
    ExactScalar num = conj2() * conj3() * conj23();
    ExactScalar n = *this * num;  // field norm, lands in Q
    return ExactScalar(num.a / n.a, num.b / n.a, num.c / n.a, num.d / n.a);
  }
  friend ExactScalar operator/(const ExactScalar& x, const ExactScalar& y) { return x * y.inverse(); }

  ExactScalar& operator+=(const ExactScalar& y) { return *this = *this + y; }
  ExactScalar& operator-=(const ExactScalar& y) { return *this = *this - y; }
  ExactScalar& operator*=(const ExactScalar& y) { return *this = *this * y; }

  friend bool operator==(const ExactScalar& x, const ExactScalar& y) {
    return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
  }
  friend bool operator!=(const ExactScalar& x, const ExactScalar& y) { return !(x == y); }

  /// Lexicographic order on coefficients; used for canonical keys, not magnitude.
  friend bool operator<(const ExactScalar& x, const ExactScalar& y) {
    if (x.a != y.a) return x.a < y.a;
    if (x.b != y.b) return x.b < y.b;
    if (x.c != y.c) return x.c < y.c;
    return x.d < y.d;
  }

  double to_double() const {
    return a.convert_to<double>() + b.convert_to<double>() * 1.4142135623730950488 +
           c.convert_to<double>() * 1.7320508075688772935 + d.convert_to<double>() * 2.4494897427831780982;
  }
};

namespace detail {

inline int sign_rat(const Rational& r) { return r.sign(); }

// sign of u + v*sqrt2, exact.
inline int sign_q2(const Rational& u, const Rational& v) {
  if (v == 0) return sign_rat(u);
  if (u == 0) return sign_rat(v);
  int su = sign_rat(u), sv = sign_rat(v);
  if (su == sv) return su;
  Rational t = u * u - 2 * v * v;  // nonzero: sqrt2 is irrational
  return t.sign() > 0 ? su : sv;
}

}  // namespace detail

/// Exact sign of the real number x, via nested comparisons in the subfield Q(sqrt2).
inline int exact_sign(const ExactScalar& x) {
  // x = X + Y*sqrt3 with X = a + b*sqrt2, Y = c + d*sqrt2.
  const bool y_zero = (x.c == 0 && x.d == 0);
  const bool x_zero = (x.a == 0 && x.b == 0);
  if (y_zero) return detail::sign_q2(x.a, x.b);
  if (x_zero) return detail::sign_q2(x.c, x.d);
  int sx = detail::sign_q2(x.a, x.b);
  int sy = detail::sign_q2(x.c, x.d);
  if (sx == sy) return sx;
  // compare X^2 vs 3*Y^2 in Q(sqrt2); equality impossible (sqrt3 not in Q(sqrt2)).
  Rational tu = x.a * x.a + 2 * x.b * x.b - 3 * (x.c * x.c + 2 * x.d * x.d);
  Rational tv = 2 * x.a * x.b - 6 * x.c * x.d;
  return detail::sign_q2(tu, tv) > 0 ? sx : sy;
}

/// Doubles are dyadic rationals; the conversion is exact.
inline Rational rational_from_double(double v) {
  if (!std::isfinite(v)) fail(errc::invalid_argument, "non-finite double in exact context");
  return Rational(v);
}

/// sqrt of a nonnegative rational inside Q(sqrt2,sqrt3): succeeds iff the
/// squarefree part of num*den is one of {1,2,3,6}.
inline std::optional<ExactScalar> exact_sqrt_rational(const Rational& r) {
  if (r < 0) return std::nullopt;
  if (r == 0) return ExactScalar();
  BigInt n = numerator(r) * denominator(r);
  BigInt square_part = 1;
  BigInt i = 2;
  // trial division; radicands here are small (catalog data), cap the scan.
  for (; i * i <= n && i < 100000; ++i) {
    while (n % (i * i) == 0) {
      n /= i * i;
      square_part *= i;
    }
  }
  if (i * i <= n) return std::nullopt;  // scan capped out
  Rational coef = Rational(square_part, denominator(r));
  if (n == 1) return ExactScalar(coef);
  if (n == 2) return ExactScalar(0, coef, 0, 0);
  if (n == 3) return ExactScalar(0, 0, coef, 0);
  if (n == 6) return ExactScalar(0, 0, 0, coef);
  return std::nullopt;
}

inline std::optional<ExactScalar> exact_sqrt(const ExactScalar& x) {
  if (!x.is_rational()) return std::nullopt;
  return exact_sqrt_rational(x.a);
}

// ---------------------------------------------------------------------------
// token grammar: term (('+'|'-') term)*, whitespace-insensitive, where
//   term := rational | rational '*' root | root | root '/' integer | rational '*' root '/' integer
//   root := "sqrt2" | "sqrt3" | "sqrt6",  rational := ['-'] digits ['/' digits]
// ---------------------------------------------------------------------------

namespace detail {

struct ExactParser {
  std::string s;
  size_t pos = 0;

  explicit ExactParser(const std::string& raw) {
    s.reserve(raw.size());
    for (char ch : raw)
      if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  }

  bool eof() const { return pos >= s.size(); }
  char peek() const { return eof() ? '\0' : s[pos]; }

  BigInt parse_uint() {
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail(errc::parse_error, "digit expected in '" + s + "'");
    BigInt v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + (s[pos] - '0');
      ++pos;
    }
    if (peek() == '.') fail(errc::parse_error, "decimal literal is not an exact token: '" + s + "'");
    return v;
  }

  Rational parse_rational() {
    BigInt num = parse_uint();
    if (peek() == '/') {
      ++pos;
      BigInt den = parse_uint();
      if (den == 0) fail(errc::parse_error, "zero denominator in '" + s + "'");
      return Rational(num, den);
    }
    return Rational(num);
  }

  int parse_root() {  // returns 2, 3 or 6; assumes "sqrt" prefix present
    pos += 4;
    char k = peek();
    ++pos;
    if (k == '2') return 2;
    if (k == '3') return 3;
    if (k == '6') return 6;
    fail(errc::parse_error, "sqrt must be sqrt2, sqrt3 or sqrt6 in '" + s + "'");
  }

  ExactScalar parse_term() {
    Rational coef = 1;
    int root = 1;
    bool have_coef = false;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      coef = parse_rational();
      have_coef = true;
      if (peek() == '*') ++pos;  // optional explicit product before a root
    }
    if (s.compare(pos, 4, "sqrt") == 0) {
      root = parse_root();
      if (peek() == '/') {
        ++pos;
        BigInt den = parse_uint();
        if (den == 0) fail(errc::parse_error, "zero denominator in '" + s + "'");
        coef /= Rational(den);
      }
    } else if (!have_coef) {
      fail(errc::parse_error, "term expected in '" + s + "'");
    }
    switch (root) {
      case 2:  return ExactScalar(0, coef, 0, 0);
      case 3:  return ExactScalar(0, 0, coef, 0);
      case 6:  return ExactScalar(0, 0, 0, coef);
      default: return ExactScalar(coef);
    }
  }

  ExactScalar parse() {
    ExactScalar acc;
    int sign = 1;
    if (peek() == '+' || peek() == '-') {
      if (peek() == '-') sign = -1;
      ++pos;
    }
    while (true) {
      ExactScalar t = parse_term();
      acc = (sign > 0) ? acc + t : acc - t;
      if (eof()) break;
      if (peek() == '+') sign = 1;
      else if (peek() == '-') sign = -1;
      else fail(errc::parse_error, "unexpected character '" + std::string(1, peek()) + "' in '" + s + "'");
      ++pos;
      if (eof()) fail(errc::parse_error, "dangling sign in '" + s + "'");
    }
    return acc;
  }
};

}  // namespace detail

inline ExactScalar parse_exact(const std::string& token) {
  detail::ExactParser p(token);
  if (p.eof()) fail(errc::parse_error, "empty exact token");
  return p.parse();
}

inline std::string format_exact(const ExactScalar& x) {
  if (x.is_zero()) return "0";
  std::string out;
  auto emit = [&out](const Rational& coef, const char* root) {
    if (coef == 0) return;
    Rational mag = coef < 0 ? Rational(-coef) : coef;
    if (out.empty()) {
      if (coef < 0) out += "-";
    } else {
      out += (coef < 0) ? "-" : "+";
    }
    if (root == nullptr) {
      out += mag.str();
    } else {
      if (mag != 1) out += mag.str() + "*";
      out += root;
    }
  };
  emit(x.a, nullptr);
  emit(x.b, "sqrt2");
  emit(x.c, "sqrt3");
  emit(x.d, "sqrt6");
  return out;
}

/// Complexification of ExactScalar; used where exact arithmetic meets the
/// complex multiplicities (which are dyadic rationals as doubles).
struct ExactComplex {
  ExactScalar re, im;

  ExactComplex() = default;
  ExactComplex(ExactScalar r) : re(std::move(r)) {}  // NOLINT(runtime/explicit)
  ExactComplex(ExactScalar r, ExactScalar i) : re(std::move(r)), im(std::move(i)) {}

  static ExactComplex from(std::complex<double> z) {
    return ExactComplex(ExactScalar(rational_from_double(z.real())), ExactScalar(rational_from_double(z.imag())));
  }

  bool is_zero() const { return re.is_zero() && im.is_zero(); }

  friend ExactComplex operator+(const ExactComplex& x, const ExactComplex& y) {
    return ExactComplex(x.re + y.re, x.im + y.im);
  }
  friend ExactComplex operator-(const ExactComplex& x, const ExactComplex& y) {
    return ExactComplex(x.re - y.re, x.im - y.im);
  }
  friend ExactComplex operator*(const ExactComplex& x, const ExactComplex& y) {
    return ExactComplex(x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re);
  }
  friend ExactComplex operator*(const ExactComplex& x, const ExactScalar& s) {
    return ExactComplex(x.re * s, x.im * s);
  }
  friend ExactComplex operator/(const ExactComplex& x, const ExactComplex& y) {
    if (y.is_zero()) fail(errc::invalid_argument, "division by zero ExactComplex");
    ExactScalar n = y.re * y.re + y.im * y.im;
    ExactComplex num(x.re * y.re + x.im * y.im, x.im * y.re - x.re * y.im);
    return ExactComplex(num.re / n, num.im / n);
  }
  ExactComplex& operator+=(const ExactComplex& y) { return *this = *this + y; }

  friend bool operator==(const ExactComplex& x, const ExactComplex& y) { return x.re == y.re && x.im == y.im; }

  std::complex<double> to_complex() const { return {re.to_double(), im.to_double()}; }
};

}  // namespace veelab
