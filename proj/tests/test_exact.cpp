#include <catch2/catch_amalgamated.hpp>

#include "veelab/exact.hpp"

using namespace veelab;

TEST_CASE("field arithmetic in Q(sqrt2,sqrt3)") {
  ExactScalar s2 = ExactScalar::sqrt2();
  ExactScalar s3 = ExactScalar::sqrt3();
  ExactScalar s6 = ExactScalar::sqrt6();

  CHECK(s2 * s2 == ExactScalar(2));
  CHECK(s3 * s3 == ExactScalar(3));
  CHECK(s6 * s6 == ExactScalar(6));
  CHECK(s2 * s3 == s6);
  CHECK(s2 * s6 == ExactScalar(2) * s3);
  CHECK(s3 * s6 == ExactScalar(3) * s2);

  ExactScalar one_plus = ExactScalar(1) + s2;
  ExactScalar one_minus = ExactScalar(1) - s2;
  CHECK(one_plus * one_minus == ExactScalar(-1));

  ExactScalar x(Rational(3, 7), Rational(-1, 2), Rational(5), Rational(-2, 3));
  CHECK(x * x.inverse() == ExactScalar(1));
  CHECK((x / x) == ExactScalar(1));
  CHECK(x - x == ExactScalar());
  CHECK((x + x) == ExactScalar(2) * x);
}

TEST_CASE("exact sign determination") {
  auto sgn = [](const ExactScalar& v) { return exact_sign(v); };
  CHECK(sgn(ExactScalar()) == 0);
  CHECK(sgn(ExactScalar(Rational(3, 2)) - ExactScalar::sqrt2()) > 0);   // 1.5 > 1.414
  CHECK(sgn(ExactScalar::sqrt2() - ExactScalar(Rational(3, 2))) < 0);
  // mixed-sign branches: sqrt2 + sqrt3 vs rationals straddling 3.146
  ExactScalar s23 = ExactScalar::sqrt2() + ExactScalar::sqrt3();
  CHECK(sgn(s23 - ExactScalar(Rational(17, 6))) > 0);
  CHECK(sgn(s23 - ExactScalar(Rational(10, 3))) < 0);
  // sqrt6 - sqrt2 - 1 is barely positive (2.4495 vs 2.4142)
  CHECK(sgn(ExactScalar::sqrt6() - ExactScalar::sqrt2() - ExactScalar(1)) > 0);
  CHECK(sgn(-(ExactScalar::sqrt6() - ExactScalar::sqrt2() - ExactScalar(1))) < 0);
}

TEST_CASE("exact token parsing") {
  ExactScalar half_half_s3 = parse_exact("1/2+sqrt3/2");
  CHECK(half_half_s3 == ExactScalar(Rational(1, 2), 0, Rational(1, 2), 0));
  CHECK(parse_exact(" 1/2 + 1/2 * sqrt3 ") == half_half_s3);
  CHECK(parse_exact("-sqrt2") == ExactScalar(0, -1, 0, 0));
  CHECK(parse_exact("2*sqrt2/3") == ExactScalar(0, Rational(2, 3), 0, 0));
  CHECK(parse_exact("sqrt6/6") == ExactScalar(0, 0, 0, Rational(1, 6)));
  CHECK(parse_exact("3") == ExactScalar(3));
  CHECK(parse_exact("-5/4") == ExactScalar(Rational(-5, 4)));
  CHECK(parse_exact("1-sqrt2+sqrt3-sqrt6") == ExactScalar(1, -1, 1, -1));
  CHECK(parse_exact("0") == ExactScalar());

  CHECK_THROWS_AS(parse_exact("0.7071067811865476"), error);  // decimals are numeric
  CHECK_THROWS_AS(parse_exact("sqrt5"), error);
  CHECK_THROWS_AS(parse_exact("1+"), error);
  CHECK_THROWS_AS(parse_exact("foo"), error);
  CHECK_THROWS_AS(parse_exact(""), error);

  // round trip through the formatter
  ExactScalar x(Rational(3, 7), Rational(-1, 2), Rational(5), Rational(-2, 3));
  CHECK(parse_exact(format_exact(x)) == x);
  CHECK(format_exact(ExactScalar()) == "0");
  CHECK(format_exact(half_half_s3) == "1/2+1/2*sqrt3");
}

TEST_CASE("doubles convert to rationals exactly") {
  CHECK(rational_from_double(0.5) == Rational(1, 2));
  CHECK(rational_from_double(-2.0) == Rational(-2));
  CHECK(rational_from_double(0.1) == Rational(BigInt("3602879701896397"), BigInt("36028797018963968")));
}

TEST_CASE("square roots of rationals inside the field") {
  CHECK(exact_sqrt_rational(Rational(2)) == ExactScalar::sqrt2());
  CHECK(exact_sqrt_rational(Rational(4)) == ExactScalar(2));
  CHECK(exact_sqrt_rational(Rational(8)) == ExactScalar(0, 2, 0, 0));
  CHECK(exact_sqrt_rational(Rational(3, 2)) == ExactScalar(0, 0, 0, Rational(1, 2)));  // sqrt(3/2) = sqrt6/2
  CHECK(exact_sqrt_rational(Rational(2, 3)) == ExactScalar(0, 0, 0, Rational(1, 3)));
  CHECK(exact_sqrt_rational(Rational(9, 4)) == ExactScalar(Rational(3, 2)));
  CHECK_FALSE(exact_sqrt_rational(Rational(5)).has_value());
  CHECK_FALSE(exact_sqrt_rational(Rational(-2)).has_value());
}

TEST_CASE("complexified exact scalars") {
  ExactComplex i(ExactScalar(0), ExactScalar(1));
  CHECK(i * i == ExactComplex(ExactScalar(-1)));
  ExactComplex z = ExactComplex::from(std::complex<double>(0.75, -1.5));
  CHECK(z.re == ExactScalar(Rational(3, 4)));
  CHECK(z.im == ExactScalar(Rational(-3, 2)));
  ExactComplex w(ExactScalar(1) + ExactScalar::sqrt2(), ExactScalar(2));
  CHECK(w / w == ExactComplex(ExactScalar(1)));
}
