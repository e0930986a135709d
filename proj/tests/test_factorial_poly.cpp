#include <gtest/gtest.h>

#include <random>

#include "commcyc/factorial_poly.hpp"

using namespace commcyc;

namespace {

RationalPoly poly(std::initializer_list<long> c) {
  std::vector<Rational> v;
  for (long x : c) v.emplace_back(x);
  return RationalPoly(std::move(v));
}

// Direct products, independent of the polynomial routines.
Rational rising_direct(const Rational& x, unsigned n) {
  Rational r = 1;
  for (unsigned j = 0; j < n; ++j) r *= x + j;
  return r;
}

Rational falling_direct(const Rational& x, unsigned n) {
  Rational r = 1;
  for (unsigned j = 0; j < n; ++j) r *= x - j;
  return r;
}

Integer int_factorial(unsigned n) {
  Integer r = 1;
  for (unsigned j = 2; j <= n; ++j) r *= j;
  return r;
}

}  // namespace

TEST(RationalPoly, NormalizationAndDegree) {
  RationalPoly z({0, 0});
  EXPECT_TRUE(z.is_zero());
  EXPECT_EQ(z.degree(), -1);
  RationalPoly p({Rational(2, 4), 0, 0});
  EXPECT_EQ(p.degree(), 0);
  EXPECT_EQ(p.coeff(0).get_num(), 1);
  EXPECT_EQ(p.coeff(0).get_den(), 2);
  EXPECT_EQ(p.coeff(5), 0);
}

TEST(RationalPoly, Arithmetic) {
  auto p = poly({1, 2, 3});
  EXPECT_EQ(p + RationalPoly{}, p);
  EXPECT_EQ(p - p, RationalPoly{});
  // (X^2 + X)(X^2 - X) = X^4 - X^2
  EXPECT_EQ(poly({0, 1, 1}) * poly({0, -1, 1}), poly({0, 0, -1, 0, 1}));
  EXPECT_EQ(p * Rational(0), RationalPoly{});
  EXPECT_EQ(p / Rational(2), RationalPoly({Rational(1, 2), 1, Rational(3, 2)}));
  EXPECT_THROW(p / Rational(0), std::domain_error);
}

TEST(RationalPoly, MultiplicationIsEvaluationHomomorphism) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<long> coef(-20, 20);
  std::uniform_int_distribution<int> deg(0, 7);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Rational> a(deg(rng) + 1), b(deg(rng) + 1);
    for (auto& c : a) c = Rational(coef(rng), 1 + std::abs(coef(rng)));
    for (auto& c : b) c = Rational(coef(rng), 1 + std::abs(coef(rng)));
    RationalPoly pa(a), pb(b);
    Rational x(coef(rng), 1 + std::abs(coef(rng)));
    x.canonicalize();
    EXPECT_EQ((pa * pb).eval(x), pa.eval(x) * pb.eval(x));
    EXPECT_EQ((pa + pb).eval(x), pa.eval(x) + pb.eval(x));
    EXPECT_EQ((pa - pb).eval(x), pa.eval(x) - pb.eval(x));
  }
}

TEST(RationalPoly, Rendering) {
  EXPECT_EQ(poly({0, 1, 0, 1}).to_string(), "t^3 + t");
  EXPECT_EQ((poly({0, 1, 0, 1}) / Rational(2)).to_string(), "1/2*t^3 + 1/2*t");
  EXPECT_EQ(poly({-1, 0, -2}).to_string("X"), "-2*X^2 - 1");
  EXPECT_EQ(RationalPoly{}.to_string(), "0");
  auto p = poly({0, 1, 3}) / Rational(6);
  EXPECT_EQ(p.coefficient_strings(), (std::vector<std::string>{"0/1", "1/6", "1/2"}));
  EXPECT_EQ(RationalPoly::from_coefficient_strings(p.coefficient_strings()), p);
  EXPECT_EQ(RationalPoly::from_coefficient_strings({"2/4", "-3"}), RationalPoly({Rational(1, 2), -3}));
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("x"), std::invalid_argument);
}

TEST(FactorialPoly, RisingFactorial) {
  EXPECT_EQ(rising_factorial(0), poly({1}));
  EXPECT_EQ(rising_factorial(1), poly({0, 1}));
  EXPECT_EQ(rising_factorial(3), poly({0, 2, 3, 1}));
}

TEST(FactorialPoly, FallingFactorial) {
  EXPECT_EQ(falling_factorial(0), poly({1}));
  EXPECT_EQ(falling_factorial(2), poly({0, -1, 1}));
  EXPECT_EQ(falling_factorial(4), poly({0, -6, 11, -6, 1}));
}

TEST(FactorialPoly, AgreeWithDirectProductsAtManyPoints) {
  for (unsigned n = 0; n <= 12; ++n) {
    auto r = rising_factorial(n);
    auto f = falling_factorial(n);
    for (long x = -6; x <= 14; ++x) {
      EXPECT_EQ(r.eval(x), rising_direct(x, n));
      EXPECT_EQ(f.eval(x), falling_direct(x, n));
    }
    EXPECT_EQ(r.eval(Rational(7, 3)), rising_direct(Rational(7, 3), n));
  }
}

TEST(FactorialPoly, Reflect) {
  EXPECT_EQ(reflect(poly({1, 0, 3})), poly({1, 0, 3}));
  EXPECT_EQ(reflect(poly({0, 0, 0, 1})), poly({0, 0, 0, -1}));
  for (unsigned n = 1; n <= 8; ++n) {
    Rational sign = n % 2 ? -1 : 1;
    EXPECT_EQ(reflect(rising_factorial(n)), falling_factorial(n) * sign) << n;
  }
}

TEST(FactorialPoly, DiscreteDifference) {
  EXPECT_EQ(discrete_difference(poly({5})), RationalPoly{});
  EXPECT_EQ(discrete_difference(poly({0, 0, 1})), poly({-1, 2}));
  for (unsigned n = 1; n <= 12; ++n)
    EXPECT_EQ(discrete_difference(rising_factorial(n)), rising_factorial(n - 1) * Rational(n)) << n;
  // Pointwise definition on random polynomials.
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<long> coef(-9, 9);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Rational> c(1 + trial % 9);
    for (auto& x : c) x = coef(rng);
    RationalPoly p(c);
    auto d = discrete_difference(p);
    for (long x = -3; x <= 3; ++x) EXPECT_EQ(d.eval(x), p.eval(x) - p.eval(x - 1));
    if (p.degree() > 0) EXPECT_EQ(d.degree(), p.degree() - 1);
  }
}

TEST(FactorialPoly, QPolynomialSmall) {
  // M = 1: F_3^+/3 - F_2^+/2
  EXPECT_EQ(q_polynomial(1), rising_factorial(3) / Rational(3) - rising_factorial(2) / Rational(2));
  EXPECT_EQ(q_polynomial(1).eval(1), 1);
  EXPECT_EQ(q_polynomial(1).eval(2), 5);
  EXPECT_THROW(q_polynomial(0), std::invalid_argument);
}

TEST(FactorialPoly, QPolynomialCharacterization) {
  for (unsigned m = 1; m <= 8; ++m) {
    auto q = q_polynomial(m);
    EXPECT_EQ(q.degree(), static_cast<long>(2 * m + 1));
    EXPECT_EQ(q.eval(0), 0);
    auto f = rising_factorial(m);
    EXPECT_EQ(discrete_difference(q), f * f) << m;
  }
}

TEST(FactorialPoly, QPolynomialMatchesSquaredGammaRatioSums) {
  for (unsigned m = 1; m <= 8; ++m) {
    auto q = q_polynomial(m);
    Integer sum = 0;
    for (unsigned k = 1; k <= 12; ++k) {
      // Gamma(k+M)/Gamma(k) = (k+M-1)!/(k-1)!
      Integer ratio = int_factorial(k + m - 1) / int_factorial(k - 1);
      sum += ratio * ratio;
      EXPECT_EQ(q.eval(k), Rational(sum)) << "M=" << m << " N=" << k;
    }
  }
}

TEST(FactorialPoly, ConnectionExpand) {
  EXPECT_EQ(connection_expand(0, 5), falling_factorial(5));
  EXPECT_EQ(connection_expand(1, 1), poly({0, 0, 1}));
  EXPECT_EQ(connection_expand(2, 2), poly({0, -1, 1}) * poly({0, -1, 1}));
  for (unsigned n = 0; n <= 8; ++n)
    for (unsigned m = 0; m <= n; ++m)
      EXPECT_EQ(connection_expand(m, n), falling_factorial(m) * falling_factorial(n)) << m << "," << n;
  EXPECT_THROW(connection_expand(3, 2), std::invalid_argument);
}

TEST(FactorialPoly, IntegerValuesAsGammaSums) {
  EXPECT_EQ(rising_factorial(4).eval(1), 24);
  // F_4^+(2) = 4 (Gamma(4)/Gamma(1) + Gamma(5)/Gamma(2)) = 4 (6 + 24)
  EXPECT_EQ(rising_factorial(4).eval(2), 120);
  for (unsigned n = 1; n <= 12; ++n)
    for (unsigned k = 1; k <= 12; ++k) {
      Integer sum = 0;
      for (unsigned j = 1; j <= k; ++j) sum += int_factorial(n + j - 2) / int_factorial(j - 1);
      EXPECT_EQ(rising_factorial(n).eval(k), Rational(sum * n)) << n << "," << k;
    }
}

TEST(FactorialPoly, IntegerHelpers) {
  EXPECT_EQ(factorial(0), 1);
  EXPECT_EQ(factorial(10), 3628800);
  EXPECT_EQ(binomial(10, 3), 120);
  EXPECT_EQ(gamma_ratio(2, 3), 24);
  EXPECT_EQ(gamma_ratio(5, 0), 1);
  EXPECT_EQ(rising_product(Rational(1, 2), 2), Rational(3, 4));
}
