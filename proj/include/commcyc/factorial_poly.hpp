#pragma once

// Rising and falling factorial polynomials and the identities built on them.
//
//   rising_factorial(n)  = X (X+1) ... (X+n-1)
//   falling_factorial(n) = X (X-1) ... (X-n+1)
//
// Both are 1 for n = 0. All integer quantities (factorials, binomials,
// Gamma ratios at integer points) are exact; no floating Gamma is used.

#include <cstdint>
#include <stdexcept>

#include "commcyc/rational_poly.hpp"

namespace commcyc {

inline Integer factorial(unsigned long n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

inline Integer binomial(unsigned long n, unsigned long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

/// Gamma(k+m)/Gamma(k) = k (k+1) ... (k+m-1) for integer k >= 1.
inline Integer gamma_ratio(unsigned long k, unsigned long m) {
  Integer r = 1;
  for (unsigned long j = 0; j < m; ++j) r *= k + j;
  return r;
}

/// Gamma(a+m)/Gamma(a) = a (a+1) ... (a+m-1) for rational a > 0.
inline Rational rising_product(const Rational& a, unsigned long m) {
  Rational r = 1;
  for (unsigned long j = 0; j < m; ++j) r *= a + j;
  return r;
}

inline RationalPoly rising_factorial(unsigned long n) {
  RationalPoly p = RationalPoly::constant(1);
  for (unsigned long j = 0; j < n; ++j) p *= RationalPoly({Rational(static_cast<long>(j)), 1});
  return p;
}

inline RationalPoly falling_factorial(unsigned long n) {
  RationalPoly p = RationalPoly::constant(1);
  for (unsigned long j = 0; j < n; ++j) p *= RationalPoly({Rational(-static_cast<long>(j)), 1});
  return p;
}

/// P(-X)
inline RationalPoly reflect(const RationalPoly& p) { return p.scaled_argument(-1); }

/// P(X) - P(X-1), computed by a binomial shift of the coefficients.
inline RationalPoly discrete_difference(const RationalPoly& p) {
  if (p.is_zero()) return {};
  const auto& a = p.coefficients();
  const std::size_t n = a.size();
  // P(X-1) = sum_i a_i sum_j C(i,j) X^j (-1)^(i-j)
  std::vector<Rational> shifted(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j <= i; ++j) {
      Rational term = a[i] * Rational(binomial(i, j));
      if ((i - j) % 2) term = -term;
      shifted[j] += term;
    }
  }
  return p - RationalPoly(std::move(shifted));
}

/// Degree 2M+1 polynomial with Q(0) = 0 whose discrete difference is the
/// square of rising_factorial(M):
///   sum_{k=0}^{M} (-1)^k k!/(2M-k+1) C(M,k)^2 rising_factorial(2M-k+1).
inline RationalPoly q_polynomial(unsigned long m) {
  if (m == 0) throw std::invalid_argument("q_polynomial: M must be at least 1");
  RationalPoly q;
  for (unsigned long k = 0; k <= m; ++k) {
    Integer b = binomial(m, k);
    Rational c(Integer(factorial(k) * b * b), Integer(2 * m - k + 1));
    c.canonicalize();
    if (k % 2) c = -c;
    q += rising_factorial(2 * m - k + 1) * c;
  }
  return q;
}

/// sum_{k=0}^{m} C(m,k) C(n,k) k! falling_factorial(m+n-k); equals
/// falling_factorial(m) * falling_factorial(n).
inline RationalPoly connection_expand(unsigned long m, unsigned long n) {
  if (m > n) throw std::invalid_argument("connection_expand: requires m <= n");
  RationalPoly out;
  for (unsigned long k = 0; k <= m; ++k) {
    Rational c(binomial(m, k) * binomial(n, k) * factorial(k));
    out += falling_factorial(m + n - k) * c;
  }
  return out;
}

}  // namespace commcyc
