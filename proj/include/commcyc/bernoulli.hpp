#pragma once

// Representations of a cycle-count law as
//   C = offset + sum_j multiplier_j * B_j,   B_j ~ Bernoulli(p_j) independent.
//
// Uniform and transposition sources have rational parameters. For the
// one-cycle source the parameters come from the zeros of
// P_M = F_{M+1}^+ - F_{M+1}^-, which all lie on the imaginary axis:
//   P_M(X) = X^{1 + [M even]} prod_j (X^2 + v_j),   v_j > 0,
// and each quadratic factor is the PGF of 2*B with p = 1/(1 + v_j). For
// even M one more term with p = 1 absorbs the extra X factor, so there are
// floor(M/2) terms and offset = M mod 2.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "commcyc/genfun.hpp"

namespace commcyc {

struct BernoulliTerm {
  /// Set when the parameter is known exactly.
  std::optional<Rational> exact;
  double p = 0.0;
  std::uint32_t multiplier = 1;
};

struct RootDiagnostics {
  std::size_t grid_points = 0;
  /// Largest |T(v)| / sum_j |t_j| v^j over the located roots.
  double max_relative_residual = 0.0;
  /// Largest |Re z| over the zeros of P_M / X^{1+[M even]} found by the
  /// complex (Aberth) iteration, which knows nothing about the symmetry.
  double max_real_part = 0.0;
  std::vector<double> squared_moduli;  // v_j = |z_j|^2
};

struct BernoulliDecomposition {
  std::uint32_t offset = 0;
  std::vector<BernoulliTerm> terms;
  std::optional<RootDiagnostics> roots;

  bool is_exact() const {
    return std::all_of(terms.begin(), terms.end(), [](const BernoulliTerm& t) { return t.exact.has_value(); });
  }
};

class RootFindingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline int exact_sign(const std::vector<Rational>& coeffs, double x) {
  Rational xr(x);
  Rational acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * xr + *it;
  return sgn(acc);
}

inline void eval_with_derivative(const std::vector<long double>& c, long double x, long double& f, long double& df,
                                 long double& scale) {
  f = 0;
  df = 0;
  scale = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    df = df * x + f;
    f = f * x + *it;
    scale = scale * std::fabs(x) + std::fabs(*it);
  }
}

/// Locates all positive roots of a polynomial known to have exactly `expected`
/// simple positive roots. Signs are evaluated exactly, so brackets are never
/// lost to cancellation.
inline std::vector<double> positive_real_roots(const std::vector<Rational>& coeffs, std::size_t expected,
                                               RootDiagnostics& diag) {
  std::vector<double> roots;
  if (expected == 0) return roots;
  const std::size_t deg = coeffs.size() - 1;
  if (coeffs[0] == 0) throw RootFindingError("root finder: zero root present after factoring");
  // Cauchy bounds on |root| and on 1/|root|.
  double upper = 0, lower = 0;
  for (std::size_t j = 0; j < deg; ++j) upper = std::max(upper, std::fabs(Rational(coeffs[j] / coeffs[deg]).get_d()));
  for (std::size_t j = 1; j <= deg; ++j) lower = std::max(lower, std::fabs(Rational(coeffs[j] / coeffs[0]).get_d()));
  upper = 2 * (1 + upper);
  lower = 0.5 / (1 + lower);

  std::vector<std::pair<double, double>> brackets;
  for (std::size_t per_root = 64; per_root <= (std::size_t{1} << 16); per_root *= 4) {
    const std::size_t n = per_root * (expected + 1);
    diag.grid_points = n;
    brackets.clear();
    const double ratio = std::log(upper / lower) / static_cast<double>(n);
    double prev_x = lower;
    int prev_s = exact_sign(coeffs, prev_x);
    for (std::size_t i = 1; i <= n; ++i) {
      double x = i == n ? upper : lower * std::exp(ratio * static_cast<double>(i));
      int s = exact_sign(coeffs, x);
      if (s == 0) {
        brackets.emplace_back(x, x);
        // step past the exact root
        s = -prev_s;
      } else if (s != prev_s && prev_s != 0) {
        brackets.emplace_back(prev_x, x);
      }
      prev_x = x;
      prev_s = s;
    }
    if (brackets.size() >= expected) break;
  }
  if (brackets.size() != expected) {
    std::ostringstream os;
    os << "root finder: found " << brackets.size() << " sign changes, expected " << expected << " (grid of "
       << diag.grid_points << " points on [" << lower << ", " << upper << "])";
    throw RootFindingError(os.str());
  }

  std::vector<long double> cl(coeffs.size());
  for (std::size_t j = 0; j < coeffs.size(); ++j) cl[j] = static_cast<long double>(coeffs[j].get_d());
  // The monic rescaling makes the residual relative to the polynomial's size.
  const long double lead = cl.back();
  for (auto& c : cl) c /= lead;

  for (auto [lo, hi] : brackets) {
    if (lo != hi) {
      int slo = exact_sign(coeffs, lo);
      for (int iter = 0; iter < 200; ++iter) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        int sm = exact_sign(coeffs, mid);
        if (sm == 0) {
          lo = hi = mid;
          break;
        }
        if (sm == slo) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
    }
    long double x = 0.5L * (static_cast<long double>(lo) + static_cast<long double>(hi));
    long double f, df, scale;
    for (int iter = 0; iter < 4; ++iter) {
      eval_with_derivative(cl, x, f, df, scale);
      if (df == 0) break;
      long double next = x - f / df;
      if (next < lo || next > hi) break;
      x = next;
    }
    eval_with_derivative(cl, x, f, df, scale);
    double residual = scale > 0 ? static_cast<double>(std::fabs(f) / scale) : 0.0;
    diag.max_relative_residual = std::max(diag.max_relative_residual, residual);
    if (!(residual <= 1e-12)) {
      std::ostringstream os;
      os << "root finder: residual " << residual << " at root " << static_cast<double>(x) << " exceeds 1e-12";
      throw RootFindingError(os.str());
    }
    roots.push_back(static_cast<double>(x));
  }
  return roots;
}

/// Aberth-Ehrlich iteration for all complex zeros of a real polynomial.
inline std::vector<std::complex<long double>> aberth_roots(const std::vector<Rational>& coeffs) {
  using cplx = std::complex<long double>;
  const std::size_t deg = coeffs.size() - 1;
  std::vector<cplx> roots;
  if (deg == 0) return roots;
  std::vector<long double> c(coeffs.size());
  for (std::size_t j = 0; j < coeffs.size(); ++j) c[j] = static_cast<long double>(coeffs[j].get_d());
  const long double lead = c.back();
  for (auto& a : c) a /= lead;
  // Initial guesses on a circle with the geometric mean radius, rotated off the axes.
  long double radius = std::pow(std::fabs(c[0]), 1.0L / static_cast<long double>(deg));
  if (!(radius > 0)) radius = 1;
  const long double pi = std::acos(-1.0L);
  for (std::size_t k = 0; k < deg; ++k) {
    long double ang = 2 * pi * (static_cast<long double>(k) + 0.25L) / static_cast<long double>(deg) + 0.4L;
    roots.push_back(std::polar(radius, ang));
  }
  auto eval = [&](cplx z, cplx& f, cplx& df) {
    f = 0;
    df = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
      df = df * z + f;
      f = f * z + *it;
    }
  };
  for (int iter = 0; iter < 2000; ++iter) {
    long double max_step = 0;
    for (std::size_t k = 0; k < deg; ++k) {
      cplx f, df;
      eval(roots[k], f, df);
      if (f == cplx(0)) continue;
      cplx ratio = f / df;
      cplx sum = 0;
      for (std::size_t j = 0; j < deg; ++j)
        if (j != k) sum += 1.0L / (roots[k] - roots[j]);
      cplx step = ratio / (1.0L - ratio * sum);
      roots[k] -= step;
      max_step = std::max(max_step, std::abs(step) / std::max(1.0L, std::abs(roots[k])));
    }
    if (max_step < 1e-18L) break;
  }
  // Newton polish on each root.
  for (auto& z : roots) {
    for (int iter = 0; iter < 5; ++iter) {
      cplx f, df;
      eval(z, f, df);
      if (df == cplx(0)) break;
      z -= f / df;
    }
  }
  return roots;
}

}  // namespace detail

/// Parameters and diagnostics for the one-cycle law of size M.
inline BernoulliDecomposition one_cycle_bernoulli(std::uint32_t m) {
  require_positive(m);
  // Integer-coefficient P_M; its zeros are those of the PGF.
  RationalPoly pm = rising_factorial(m + 1) - falling_factorial(m + 1);
  const std::size_t low = (m % 2 == 0) ? 2 : 1;
  RationalPoly reduced = pm.divide_by_x_power(low);
  const std::size_t quadratic = static_cast<std::size_t>(reduced.degree()) / 2;

  // T(v) = reduced(i sqrt(v)) up to sign: t_j = (-1)^j r_{2j}
  std::vector<Rational> tv(quadratic + 1);
  for (std::size_t j = 0; j <= quadratic; ++j) {
    if (reduced.coeff(2 * j + 1) != 0) throw RootFindingError("root finder: reduced polynomial is not even");
    tv[j] = (j % 2) ? Rational(-reduced.coeff(2 * j)) : reduced.coeff(2 * j);
  }

  RootDiagnostics diag;
  std::vector<double> vs = detail::positive_real_roots(tv, quadratic, diag);
  diag.squared_moduli = vs;

  if (reduced.degree() > 0) {
    for (const auto& z : detail::aberth_roots(reduced.coefficients()))
      diag.max_real_part = std::max(diag.max_real_part, static_cast<double>(std::fabs(z.real())));
  }

  BernoulliDecomposition d;
  d.offset = m % 2;
  if (m % 2 == 0) d.terms.push_back({Rational(1), 1.0, 2});
  std::vector<double> ps;
  for (double v : vs) ps.push_back(1.0 / (1.0 + v));
  std::sort(ps.begin(), ps.end(), std::greater<>{});
  for (double p : ps) d.terms.push_back({std::nullopt, p, 2});
  d.roots = std::move(diag);
  return d;
}

/// Supported sources: uniform, transpositions, one_cycle.
inline BernoulliDecomposition bernoulli_decomposition(const CyclePGF& pgf) {
  BernoulliDecomposition d;
  switch (pgf.source) {
    case PgfSource::uniform:
      for (std::uint32_t k = 1; k <= pgf.m; ++k) {
        Rational p(Integer(1), Integer(k));
        d.terms.push_back({p, p.get_d(), 1});
      }
      return d;
    case PgfSource::transpositions:
      for (std::uint32_t k = 1; k <= pgf.m; ++k) {
        Rational p(Integer(1), Integer(2 * k - 1));
        d.terms.push_back({p, p.get_d(), 2});
      }
      return d;
    case PgfSource::one_cycle:
      return one_cycle_bernoulli(pgf.m);
    default:
      throw std::invalid_argument("no Bernoulli decomposition for source '" + std::string(to_string(pgf.source)) +
                                  "'");
  }
}

/// t^offset prod_j (1 - p_j + p_j t^multiplier); requires exact parameters.
inline RationalPoly expand_exact(const BernoulliDecomposition& d) {
  RationalPoly out = RationalPoly::monomial(d.offset);
  for (const auto& t : d.terms) {
    if (!t.exact) throw std::invalid_argument("expand_exact: numeric parameter");
    out *= RationalPoly::monomial(t.multiplier, *t.exact) + RationalPoly::constant(1 - *t.exact);
  }
  return out;
}

inline std::vector<long double> expand_numeric(const BernoulliDecomposition& d) {
  std::vector<long double> out(d.offset + 1, 0.0L);
  out[d.offset] = 1.0L;
  for (const auto& t : d.terms) {
    long double p = t.exact ? static_cast<long double>(t.exact->get_d()) : static_cast<long double>(t.p);
    std::vector<long double> next(out.size() + t.multiplier, 0.0L);
    for (std::size_t k = 0; k < out.size(); ++k) {
      next[k] += (1.0L - p) * out[k];
      next[k + t.multiplier] += p * out[k];
    }
    out = std::move(next);
  }
  while (out.size() > 1 && out.back() == 0.0L) out.pop_back();
  return out;
}

/// Largest coefficientwise |expanded - pgf|.
inline double reconstruction_residual(const BernoulliDecomposition& d, const CyclePGF& pgf) {
  auto e = expand_numeric(d);
  const std::size_t n = std::max<std::size_t>(e.size(), pgf.poly.coefficients().size());
  long double worst = 0;
  for (std::size_t k = 0; k < n; ++k) {
    long double a = k < e.size() ? e[k] : 0.0L;
    long double b = static_cast<long double>(pgf.poly.coeff(k).get_d());
    worst = std::max(worst, std::fabs(a - b));
  }
  return static_cast<double>(worst);
}

}  // namespace commcyc
