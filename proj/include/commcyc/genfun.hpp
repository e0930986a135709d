#pragma once

// Closed-form probability generating functions E[t^C] for the cycle count C
// of a uniform permutation, of uniform (co-)alternating permutations, and of
// commutators [s, tau] with tau a single cycle, two equal cycles or a product
// of disjoint transpositions.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "commcyc/factorial_poly.hpp"
#include "commcyc/rational_poly.hpp"

namespace commcyc {

enum class PgfSource { uniform, alternating, co_alternating, one_cycle, two_cycles, transpositions, oracle };

inline std::string_view to_string(PgfSource s) {
  switch (s) {
    case PgfSource::uniform: return "uniform";
    case PgfSource::alternating: return "alternating";
    case PgfSource::co_alternating: return "co_alternating";
    case PgfSource::one_cycle: return "one_cycle";
    case PgfSource::two_cycles: return "two_cycles";
    case PgfSource::transpositions: return "transpositions";
    case PgfSource::oracle: return "oracle";
  }
  return "unknown";
}

inline PgfSource parse_pgf_source(std::string_view s) {
  for (auto src : {PgfSource::uniform, PgfSource::alternating, PgfSource::co_alternating, PgfSource::one_cycle,
                   PgfSource::two_cycles, PgfSource::transpositions, PgfSource::oracle})
    if (to_string(src) == s) return src;
  throw std::invalid_argument("unknown PGF source '" + std::string(s) + "'");
}

/// True for sources whose statistic is the cycle count of a commutator.
inline bool is_commutator_source(PgfSource s) {
  return s == PgfSource::one_cycle || s == PgfSource::two_cycles || s == PgfSource::transpositions;
}

struct CyclePGF {
  RationalPoly poly;
  /// The family parameter M (for two_cycles and transpositions the ground set has 2M points).
  std::uint32_t m = 0;
  std::uint32_t ground_size = 0;
  PgfSource source = PgfSource::uniform;

  friend bool operator==(const CyclePGF&, const CyclePGF&) = default;
};

inline void require_positive(std::uint32_t m) {
  if (m == 0) throw std::invalid_argument("M must be at least 1");
}

/// F_M^+(t) / M!
inline CyclePGF uniform_cycles_pgf(std::uint32_t m) {
  require_positive(m);
  return {rising_factorial(m) / Rational(factorial(m)), m, m, PgfSource::uniform};
}

/// (F_M^+(t) +- F_M^-(t)) / M!, "+" for even permutations and "-" for odd ones.
inline CyclePGF alternating_pgf(std::uint32_t m, bool complement) {
  require_positive(m);
  if (complement && m == 1) throw std::invalid_argument("alternating_pgf: no odd permutations on one point");
  if (m == 1) return {RationalPoly::x(), m, m, PgfSource::alternating};
  RationalPoly p = complement ? rising_factorial(m) - falling_factorial(m) : rising_factorial(m) + falling_factorial(m);
  return {p / Rational(factorial(m)), m, m, complement ? PgfSource::co_alternating : PgfSource::alternating};
}

/// tau = (1 ... M):  (F_{M+1}^+(t) - F_{M+1}^-(t)) / (M+1)!
inline CyclePGF one_cycle_pgf(std::uint32_t m) {
  require_positive(m);
  RationalPoly p = (rising_factorial(m + 1) - falling_factorial(m + 1)) / Rational(factorial(m + 1));
  return {std::move(p), m, m, PgfSource::one_cycle};
}

/// tau = (1 ... M)(M+1 ... 2M) on 2M points.
inline CyclePGF two_cycles_pgf(std::uint32_t m) {
  require_positive(m);
  const Rational two_over = ratio(2, factorial(2 * m));
  RationalPoly first = (rising_factorial(2 * m + 1) - falling_factorial(2 * m + 1)) / Rational(factorial(2 * m + 1));
  RationalPoly half = (rising_factorial(m + 1) - falling_factorial(m + 1)) / Rational(m + 1);
  RationalPoly q = q_polynomial(m);
  RationalPoly p = first + (half * half) * two_over - (q + reflect(q)) * two_over;
  return {std::move(p), m, 2 * m, PgfSource::two_cycles};
}

/// tau = (1 2)(3 4)...(2M-1 2M) on 2M points: prod_{k=1}^{M} (t^2 + 2k - 2)/(2k - 1).
inline CyclePGF transpositions_pgf(std::uint32_t m) {
  require_positive(m);
  RationalPoly p = RationalPoly::constant(1);
  for (std::uint32_t k = 1; k <= m; ++k) {
    p *= RationalPoly({Rational(2 * k - 2), 0, 1});
    p /= Rational(2 * k - 1);
  }
  return {std::move(p), m, 2 * m, PgfSource::transpositions};
}

/// The alternative closed form 2^M M!/(2M)! F_M^+(t^2/2). Its total mass is
/// 2^-M, so it is NOT a probability generating function; the correct
/// prefactor is 4^M M!/(2M)!. Kept so the discrepancy stays checkable.
inline RationalPoly transpositions_pgf_alternative_prefactor(std::uint32_t m) {
  require_positive(m);
  Rational pre(Integer(1) << m, Integer(1));
  pre *= ratio(factorial(m), factorial(2 * m));
  pre.canonicalize();
  return rising_factorial(m).scaled_argument(Rational(1, 2)).power_argument(2) * pre;
}

/// 4^M M!/(2M)! F_M^+(t^2/2), algebraically equal to transpositions_pgf(M).
inline RationalPoly transpositions_pgf_rising_form(std::uint32_t m) {
  require_positive(m);
  Rational pre(Integer(1) << (2 * m), Integer(1));
  pre *= ratio(factorial(m), factorial(2 * m));
  pre.canonicalize();
  return rising_factorial(m).scaled_argument(Rational(1, 2)).power_argument(2) * pre;
}

/// Mean cycle count, P'(1).
inline Rational pgf_mean(const CyclePGF& pgf) { return pgf.poly.derivative().eval(1); }

struct PgfValidation {
  bool normalized = false;
  bool nonnegative = false;
  bool zero_constant_term = false;
  bool parity_support = false;
  std::vector<std::string> failures;

  bool ok() const noexcept { return failures.empty(); }
};

/// Checks normalization, nonnegativity, zero constant term and, for
/// commutator sources, that only powers t^k with k = ground_size (mod 2) occur.
inline PgfValidation validate_pgf(const CyclePGF& pgf) {
  PgfValidation v;
  const auto& c = pgf.poly.coefficients();
  Rational total = pgf.poly.eval(1);
  v.normalized = total == 1;
  if (!v.normalized) v.failures.push_back("mass at t=1 is " + rational_to_string(total) + ", expected 1");
  v.nonnegative = true;
  for (std::size_t k = 0; k < c.size(); ++k)
    if (c[k] < 0) {
      v.nonnegative = false;
      v.failures.push_back("negative coefficient at t^" + std::to_string(k));
    }
  v.zero_constant_term = pgf.poly.coeff(0) == 0;
  if (!v.zero_constant_term) v.failures.push_back("nonzero constant term");
  v.parity_support = true;
  if (is_commutator_source(pgf.source) || pgf.source == PgfSource::alternating) {
    for (std::size_t k = 0; k < c.size(); ++k)
      if (c[k] != 0 && (k % 2) != (pgf.ground_size % 2)) {
        v.parity_support = false;
        v.failures.push_back("t^" + std::to_string(k) + " has parity opposite to the ground set");
      }
  } else if (pgf.source == PgfSource::co_alternating) {
    for (std::size_t k = 0; k < c.size(); ++k)
      if (c[k] != 0 && (k % 2) == (pgf.ground_size % 2)) {
        v.parity_support = false;
        v.failures.push_back("t^" + std::to_string(k) + " has the parity of an even permutation");
      }
  }
  return v;
}

}  // namespace commcyc
