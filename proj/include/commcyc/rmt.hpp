#pragma once

// Monte-Carlo checks of moment identities for unscaled Gaussian matrices
// (complex entries with E|G_ij|^2 = 1, real entries with variance 1).
//
// Each estimator draws `samples` values split over a fixed number of
// partitions. Partition p uses substream p of the seed, and partitions are
// merged in order, so results depend on (seed, partitions) only and never on
// the number of worker threads.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "commcyc/genfun.hpp"
#include "commcyc/oracle.hpp"
#include "commcyc/random.hpp"

namespace commcyc {

enum class Ensemble { complex_gaussian, real_gaussian, pair_complex_gaussian };

struct MatrixSampleConfig {
  std::uint32_t n = 1;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 42;
  Ensemble ensemble = Ensemble::complex_gaussian;
  std::uint32_t partitions = 8;
  /// 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
  /// Largest ground set for which the oracle may supply an exact target.
  std::uint32_t oracle_cap = default_enumeration_cap;
};

struct MomentReport {
  std::string identity;
  std::uint32_t n = 0;
  std::uint32_t m = 0;
  std::uint32_t k = 0;
  double estimate = 0;
  double std_error = 0;
  std::optional<Rational> target;
  double z = 0;
  /// Imaginary part, for identities about complex means.
  std::optional<double> estimate_imag;
  std::optional<double> std_error_imag;
  std::optional<double> z_imag;
  double excess_kurtosis = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::uint32_t partitions = 0;
  /// How the exact target was obtained, or why it is missing.
  std::string target_source;

  double target_value() const { return target ? target->get_d() : std::numeric_limits<double>::quiet_NaN(); }

  /// |z| (and |z_imag|) within the threshold; false without a target.
  bool passes(double threshold) const {
    if (!target) return false;
    if (!(std::fabs(z) <= threshold)) return false;
    if (z_imag && !(std::fabs(*z_imag) <= threshold)) return false;
    return true;
  }
};

inline double z_score(double estimate, double target, double se) {
  if (se > 0) return (estimate - target) / se;
  return estimate == target ? 0.0 : std::numeric_limits<double>::infinity();
}

/// z-score of the difference of two independent estimates.
inline double combined_z(const MomentReport& a, const MomentReport& b) {
  double se = std::sqrt(a.std_error * a.std_error + b.std_error * b.std_error);
  return z_score(a.estimate, b.estimate, se);
}

using Complex = std::complex<double>;

/// Square complex matrix, row-major.
struct ComplexMatrix {
  std::uint32_t n = 0;
  std::vector<Complex> a;

  explicit ComplexMatrix(std::uint32_t size = 0) : n(size), a(std::size_t{size} * size) {}
  Complex& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }

  Complex trace() const {
    Complex t = 0;
    for (std::size_t i = 0; i < n; ++i) t += (*this)(i, i);
    return t;
  }
};

inline void multiply_into(const ComplexMatrix& x, const ComplexMatrix& y, ComplexMatrix& out) {
  const std::size_t n = x.n;
  std::fill(out.a.begin(), out.a.end(), Complex(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const Complex xik = x(i, k);
      for (std::size_t j = 0; j < n; ++j) out(i, j) += xik * y(k, j);
    }
}

/// tr(x y) without forming the product.
inline Complex trace_of_product(const ComplexMatrix& x, const ComplexMatrix& y) {
  Complex t = 0;
  for (std::size_t i = 0; i < x.n; ++i)
    for (std::size_t j = 0; j < x.n; ++j) t += x(i, j) * y(j, i);
  return t;
}

/// Fills with i.i.d. (X + iY)/sqrt(2), X, Y standard normal.
template <class Gen>
void fill_complex_gaussian(ComplexMatrix& g, Gen& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const double s = 1.0 / std::sqrt(2.0);
  for (auto& z : g.a) {
    double re = normal(rng);
    double im = normal(rng);
    z = Complex(re * s, im * s);
  }
}

/// tr(g^power) using `power - 1` products; `scratch` and `acc` are workspace.
inline Complex trace_power(const ComplexMatrix& g, std::uint32_t power, ComplexMatrix& acc, ComplexMatrix& scratch) {
  if (power == 1) return g.trace();
  acc = g;
  for (std::uint32_t p = 2; p < power; ++p) {
    multiply_into(acc, g, scratch);
    std::swap(acc.a, scratch.a);
  }
  return trace_of_product(acc, g);
}

namespace detail {

struct ComplexMoments {
  RunningMoments re, im;
  void merge(const ComplexMoments& o) {
    re.merge(o.re);
    im.merge(o.im);
  }
};

/// Runs body(rng, count) -> Acc on every partition and merges in partition order.
template <class Acc, class Body>
Acc run_partitions(std::uint64_t samples, std::uint64_t seed, std::uint32_t partitions, unsigned threads,
                   Body&& body) {
  if (samples == 0) throw std::invalid_argument("samples must be at least 1");
  if (partitions == 0) throw std::invalid_argument("partitions must be at least 1");
  std::vector<Acc> parts(partitions);
  auto work = [&](std::uint32_t p) {
    std::uint64_t count = samples / partitions + (p < samples % partitions ? 1 : 0);
    if (count == 0) return;
    Rng rng = make_stream(seed, p);
    parts[p] = body(rng, count);
  };
  unsigned workers = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, partitions);
  if (workers <= 1) {
    for (std::uint32_t p = 0; p < partitions; ++p) work(p);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (std::uint32_t p = w; p < partitions; p += workers) work(p);
      });
    for (auto& t : pool) t.join();
  }
  Acc total;
  for (const auto& a : parts) total.merge(a);
  return total;
}

inline double ipow(double x, std::uint32_t e) {
  double r = 1;
  while (e) {
    if (e & 1) r *= x;
    x *= x;
    e >>= 1;
  }
  return r;
}

inline void fill_report(MomentReport& r, const RunningMoments& acc, std::uint64_t seed, std::uint32_t partitions) {
  r.estimate = acc.mean();
  r.std_error = acc.std_error();
  r.excess_kurtosis = acc.excess_kurtosis();
  r.samples = acc.count();
  r.seed = seed;
  r.partitions = partitions;
  if (r.target) r.z = z_score(r.estimate, r.target->get_d(), r.std_error);
}

inline void fill_complex_report(MomentReport& r, const ComplexMoments& acc, std::uint64_t seed,
                                std::uint32_t partitions) {
  fill_report(r, acc.re, seed, partitions);
  r.estimate_imag = acc.im.mean();
  r.std_error_imag = acc.im.std_error();
  if (r.target) r.z_imag = z_score(*r.estimate_imag, 0.0, *r.std_error_imag);
}

}  // namespace detail

/// Exact M! E_s[N^C([s, tau])] for tau of the given cycle type, M = |tau|.
/// Uses a closed form when one applies, the oracle when M is within `cap`.
struct ExactTarget {
  std::optional<Rational> value;
  std::string source;
};

/// The solved closed form matching a cycle type, if any.
inline std::optional<CyclePGF> closed_form_for_type(const CycleType& type) {
  const auto& parts = type.parts();
  if (parts.empty()) return std::nullopt;
  const std::uint32_t m = parts.front();
  const auto k = static_cast<std::uint32_t>(parts.size());
  if (!std::all_of(parts.begin(), parts.end(), [m](std::uint32_t c) { return c == m; })) return std::nullopt;
  if (m == 1) return CyclePGF{RationalPoly::monomial(k), k, k, PgfSource::oracle};
  if (k == 1) return one_cycle_pgf(m);
  if (m == 2) return transpositions_pgf(k);
  if (k == 2) return two_cycles_pgf(m);
  return std::nullopt;
}

inline std::string closed_form_label(const CycleType& type) {
  const auto& parts = type.parts();
  if (parts.front() == 1) return "closed-form: identity tau";
  if (parts.size() == 1) return "closed-form: one cycle";
  if (parts.front() == 2) return "closed-form: transpositions";
  return "closed-form: two cycles";
}

inline ExactTarget cycle_type_target(std::uint32_t n, const CycleType& type,
                                     std::uint32_t cap = default_enumeration_cap) {
  if (n == 0) throw std::invalid_argument("N must be at least 1");
  if (type.size() == 0) throw std::invalid_argument("cycle type must be nonempty");
  const std::uint32_t total = type.size();
  std::optional<CyclePGF> pgf = closed_form_for_type(type);
  std::string source;
  if (pgf) {
    source = closed_form_label(type);
  } else if (total <= std::min(cap, hard_enumeration_cap)) {
    auto d = exact_commutator_distribution(canonical_tau(type),
                                           EnumerationOptions{std::min(cap, hard_enumeration_cap), 0});
    pgf = distribution_to_pgf(d);
    source = "oracle enumeration";
  } else {
    return {std::nullopt, "no exact reference: no closed form and M above the enumeration cap"};
  }
  return {Rational(factorial(total)) * pgf->poly.eval(Rational(n)), source};
}

/// Target for K cycles of length m.
inline ExactTarget trace_power_target(std::uint32_t n, std::uint32_t m, std::uint32_t k,
                                      std::uint32_t cap = default_enumeration_cap) {
  if (n == 0 || m == 0 || k == 0) throw std::invalid_argument("N, m and K must be at least 1");
  return cycle_type_target(n, CycleType(std::vector<std::uint32_t>(k, m)), cap);
}

/// E prod_j |tr G^{c_j}|^2 over the cycle lengths c_j of the type, by direct
/// simulation of complex Gaussian matrices.
inline MomentReport mc_cycle_type_moment(const MatrixSampleConfig& cfg, const CycleType& type) {
  if (cfg.ensemble != Ensemble::complex_gaussian)
    throw std::invalid_argument("mc_cycle_type_moment: requires the complex Gaussian ensemble");
  if (cfg.n == 0 || type.size() == 0) throw std::invalid_argument("N and the cycle type must be nonempty");
  const auto& parts = type.parts();
  MomentReport r;
  r.identity = "trace_power";
  r.n = cfg.n;
  r.m = parts.front();
  r.k = static_cast<std::uint32_t>(parts.size());
  const bool uniform = std::all_of(parts.begin(), parts.end(), [&](std::uint32_t c) { return c == parts.front(); });
  if (!uniform) {
    r.identity = "cycle_type_product";
    r.m = type.size();
    r.k = static_cast<std::uint32_t>(parts.size());
  }
  auto t = cycle_type_target(cfg.n, type, cfg.oracle_cap);
  r.target = t.value;
  r.target_source = t.source;
  // distinct lengths with multiplicities
  std::vector<std::pair<std::uint32_t, std::uint32_t>> powers;
  for (std::uint32_t c : parts) {
    if (!powers.empty() && powers.back().first == c)
      ++powers.back().second;
    else
      powers.emplace_back(c, 1);
  }
  auto acc = detail::run_partitions<RunningMoments>(
      cfg.samples, cfg.seed, cfg.partitions, cfg.threads, [&](Rng& rng, std::uint64_t count) {
        RunningMoments local;
        ComplexMatrix g(cfg.n), acc_m(cfg.n), scratch(cfg.n);
        for (std::uint64_t s = 0; s < count; ++s) {
          fill_complex_gaussian(g, rng);
          double value = 1;
          for (auto [c, mult] : powers) value *= detail::ipow(std::norm(trace_power(g, c, acc_m, scratch)), mult);
          local.push(value);
        }
        return local;
      });
  detail::fill_report(r, acc, cfg.seed, cfg.partitions);
  return r;
}

/// E|tr G^m|^{2K} by direct simulation of complex Gaussian matrices.
inline MomentReport mc_trace_power_moment(const MatrixSampleConfig& cfg, std::uint32_t m, std::uint32_t k) {
  if (cfg.n == 0 || m == 0 || k == 0) throw std::invalid_argument("N, m and K must be at least 1");
  return mc_cycle_type_moment(cfg, CycleType(std::vector<std::uint32_t>(k, m)));
}

/// sum_{i=1}^{N} Gamma(M+i)/Gamma(i), exactly.
inline Integer gamma_ratio_sum(std::uint32_t n, std::uint32_t m) {
  Integer s = 0;
  for (std::uint32_t i = 1; i <= n; ++i) s += gamma_ratio(i, m);
  return s;
}

/// E|sum_i lambda_i^M|^{2K} with the M-th eigenvalue powers replaced by
/// independent variables whose squared modulus is gamma_i^M (gamma_i of shape
/// i) and whose phases are uniform. Valid for M >= N.
inline MomentReport mc_gamma_shortcut_moment(std::uint32_t n, std::uint32_t m, std::uint32_t k, std::uint64_t samples,
                                             std::uint64_t seed, std::uint32_t partitions = 8, unsigned threads = 0,
                                             std::uint32_t cap = default_enumeration_cap) {
  if (n == 0 || m == 0 || k == 0) throw std::invalid_argument("N, M and K must be at least 1");
  if (m < n) throw std::invalid_argument("mc_gamma_shortcut_moment: requires M >= N");
  MomentReport r;
  r.identity = "gamma_shortcut";
  r.n = n;
  r.m = m;
  r.k = k;
  if (k == 1) {
    r.target = Rational(gamma_ratio_sum(n, m));
    r.target_source = "exact: sum_i Gamma(M+i)/Gamma(i)";
  } else {
    auto t = trace_power_target(n, m, k, cap);
    r.target = t.value;
    r.target_source = t.source;
  }
  const double two_pi = 2.0 * std::acos(-1.0);
  auto acc = detail::run_partitions<RunningMoments>(samples, seed, partitions, threads, [&](Rng& rng,
                                                                                            std::uint64_t count) {
    RunningMoments local;
    std::vector<std::gamma_distribution<double>> gammas;
    for (std::uint32_t i = 1; i <= n; ++i) gammas.emplace_back(static_cast<double>(i), 1.0);
    std::uniform_real_distribution<double> phase(0.0, two_pi);
    for (std::uint64_t s = 0; s < count; ++s) {
      Complex tr = 0;
      for (auto& g : gammas) {
        double modulus = std::pow(g(rng), 0.5 * m);
        tr += std::polar(modulus, phase(rng));
      }
      local.push(detail::ipow(std::norm(tr), k));
    }
    return local;
  });
  detail::fill_report(r, acc, seed, partitions);
  return r;
}

/// E(tr R R^t)^M against 2^M F_M^+(N^2/2).
inline MomentReport mc_real_trace_law(std::uint32_t n, std::uint32_t m, std::uint64_t samples, std::uint64_t seed,
                                      std::uint32_t partitions = 8, unsigned threads = 0) {
  if (n == 0 || m == 0) throw std::invalid_argument("N and M must be at least 1");
  MomentReport r;
  r.identity = "real_trace";
  r.n = n;
  r.m = m;
  r.k = 1;
  r.target = Rational(Integer(1) << m) * rising_product(ratio(n * n, 2), m);
  r.target_source = "exact: 2^M F_M^+(N^2/2)";
  auto acc = detail::run_partitions<RunningMoments>(samples, seed, partitions, threads, [&](Rng& rng,
                                                                                            std::uint64_t count) {
    RunningMoments local;
    std::normal_distribution<double> normal(0.0, 1.0);
    for (std::uint64_t s = 0; s < count; ++s) {
      double tr = 0;
      for (std::uint32_t e = 0; e < n * n; ++e) {
        double x = normal(rng);
        tr += x * x;
      }
      local.push(detail::ipow(tr, m));
    }
    return local;
  });
  detail::fill_report(r, acc, seed, partitions);
  return r;
}

inline Complex trace_of_square(const ComplexMatrix& g) { return trace_of_product(g, g); }

/// E|tr G^2|^{2M} against E(4 gamma_1 gamma_{N^2/2})^M = 4^M M! Gamma(N^2/2+M)/Gamma(N^2/2).
inline MomentReport mc_tr_G_squared_law(std::uint32_t n, std::uint32_t m, std::uint64_t samples, std::uint64_t seed,
                                        std::uint32_t partitions = 8, unsigned threads = 0) {
  if (n == 0 || m == 0) throw std::invalid_argument("N and M must be at least 1");
  MomentReport r;
  r.identity = "trG2";
  r.n = n;
  r.m = m;
  r.k = 1;
  r.target = Rational(Integer(1) << (2 * m)) * Rational(factorial(m)) * rising_product(ratio(n * n, 2), m);
  r.target_source = "exact: 4^M M! Gamma(N^2/2+M)/Gamma(N^2/2)";
  auto acc = detail::run_partitions<RunningMoments>(samples, seed, partitions, threads, [&](Rng& rng,
                                                                                            std::uint64_t count) {
    RunningMoments local;
    ComplexMatrix g(n);
    for (std::uint64_t s = 0; s < count; ++s) {
      fill_complex_gaussian(g, rng);
      local.push(detail::ipow(std::norm(trace_of_square(g)), m));
    }
    return local;
  });
  detail::fill_report(r, acc, seed, partitions);
  return r;
}

/// E tr G^2 = 0 (real and imaginary parts), from the uniform phase.
inline MomentReport mc_tr_G_squared_phase(std::uint32_t n, std::uint64_t samples, std::uint64_t seed,
                                          std::uint32_t partitions = 8, unsigned threads = 0) {
  if (n == 0) throw std::invalid_argument("N must be at least 1");
  MomentReport r;
  r.identity = "trG2_mean";
  r.n = n;
  r.m = 1;
  r.k = 1;
  r.target = Rational(0);
  r.target_source = "exact: rotational symmetry";
  auto acc = detail::run_partitions<detail::ComplexMoments>(samples, seed, partitions, threads,
                                                            [&](Rng& rng, std::uint64_t count) {
                                                              detail::ComplexMoments local;
                                                              ComplexMatrix g(n);
                                                              for (std::uint64_t s = 0; s < count; ++s) {
                                                                fill_complex_gaussian(g, rng);
                                                                Complex t = trace_of_square(g);
                                                                local.re.push(t.real());
                                                                local.im.push(t.imag());
                                                              }
                                                              return local;
                                                            });
  detail::fill_complex_report(r, acc, seed, partitions);
  return r;
}

/// E|tr G1 G2|^{2M} against M! F_M^+(N^2).
inline MomentReport mc_tr_G1G2_law(std::uint32_t n, std::uint32_t m, std::uint64_t samples, std::uint64_t seed,
                                   std::uint32_t partitions = 8, unsigned threads = 0) {
  if (n == 0 || m == 0) throw std::invalid_argument("N and M must be at least 1");
  MomentReport r;
  r.identity = "trG1G2";
  r.n = n;
  r.m = m;
  r.k = 1;
  r.target = Rational(factorial(m)) * rising_product(Rational(n * n), m);
  r.target_source = "exact: M! F_M^+(N^2)";
  auto acc = detail::run_partitions<RunningMoments>(samples, seed, partitions, threads, [&](Rng& rng,
                                                                                            std::uint64_t count) {
    RunningMoments local;
    ComplexMatrix g1(n), g2(n);
    for (std::uint64_t s = 0; s < count; ++s) {
      fill_complex_gaussian(g1, rng);
      fill_complex_gaussian(g2, rng);
      local.push(detail::ipow(std::norm(trace_of_product(g1, g2)), m));
    }
    return local;
  });
  detail::fill_report(r, acc, seed, partitions);
  return r;
}

/// The alternative constant M! (M+N^2)! for E|tr G1 G2|^{2M}. It disagrees
/// with M! F_M^+(N^2) already at N = M = 1 (2 versus 1).
inline Integer tr_G1G2_alternative_constant(std::uint32_t n, std::uint32_t m) { return factorial(m) * factorial(m + n * n); }

/// E[tr G^{M1} conj(tr G^{M2})], which vanishes for M1 != M2.
inline MomentReport mixed_trace_vanishing(std::uint32_t n, std::uint32_t m1, std::uint32_t m2, std::uint64_t samples,
                                          std::uint64_t seed, std::uint32_t partitions = 8, unsigned threads = 0) {
  if (n == 0 || m1 == 0 || m2 == 0) throw std::invalid_argument("N, M1 and M2 must be at least 1");
  if (m1 == m2) throw std::invalid_argument("mixed_trace_vanishing: requires M1 != M2");
  MomentReport r;
  r.identity = "mixed_trace";
  r.n = n;
  r.m = m1;
  r.k = m2;
  r.target = Rational(0);
  r.target_source = "exact: vanishing mixed moment";
  auto acc = detail::run_partitions<detail::ComplexMoments>(
      samples, seed, partitions, threads, [&](Rng& rng, std::uint64_t count) {
        detail::ComplexMoments local;
        ComplexMatrix g(n), acc_m(n), scratch(n);
        for (std::uint64_t s = 0; s < count; ++s) {
          fill_complex_gaussian(g, rng);
          Complex a = trace_power(g, m1, acc_m, scratch);
          Complex b = trace_power(g, m2, acc_m, scratch);
          Complex v = a * std::conj(b);
          local.re.push(v.real());
          local.im.push(v.imag());
        }
        return local;
      });
  detail::fill_complex_report(r, acc, seed, partitions);
  return r;
}

}  // namespace commcyc
