// Acceptance suite: one PASS/FAIL line per criterion. Every exact reference
// below is computed here from first principles (brute-force enumeration or
// direct products), never through the library code under test.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "commcyc/bernoulli.hpp"
#include "commcyc/factorial_poly.hpp"
#include "commcyc/genfun.hpp"
#include "commcyc/rmt.hpp"

using namespace commcyc;

namespace ref {

using Perm = std::vector<int>;

int cycles(const Perm& p) {
  std::vector<char> seen(p.size(), 0);
  int c = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    ++c;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(p[j])) seen[j] = 1;
  }
  return c;
}

Perm compose(const Perm& a, const Perm& b) {
  Perm r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[static_cast<std::size_t>(b[i])];
  return r;
}

Perm inverse(const Perm& a) {
  Perm r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[static_cast<std::size_t>(a[i])] = static_cast<int>(i);
  return r;
}

/// Consecutive cycles of the given lengths on 0..n-1.
Perm tau_of_type(const std::vector<int>& lengths) {
  Perm t;
  int start = 0;
  for (int len : lengths) {
    for (int j = 0; j < len; ++j) t.push_back(start + (j + 1) % len);
    start += len;
  }
  return t;
}

bool is_odd(const Perm& p) { return (static_cast<int>(p.size()) - cycles(p)) % 2 == 1; }

Integer fact(int n) {
  Integer r = 1;
  for (int j = 2; j <= n; ++j) r *= j;
  return r;
}

/// Law of the cycle count of s t s^-1 t^-1 over every s in S_n.
std::vector<Rational> commutator_law(const Perm& tau) {
  const std::size_t n = tau.size();
  std::vector<Integer> counts(n + 1, 0);
  Perm s(n);
  std::iota(s.begin(), s.end(), 0);
  const Perm tau_inv = inverse(tau);
  do {
    Perm c = compose(compose(compose(s, tau), inverse(s)), tau_inv);
    ++counts[static_cast<std::size_t>(cycles(c))];
  } while (std::next_permutation(s.begin(), s.end()));
  std::vector<Rational> law;
  const Integer total = fact(static_cast<int>(n));
  for (const auto& c : counts) {
    Rational q(c, total);
    q.canonicalize();
    law.push_back(q);
  }
  return law;
}

/// Law of the cycle count of a uniform odd permutation of S_n.
std::vector<Rational> odd_law(int n) {
  std::vector<Integer> counts(static_cast<std::size_t>(n) + 1, 0);
  Perm s(static_cast<std::size_t>(n));
  std::iota(s.begin(), s.end(), 0);
  Integer total = 0;
  do {
    if (!is_odd(s)) continue;
    ++counts[static_cast<std::size_t>(cycles(s))];
    ++total;
  } while (std::next_permutation(s.begin(), s.end()));
  std::vector<Rational> law;
  for (const auto& c : counts) {
    Rational q(c, total);
    q.canonicalize();
    law.push_back(q);
  }
  return law;
}

bool same_law(const RationalPoly& p, const std::vector<Rational>& law) {
  const std::size_t n = std::max<std::size_t>(law.size(), p.coefficients().size());
  for (std::size_t k = 0; k < n; ++k) {
    Rational expected = k < law.size() ? law[k] : Rational(0);
    if (p.coeff(k) != expected) return false;
  }
  return true;
}

/// x (x+1) ... (x+n-1)
Rational rising(const Rational& x, int n) {
  Rational r = 1;
  for (int j = 0; j < n; ++j) r *= x + j;
  return r;
}

/// x (x-1) ... (x-n+1)
Rational falling(const Rational& x, int n) {
  Rational r = 1;
  for (int j = 0; j < n; ++j) r *= x - j;
  return r;
}

Integer binom(int n, int k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

/// sum_{i=1}^N Gamma(M+i)/Gamma(i)
Integer gamma_sum(int n, int m) {
  Integer s = 0;
  for (int i = 1; i <= n; ++i) s += rising(i, m).get_num();
  return s;
}

}  // namespace ref

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;
  void fail(const std::string& why) {
    pass = false;
    notes.push_back(why);
  }
};

int failures = 0;

void report(int id, const std::string& title, const Outcome& o, double seconds, double budget) {
  bool in_time = seconds <= budget;
  bool pass = o.pass && in_time;
  if (!pass) ++failures;
  std::printf("%s criterion %d: %s (%.2f s, budget %.0f s)\n", pass ? "PASS" : "FAIL", id, title.c_str(), seconds,
              budget);
  for (const auto& n : o.notes) std::printf("    %s\n", n.c_str());
  if (!in_time) std::printf("    runtime budget exceeded\n");
  std::fflush(stdout);
}

template <class F>
void criterion(int id, const std::string& title, double budget, F&& body) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  body(o);
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  report(id, title, o, s, budget);
}

std::string str(const Rational& q) { return q.get_str(); }

// --------------------------------------------------------------------------

void one_cycle_vs_enumeration(Outcome& o) {
  for (int m = 1; m <= 6; ++m)
    if (!ref::same_law(one_cycle_pgf(static_cast<std::uint32_t>(m)).poly, ref::commutator_law(ref::tau_of_type({m}))))
      o.fail("one_cycle_pgf differs from enumeration at M = " + std::to_string(m));
}

void two_cycles_vs_enumeration(Outcome& o) {
  for (int m = 1; m <= 3; ++m)
    if (!ref::same_law(two_cycles_pgf(static_cast<std::uint32_t>(m)).poly,
                       ref::commutator_law(ref::tau_of_type({m, m}))))
      o.fail("two_cycles_pgf differs from enumeration at M = " + std::to_string(m));
}

void transpositions_vs_enumeration(Outcome& o) {
  for (int m = 1; m <= 3; ++m) {
    auto law = ref::commutator_law(ref::tau_of_type(std::vector<int>(static_cast<std::size_t>(m), 2)));
    if (!ref::same_law(transpositions_pgf(static_cast<std::uint32_t>(m)).poly, law))
      o.fail("transpositions_pgf differs from enumeration at M = " + std::to_string(m));
  }
  // 2^M M!/(2M)! F_M^+(t^2/2) at t = 1, M = 1: 2 * 1/2 * 1/2
  Rational alt_mass = Rational(2) * Rational(ref::fact(1)) / Rational(ref::fact(2)) * ref::rising(Rational(1, 2), 1);
  Rational lib_mass = transpositions_pgf_alternative_prefactor(1).eval(1);
  if (alt_mass != Rational(1, 2) || lib_mass != alt_mass)
    o.fail("alternative prefactor mass at M = 1: expected 1/2, library gives " + str(lib_mass));
  else
    o.notes.push_back("prefactor 2^M M!/(2M)! rejected: total mass " + str(lib_mass) +
                      " at M = 1; 4^M M!/(2M)! F_M^+(t^2/2) matches enumeration");
  for (std::uint32_t m = 1; m <= 6; ++m) {
    if (transpositions_pgf_rising_form(m) != transpositions_pgf(m).poly)
      o.fail("rising form 4^M M!/(2M)! F_M^+(t^2/2) differs from the product form at M = " + std::to_string(m));
    Rational expected = Rational(1) / (Integer(1) << m);
    if (transpositions_pgf_alternative_prefactor(m).eval(1) != expected)
      o.fail("alternative prefactor mass is not 2^-M at M = " + std::to_string(m));
  }
}

void odd_law_equivalence(Outcome& o) {
  for (std::uint32_t m = 1; m <= 8; ++m) {
    auto one = one_cycle_pgf(m).poly;
    if (one != alternating_pgf(m + 1, true).poly)
      o.fail("one_cycle_pgf(M) != alternating_pgf(M+1, complement) at M = " + std::to_string(m));
    if (!ref::same_law(one, ref::odd_law(static_cast<int>(m) + 1)))
      o.fail("one_cycle_pgf(M) differs from the enumerated odd law of S_{M+1} at M = " + std::to_string(m));
  }
}

void factorial_identities(Outcome& o) {
  for (int n = 1; n <= 12; ++n) {
    auto d = discrete_difference(rising_factorial(static_cast<unsigned long>(n)));
    if (d != rising_factorial(static_cast<unsigned long>(n - 1)) * Rational(n))
      o.fail("D F_n^+ != n F_{n-1}^+ at n = " + std::to_string(n));
    for (int x = -4; x <= n + 4; ++x)
      if (d.eval(x) != ref::rising(x, n) - ref::rising(x - 1, n))
        o.fail("discrete difference wrong at n = " + std::to_string(n) + ", X = " + std::to_string(x));
  }
  for (int n = 0; n <= 8; ++n)
    for (int m = 0; m <= n; ++m) {
      auto p = connection_expand(static_cast<unsigned long>(m), static_cast<unsigned long>(n));
      if (p.degree() != m + n) o.fail("connection expansion has wrong degree");
      for (int x = -3; x <= m + n + 3; ++x) {
        Rational rhs = 0;
        for (int k = 0; k <= m; ++k)
          rhs += Rational(ref::binom(m, k) * ref::binom(n, k) * ref::fact(k)) * ref::falling(x, m + n - k);
        if (p.eval(x) != rhs || rhs != ref::falling(x, m) * ref::falling(x, n))
          o.fail("connection coefficients fail at m = " + std::to_string(m) + ", n = " + std::to_string(n));
      }
    }
  for (int m = 1; m <= 8; ++m) {
    auto q = q_polynomial(static_cast<unsigned long>(m));
    if (q.degree() != 2 * m + 1 || q.eval(0) != 0) o.fail("Q_{2M+1} has wrong degree or Q(0) at M = " + std::to_string(m));
    Rational sum = 0;
    for (int n = 1; n <= 12; ++n) {
      Rational g = ref::rising(n, m);
      sum += g * g;
      if (q.eval(n) != sum) o.fail("Q_{2M+1}(N) fails at M = " + std::to_string(m) + ", N = " + std::to_string(n));
    }
  }
  for (int n = 1; n <= 12; ++n) {
    auto f = rising_factorial(static_cast<unsigned long>(n));
    for (int k = 1; k <= 12; ++k) {
      Rational telescoped = 0, gamma_form = 0;
      for (int j = 1; j <= k; ++j) {
        telescoped += f.eval(j) - f.eval(j - 1);
        gamma_form += ref::rising(j, n - 1);
      }
      gamma_form *= n;
      if (f.eval(k) != ref::rising(k, n) || f.eval(k) != telescoped || f.eval(k) != gamma_form)
        o.fail("F_n^+(k) as a Gamma sum fails at n = " + std::to_string(n) + ", k = " + std::to_string(k));
    }
  }
}

void bernoulli_decompositions(Outcome& o) {
  for (std::uint32_t m = 1; m <= 12; ++m) {
    auto u = bernoulli_decomposition(uniform_cycles_pgf(m));
    auto t = bernoulli_decomposition(transpositions_pgf(m));
    if (u.terms.size() != m || t.terms.size() != m) {
      o.fail("wrong number of terms at M = " + std::to_string(m));
      continue;
    }
    for (std::uint32_t k = 1; k <= m; ++k) {
      const auto& ut = u.terms[k - 1];
      const auto& tt = t.terms[k - 1];
      if (!ut.exact || *ut.exact != Rational(1, k) || ut.multiplier != 1)
        o.fail("uniform parameter " + std::to_string(k) + " is not 1/k at M = " + std::to_string(m));
      if (!tt.exact || *tt.exact != Rational(1, 2 * k - 1) || tt.multiplier != 2)
        o.fail("transposition parameter " + std::to_string(k) + " is not 1/(2k-1) at M = " + std::to_string(m));
    }
    // Products of the Bernoulli laws against t(t+1)...(t+M-1)/M! and the
    // library closed forms.
    RationalPoly uref = RationalPoly::constant(1), tref = RationalPoly::constant(1);
    for (std::uint32_t k = 1; k <= m; ++k) {
      uref *= RationalPoly({Rational(k - 1, k), Rational(1, k)});
      tref *= RationalPoly({Rational(2 * k - 2, 2 * k - 1), 0, Rational(1, 2 * k - 1)});
    }
    for (long x = 0; x <= 5; ++x)
      if (uref.eval(x) != ref::rising(x, static_cast<int>(m)) / Rational(ref::fact(static_cast<int>(m))))
        o.fail("uniform Bernoulli product is not t(t+1)...(t+M-1)/M! at M = " + std::to_string(m));
    if (uniform_cycles_pgf(m).poly != uref) o.fail("uniform_cycles_pgf differs at M = " + std::to_string(m));
    if (transpositions_pgf(m).poly != tref) o.fail("transpositions_pgf differs at M = " + std::to_string(m));
  }
  double worst_re = 0, worst_res = 0;
  for (std::uint32_t m = 1; m <= 30; ++m) {
    auto pgf = one_cycle_pgf(m);
    auto d = bernoulli_decomposition(pgf);
    if (d.terms.size() != m / 2 || d.offset != m % 2)
      o.fail("one-cycle decomposition has wrong shape at M = " + std::to_string(m));
    double re = d.roots ? d.roots->max_real_part : 0.0;
    // residual recomputed here from the parameters
    std::vector<long double> e(d.offset + 1, 0.0L);
    e[d.offset] = 1.0L;
    for (const auto& t : d.terms) {
      long double p = t.exact ? static_cast<long double>(t.exact->get_d()) : static_cast<long double>(t.p);
      if (!(p > 0 && p <= 1)) o.fail("parameter outside (0, 1] at M = " + std::to_string(m));
      std::vector<long double> next(e.size() + t.multiplier, 0.0L);
      for (std::size_t k = 0; k < e.size(); ++k) {
        next[k] += (1 - p) * e[k];
        next[k + t.multiplier] += p * e[k];
      }
      e = std::move(next);
    }
    // one-cycle law reference: (F_{M+1}^+ - F_{M+1}^-)/(M+1)!, coefficients via Stirling numbers
    std::vector<Rational> c(1, 1);
    for (std::uint32_t j = 0; j <= m; ++j) {
      std::vector<Rational> next(c.size() + 1, 0);
      for (std::size_t k = 0; k < c.size(); ++k) {
        next[k + 1] += c[k];
        next[k] += c[k] * j;
      }
      c = std::move(next);
    }
    double res = 0;
    const Rational denom = Rational(ref::fact(static_cast<int>(m) + 1));
    for (std::size_t k = 0; k < std::max(c.size(), e.size()); ++k) {
      Rational exact = 0;
      if (k < c.size() && (m + 1 - k) % 2 == 1) exact = 2 * c[k] / denom;
      double got = k < e.size() ? static_cast<double>(e[k]) : 0.0;
      res = std::max(res, std::fabs(got - exact.get_d()));
    }
    worst_re = std::max(worst_re, re);
    worst_res = std::max(worst_res, res);
    if (!(re < 1e-9)) o.fail("root real part " + std::to_string(re) + " at M = " + std::to_string(m));
    if (!(res < 1e-10)) o.fail("reconstruction residual " + std::to_string(res) + " at M = " + std::to_string(m));
  }
  std::ostringstream os;
  os << "one-cycle M <= 30: max |Re root| " << worst_re << ", max residual " << worst_res;
  o.notes.push_back(os.str());
}

// --------------------------------------------------------------------------

constexpr std::uint64_t seed = 42;
constexpr std::uint64_t base_samples = 100000;
constexpr double threshold = 5.0;

/// Reruns with ten times the samples when the relative standard error
/// exceeds 2% of the reference value.
MomentReport escalate(const Rational& reference, const std::function<MomentReport(std::uint64_t)>& run) {
  MomentReport r = run(base_samples);
  double scale = std::fabs(reference.get_d());
  if (scale > 0 && r.std_error > 0.02 * scale) r = run(base_samples * 10);
  return r;
}

struct Tally {
  int checks = 0;
  double worst = 0;
  std::string worst_name;
};

void gate(Outcome& o, Tally& t, const std::string& name, double estimate, double se, const Rational& target) {
  double z = z_score(estimate, target.get_d(), se);
  ++t.checks;
  if (std::fabs(z) > t.worst || !std::isfinite(z)) {
    t.worst = std::fabs(z);
    t.worst_name = name;
  }
  if (!(std::fabs(z) <= threshold)) {
    std::ostringstream os;
    os << name << ": estimate " << estimate << " +- " << se << " vs " << str(target) << ", z " << z;
    o.fail(os.str());
  }
}

MomentReport direct_moment(std::uint32_t n, std::uint32_t m, std::uint32_t k, std::uint64_t samples) {
  MatrixSampleConfig cfg;
  cfg.n = n;
  cfg.samples = samples;
  cfg.seed = seed;
  return mc_trace_power_moment(cfg, m, k);
}

void rmt_identities(Outcome& o) {
  Tally t;
  // bridge: E|tr G^m|^{2K} = (mK)! E[N^{C([s, tau])}] with tau of type (m^K)
  for (int n = 1; n <= 3; ++n)
    for (int m = 1; m <= 8; ++m)
      for (int k = 1; m * k <= 8; ++k) {
        auto law = ref::commutator_law(ref::tau_of_type(std::vector<int>(static_cast<std::size_t>(k), m)));
        Rational target = 0, power = 1;
        for (const auto& p : law) {
          target += p * power;
          power *= n;
        }
        target *= Rational(ref::fact(m * k));
        auto r = escalate(target, [&](std::uint64_t s) {
          return direct_moment(static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(m),
                               static_cast<std::uint32_t>(k), s);
        });
        gate(o, t, "bridge N=" + std::to_string(n) + " m=" + std::to_string(m) + " K=" + std::to_string(k),
             r.estimate, r.std_error, target);
      }
  // gamma shortcut against the direct estimate
  for (std::uint32_t n = 1; n <= 6; ++n)
    for (std::uint32_t m = n; m <= 6; ++m) {
      const Rational exact(ref::gamma_sum(static_cast<int>(n), static_cast<int>(m)));
      const std::string tag = "N=" + std::to_string(n) + " M=" + std::to_string(m);
      auto s1 = escalate(exact, [&](std::uint64_t s) { return mc_gamma_shortcut_moment(n, m, 1, s, seed); });
      gate(o, t, "shortcut K=1 " + tag, s1.estimate, s1.std_error, exact);
      auto d1 = escalate(exact, [&](std::uint64_t s) { return direct_moment(n, m, 1, s); });
      gate(o, t, "direct K=1 " + tag, d1.estimate, d1.std_error, exact);
      auto k2_scale = exact * exact;
      auto s2 = escalate(k2_scale, [&](std::uint64_t s) { return mc_gamma_shortcut_moment(n, m, 2, s, seed); });
      auto d2 = escalate(k2_scale, [&](std::uint64_t s) { return direct_moment(n, m, 2, s); });
      double se = std::sqrt(s2.std_error * s2.std_error + d2.std_error * d2.std_error);
      gate(o, t, "shortcut vs direct K=2 " + tag, s2.estimate - d2.estimate, se, 0);
    }
  if (ref::gamma_sum(2, 2) != 8 || ref::gamma_sum(2, 3) != 30 || gamma_ratio_sum(2, 2) != 8 ||
      gamma_ratio_sum(2, 3) != 30)
    o.fail("sum_i Gamma(M+i)/Gamma(i) values at (2,2) and (2,3)");
  else
    o.notes.push_back("sum_{i<=N} Gamma(M+i)/Gamma(i): (N,M) = (2,2) -> 8, (2,3) -> 30");
  for (std::uint32_t m : {2u, 3u}) {
    const Rational exact(ref::gamma_sum(2, static_cast<int>(m)));
    auto r = escalate(exact, [&](std::uint64_t s) { return direct_moment(2, m, 1, s); });
    gate(o, t, "E|tr G^M|^2 at N=2 M=" + std::to_string(m), r.estimate, r.std_error, exact);
    std::ostringstream os;
    os << "E|tr G^" << m << "|^2 at N = 2: estimate " << r.estimate << " +- " << r.std_error << " vs " << str(exact);
    o.notes.push_back(os.str());
  }
  // real Gaussian R: tr(R R^T) moments 2^M F_M^+(N^2/2)
  for (std::uint32_t n = 1; n <= 4; ++n)
    for (std::uint32_t m = 1; m <= 6; ++m) {
      const std::string tag = "N=" + std::to_string(n) + " M=" + std::to_string(m);
      Rational target = Rational(Integer(1) << m) * ref::rising(Rational(n * n, 2), static_cast<int>(m));
      auto r = escalate(target, [&](std::uint64_t s) { return mc_real_trace_law(n, m, s, seed); });
      gate(o, t, "tr(RR^T) " + tag, r.estimate, r.std_error, target);
      Rational g2 = Rational(Integer(1) << (2 * m)) * Rational(ref::fact(static_cast<int>(m))) *
                    ref::rising(Rational(n * n, 2), static_cast<int>(m));
      auto q = escalate(g2, [&](std::uint64_t s) { return mc_tr_G_squared_law(n, m, s, seed); });
      gate(o, t, "|tr G^2| " + tag, q.estimate, q.std_error, g2);
      Rational g12 = Rational(ref::fact(static_cast<int>(m))) * ref::rising(Rational(n * n), static_cast<int>(m));
      auto p = escalate(g12, [&](std::uint64_t s) { return mc_tr_G1G2_law(n, m, s, seed); });
      gate(o, t, "|tr G1G2| " + tag, p.estimate, p.std_error, g12);
    }
  // vanishing of mixed moments
  for (std::uint32_t n = 1; n <= 4; ++n) {
    auto r = mc_tr_G_squared_phase(n, base_samples, seed);
    gate(o, t, "E tr G^2 N=" + std::to_string(n), r.estimate, r.std_error, 0);
    if (r.estimate_imag && r.std_error_imag)
      gate(o, t, "Im E tr G^2 N=" + std::to_string(n), *r.estimate_imag, *r.std_error_imag, 0);
  }
  for (auto [n, m1, m2] : std::vector<std::array<std::uint32_t, 3>>{
           {2, 1, 2}, {1, 1, 3}, {3, 2, 4}, {4, 1, 2}, {2, 2, 3}, {3, 1, 3}}) {
    auto r = mixed_trace_vanishing(n, m1, m2, base_samples, seed);
    std::string tag = "mixed N=" + std::to_string(n) + " M1=" + std::to_string(m1) + " M2=" + std::to_string(m2);
    gate(o, t, tag, r.estimate, r.std_error, 0);
    if (r.estimate_imag && r.std_error_imag) gate(o, t, "Im " + tag, *r.estimate_imag, *r.std_error_imag, 0);
  }
  std::ostringstream os;
  os << t.checks << " z-scores, largest |z| " << t.worst << " (" << t.worst_name << ")";
  o.notes.push_back(os.str());
}

void inconsistencies(Outcome& o) {
  Rational trans_mass = transpositions_pgf_alternative_prefactor(1).eval(1);
  if (trans_mass == 1)
    o.fail("alternative transposition prefactor was not detected");
  else
    o.notes.push_back("transpositions: 2^M M!/(2M)! F_M^+(t^2/2) has mass " + str(trans_mass) +
                      " at M = 1; resolved to 4^M M!/(2M)!, equal to enumeration");
  // N = M = 1: tr(G1 G2) = z1 z2 with E|z1 z2|^2 = 1
  Integer alt = tr_G1G2_alternative_constant(1, 1);
  Rational derived = Rational(ref::fact(1)) * ref::rising(1, 1);
  auto r = mc_tr_G1G2_law(1, 1, base_samples, seed);
  double z_alt = z_score(r.estimate, alt.get_d(), r.std_error);
  double z_derived = z_score(r.estimate, derived.get_d(), r.std_error);
  if (Rational(alt) == derived || std::fabs(z_alt) <= threshold || std::fabs(z_derived) > threshold) {
    o.fail("G1G2 constant check: alternative " + alt.get_str() + ", derived " + str(derived));
  } else {
    std::ostringstream os;
    os << "E|tr G1G2|^2 at N = M = 1: M!(M+N^2)! gives " << alt.get_str() << " (z " << z_alt
       << "), M! F_M^+(N^2) gives " << str(derived) << " (z " << z_derived << ")";
    o.notes.push_back(os.str());
  }
}

}  // namespace

int main() {
  criterion(1, "one-cycle closed form equals enumeration, M = 1..6", 5, one_cycle_vs_enumeration);
  criterion(2, "two-cycle closed form equals enumeration, M = 1..3", 30, two_cycles_vs_enumeration);
  criterion(3, "transposition closed form equals enumeration, M = 1..3", 30, transpositions_vs_enumeration);
  criterion(4, "one-cycle law equals the odd-permutation law of S_{M+1}, M = 1..8", 5, odd_law_equivalence);
  criterion(5, "factorial polynomial identities", 1, factorial_identities);
  criterion(6, "Bernoulli decompositions", 5, bernoulli_decompositions);
  criterion(7, "random-matrix moment identities, seed 42, |z| <= 5", 180, rmt_identities);
  criterion(8, "inconsistent constants detected and resolved", 5, inconsistencies);
  std::printf("%s: %d of 8 criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
