#pragma once

// Invariant suites aggregated by the `verify` command. Every closed form is
// compared against an independent computation: direct products for the
// factorial identities, symmetric-group enumeration for the generating
// functions, polynomial expansion for the Bernoulli factorizations and
// Monte-Carlo estimates for the random-matrix moments.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "commcyc/bernoulli.hpp"
#include "commcyc/factorial_poly.hpp"
#include "commcyc/genfun.hpp"
#include "commcyc/oracle.hpp"
#include "commcyc/random.hpp"
#include "commcyc/rmt.hpp"

namespace commcyc {

struct Check {
  std::string suite;
  std::string name;
  bool pass = false;
  std::string detail;
  std::optional<MomentReport> report;
};

inline bool all_pass(const std::vector<Check>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

/// A deliberate perturbation of one closed-form coefficient, used to show
/// that the suites detect a single wrong coefficient.
struct Mutation {
  PgfSource source = PgfSource::one_cycle;
  std::uint32_t m = 1;
  std::size_t index = 0;
  Rational delta = 1;

  std::string describe() const {
    return std::string(to_string(source)) + "(" + std::to_string(m) + ") coefficient " + std::to_string(index) +
           " += " + rational_to_string(delta);
  }
};

/// Closed-form generating functions, optionally with one mutated coefficient.
class ClosedForms {
 public:
  ClosedForms() = default;
  explicit ClosedForms(std::optional<Mutation> mutation) : mutation_(std::move(mutation)) {}

  const std::optional<Mutation>& mutation() const noexcept { return mutation_; }

  CyclePGF get(PgfSource source, std::uint32_t m) const {
    CyclePGF pgf = raw(source, m);
    if (mutation_ && mutation_->source == source && mutation_->m == m) {
      std::vector<Rational> c = pgf.poly.coefficients();
      if (c.size() <= mutation_->index) c.resize(mutation_->index + 1, 0);
      c[mutation_->index] += mutation_->delta;
      pgf.poly = RationalPoly(std::move(c));
    }
    return pgf;
  }

 private:
  static CyclePGF raw(PgfSource source, std::uint32_t m) {
    switch (source) {
      case PgfSource::uniform:
        return uniform_cycles_pgf(m);
      case PgfSource::alternating:
        return alternating_pgf(m, false);
      case PgfSource::co_alternating:
        return alternating_pgf(m, true);
      case PgfSource::one_cycle:
        return one_cycle_pgf(m);
      case PgfSource::two_cycles:
        return two_cycles_pgf(m);
      case PgfSource::transpositions:
        return transpositions_pgf(m);
      default:
        throw std::invalid_argument("no closed form for source 'oracle'");
    }
  }

  std::optional<Mutation> mutation_;
};

/// Picks, from a seed, one coefficient of a closed form that the
/// genfun_vs_oracle suite compares for the given largest ground set.
inline Mutation mutation_from_seed(std::uint64_t seed, std::uint32_t max_ground) {
  if (max_ground < 2) throw std::invalid_argument("mutation needs a largest ground set of at least 2");
  Rng rng = make_stream(seed, 0x6d757461);
  const PgfSource families[] = {PgfSource::uniform,    PgfSource::alternating,  PgfSource::co_alternating,
                                PgfSource::one_cycle,  PgfSource::two_cycles,   PgfSource::transpositions};
  Mutation mu;
  mu.source = families[uniform_below(rng, 6)];
  std::uint32_t lo = mu.source == PgfSource::co_alternating ? 2 : 1;
  std::uint32_t hi = max_ground;
  if (mu.source == PgfSource::two_cycles || mu.source == PgfSource::transpositions) hi = max_ground / 2;
  mu.m = lo + static_cast<std::uint32_t>(uniform_below(rng, hi - lo + 1));
  CyclePGF pgf = ClosedForms{}.get(mu.source, mu.m);
  mu.index = static_cast<std::size_t>(uniform_below(rng, pgf.ground_size + 1));
  mu.delta = ratio(1, factorial(pgf.ground_size));
  return mu;
}

namespace detail {

inline Check make_check(std::string suite, std::string name, bool pass, std::string detail = {}) {
  return Check{std::move(suite), std::move(name), pass, std::move(detail), std::nullopt};
}

inline Rational product_rising(const Rational& x, unsigned n) {
  Rational r = 1;
  for (unsigned j = 0; j < n; ++j) r *= x + j;
  return r;
}

inline Rational product_falling(const Rational& x, unsigned n) {
  Rational r = 1;
  for (unsigned j = 0; j < n; ++j) r *= x - j;
  return r;
}

inline std::string poly_mismatch(const RationalPoly& got, const RationalPoly& want) {
  for (long k = 0; k <= std::max(got.degree(), want.degree()); ++k) {
    auto i = static_cast<std::size_t>(k);
    if (got.coeff(i) != want.coeff(i))
      return "coefficient " + std::to_string(k) + ": " + rational_to_string(got.coeff(i)) + " vs " +
             rational_to_string(want.coeff(i));
  }
  return "equal";
}

}  // namespace detail

/// Discrete derivative eigen-relation, connection coefficients, squared
/// gamma-ratio sums and the integer-value identity, each against direct
/// products evaluated pointwise.
inline std::vector<Check> verify_factorials() {
  const std::string suite = "factorials";
  std::vector<Check> out;
  {
    bool ok = true;
    std::string detail = "n = 1..12";
    for (unsigned n = 1; n <= 12 && ok; ++n)
      if (discrete_difference(rising_factorial(n)) != rising_factorial(n - 1) * Rational(n)) {
        ok = false;
        detail = "fails at n = " + std::to_string(n);
      }
    out.push_back(detail::make_check(suite, "discrete_difference_eigenbasis", ok, detail));
  }
  {
    bool ok = true;
    std::string detail = "m <= n <= 8, X = -3..12";
    for (unsigned n = 0; n <= 8 && ok; ++n)
      for (unsigned m = 0; m <= n && ok; ++m) {
        auto p = connection_expand(m, n);
        for (long x = -3; x <= 12 && ok; ++x)
          if (p.eval(x) != detail::product_falling(x, m) * detail::product_falling(x, n)) {
            ok = false;
            detail = "fails at m = " + std::to_string(m) + ", n = " + std::to_string(n) + ", X = " + std::to_string(x);
          }
      }
    out.push_back(detail::make_check(suite, "connection_coefficients", ok, detail));
  }
  {
    bool ok = true;
    std::string detail = "M <= 8, N <= 12";
    for (unsigned m = 1; m <= 8 && ok; ++m) {
      auto q = q_polynomial(m);
      Rational sum = 0;
      for (unsigned n = 1; n <= 12 && ok; ++n) {
        Rational ratio_k = detail::product_rising(n, m);
        sum += ratio_k * ratio_k;
        if (q.eval(n) != sum) {
          ok = false;
          detail = "fails at M = " + std::to_string(m) + ", N = " + std::to_string(n);
        }
      }
    }
    out.push_back(detail::make_check(suite, "q_polynomial_gamma_sums", ok, detail));
  }
  {
    bool ok = true;
    std::string detail = "n, k <= 12";
    for (unsigned n = 1; n <= 12 && ok; ++n) {
      auto f = rising_factorial(n);
      Rational partial = 0;
      for (unsigned k = 1; k <= 12 && ok; ++k) {
        partial += detail::product_rising(k, n - 1);
        if (f.eval(k) != partial * n || f.eval(k) != detail::product_rising(k, n)) {
          ok = false;
          detail = "fails at n = " + std::to_string(n) + ", k = " + std::to_string(k);
        }
      }
    }
    out.push_back(detail::make_check(suite, "integer_values_as_gamma_sums", ok, detail));
  }
  return out;
}

/// Every closed form against the enumerated distribution, coefficientwise.
/// `max_ground` bounds the size of the enumerated symmetric group.
inline std::vector<Check> verify_genfun_vs_oracle(std::uint32_t max_ground, const ClosedForms& forms,
                                                  const EnumerationOptions& opt = {}) {
  const std::string suite = "genfun_vs_oracle";
  std::vector<Check> out;
  const std::uint32_t top = std::min(max_ground, opt.cap);
  auto compare = [&](const std::string& name, const RationalPoly& closed, const RationalPoly& oracle) {
    bool ok = closed == oracle;
    out.push_back(detail::make_check(suite, name, ok, ok ? "exact equality" : detail::poly_mismatch(closed, oracle)));
  };
  for (std::uint32_t m = 1; m <= top; ++m) {
    auto ms = std::to_string(m);
    compare("one_cycle(" + ms + ")", forms.get(PgfSource::one_cycle, m).poly,
            distribution_to_pgf(exact_commutator_distribution(one_cycle_tau(m), opt)).poly);
    compare("uniform(" + ms + ")", forms.get(PgfSource::uniform, m).poly,
            distribution_to_pgf(exact_uniform_cycle_distribution(m, PermutationSubset::all, opt)).poly);
    compare("alternating(" + ms + ")", forms.get(PgfSource::alternating, m).poly,
            distribution_to_pgf(exact_uniform_cycle_distribution(m, PermutationSubset::alternating, opt)).poly);
    if (m >= 2)
      compare("co_alternating(" + ms + ")", forms.get(PgfSource::co_alternating, m).poly,
              distribution_to_pgf(exact_uniform_cycle_distribution(m, PermutationSubset::co_alternating, opt)).poly);
  }
  for (std::uint32_t m = 1; 2 * m <= top; ++m) {
    auto ms = std::to_string(m);
    compare("two_cycles(" + ms + ")", forms.get(PgfSource::two_cycles, m).poly,
            distribution_to_pgf(exact_commutator_distribution(two_cycles_tau(m), opt)).poly);
    compare("transpositions(" + ms + ")", forms.get(PgfSource::transpositions, m).poly,
            distribution_to_pgf(exact_commutator_distribution(transpositions_tau(m), opt)).poly);
  }
  for (std::uint32_t m = 1; m <= std::max<std::uint32_t>(8, top); ++m) {
    auto ms = std::to_string(m);
    compare("one_cycle_is_odd_law(" + ms + ")", forms.get(PgfSource::one_cycle, m).poly,
            forms.get(PgfSource::co_alternating, m + 1).poly);
  }
  {
    Rational mass = transpositions_pgf_alternative_prefactor(1).eval(1);
    bool detected = mass != 1 && forms.get(PgfSource::transpositions, 1).poly.eval(1) == 1;
    out.push_back(detail::make_check(suite, "transpositions_alternative_prefactor_rejected", detected,
                                     "2^M M!/(2M)! F_M^+(t^2/2) has mass " + rational_to_string(mass) +
                                         " at M = 1; the product form with prefactor 4^M M!/(2M)! is used"));
  }
  return out;
}

/// Exact parameters for the uniform and transposition laws, and root-found
/// parameters for the one-cycle law with the Lee-Yang and reconstruction
/// tolerances.
inline std::vector<Check> verify_bernoulli(const ClosedForms& forms, std::uint32_t max_exact = 12,
                                           std::uint32_t max_one_cycle = 30) {
  const std::string suite = "bernoulli";
  std::vector<Check> out;
  for (std::uint32_t m = 1; m <= max_exact; ++m) {
    auto ms = std::to_string(m);
    for (auto source : {PgfSource::uniform, PgfSource::transpositions}) {
      auto pgf = forms.get(source, m);
      auto d = bernoulli_decomposition(pgf);
      bool ok = d.offset == 0 && d.terms.size() == m;
      for (std::uint32_t k = 1; ok && k <= m; ++k) {
        const auto& t = d.terms[k - 1];
        Integer den = source == PgfSource::uniform ? Integer(k) : Integer(2 * k - 1);
        std::uint32_t mult = source == PgfSource::uniform ? 1 : 2;
        ok = t.exact && *t.exact == ratio(1, den) && t.multiplier == mult;
      }
      bool expands = ok && expand_exact(d) == pgf.poly;
      out.push_back(detail::make_check(suite, std::string(to_string(source)) + "(" + ms + ")", ok && expands,
                                       !ok         ? "parameters differ from the expected exact values"
                                       : !expands  ? "product " + detail::poly_mismatch(expand_exact(d), pgf.poly)
                                                   : "exact parameters, exact reconstruction"));
    }
  }
  for (std::uint32_t m = 1; m <= max_one_cycle; ++m) {
    auto pgf = forms.get(PgfSource::one_cycle, m);
    std::ostringstream detail;
    bool ok = true;
    try {
      auto d = bernoulli_decomposition(pgf);
      double residual = reconstruction_residual(d, pgf);
      double real_part = d.roots ? d.roots->max_real_part : 0.0;
      ok = d.terms.size() == m / 2 && d.offset == m % 2 && real_part < 1e-9 && residual < 1e-10;
      detail << d.terms.size() << " parameters, offset " << d.offset << ", max |Re root| " << real_part
             << ", reconstruction residual " << residual;
    } catch (const std::exception& e) {
      ok = false;
      detail << e.what();
    }
    out.push_back(detail::make_check(suite, "one_cycle(" + std::to_string(m) + ")", ok, detail.str()));
  }
  return out;
}

struct RmtSuiteConfig {
  std::uint64_t samples = 100000;
  std::uint64_t seed = 42;
  unsigned threads = 0;
  std::uint32_t partitions = 8;
  std::uint32_t oracle_cap = default_enumeration_cap;
  double threshold = 5.0;
  /// Heavy-tailed identities whose relative standard error exceeds this at
  /// `samples` draws are rerun with `samples * escalation` draws.
  double max_relative_error = 0.02;
  std::uint64_t escalation = 10;
};

/// Runs `estimate(samples)` and reruns with more samples when the relative
/// standard error against the target is too large.
inline MomentReport run_with_escalation(const RmtSuiteConfig& cfg,
                                        const std::function<MomentReport(std::uint64_t)>& estimate) {
  MomentReport r = estimate(cfg.samples);
  double scale = r.target ? std::fabs(r.target->get_d()) : 0.0;
  if (scale > 0 && r.std_error > cfg.max_relative_error * scale && cfg.escalation > 1)
    r = estimate(cfg.samples * cfg.escalation);
  return r;
}

namespace detail {

inline std::string z_detail(const MomentReport& r) {
  std::ostringstream os;
  os << "estimate " << r.estimate << " +- " << r.std_error << ", target "
     << (r.target ? rational_to_string(*r.target) : std::string("none")) << ", z " << r.z;
  if (r.z_imag) os << ", z_imag " << *r.z_imag;
  os << ", samples " << r.samples;
  return os.str();
}

inline Check report_check(const std::string& suite, const std::string& name, const MomentReport& r,
                          double threshold) {
  Check c = make_check(suite, name, r.passes(threshold), z_detail(r));
  if (!r.target) c.detail = r.target_source;
  c.report = r;
  return c;
}

}  // namespace detail

/// The random-matrix identities over the standard grid.
inline std::vector<Check> verify_rmt(const RmtSuiteConfig& cfg) {
  const std::string suite = "rmt";
  std::vector<Check> out;
  auto tag = [](std::initializer_list<std::pair<const char*, std::uint32_t>> kv) {
    std::string s;
    for (const auto& [k, v] : kv) s += (s.empty() ? "" : ",") + std::string(k) + "=" + std::to_string(v);
    return s;
  };
  auto direct = [&](std::uint32_t n, std::uint32_t m, std::uint32_t k) {
    return run_with_escalation(cfg, [&](std::uint64_t s) {
      MatrixSampleConfig mc;
      mc.n = n;
      mc.samples = s;
      mc.seed = cfg.seed;
      mc.partitions = cfg.partitions;
      mc.threads = cfg.threads;
      mc.oracle_cap = cfg.oracle_cap;
      return mc_trace_power_moment(mc, m, k);
    });
  };

  for (std::uint32_t n = 1; n <= 3; ++n)
    for (std::uint32_t m = 1; m <= 8; ++m)
      for (std::uint32_t k = 1; m * k <= 8; ++k)
        out.push_back(detail::report_check(suite, "bridge(" + tag({{"N", n}, {"m", m}, {"K", k}}) + ")",
                                           direct(n, m, k), cfg.threshold));

  for (std::uint32_t n = 1; n <= 6; ++n)
    for (std::uint32_t m = n; m <= 6; ++m) {
      auto name = tag({{"N", n}, {"M", m}});
      auto s1 = run_with_escalation(cfg, [&](std::uint64_t s) {
        return mc_gamma_shortcut_moment(n, m, 1, s, cfg.seed, cfg.partitions, cfg.threads, cfg.oracle_cap);
      });
      out.push_back(detail::report_check(suite, "shortcut_exact(" + name + ",K=1)", s1, cfg.threshold));
      auto d1 = direct(n, m, 1);
      d1.target = Rational(gamma_ratio_sum(n, m));
      d1.target_source = "exact: sum_i Gamma(M+i)/Gamma(i)";
      d1.z = z_score(d1.estimate, d1.target->get_d(), d1.std_error);
      out.push_back(detail::report_check(suite, "direct_exact(" + name + ",K=1)", d1, cfg.threshold));
      auto s2 = run_with_escalation(cfg, [&](std::uint64_t s) {
        return mc_gamma_shortcut_moment(n, m, 2, s, cfg.seed, cfg.partitions, cfg.threads, cfg.oracle_cap);
      });
      auto d2 = direct(n, m, 2);
      double cz = combined_z(s2, d2);
      std::ostringstream os;
      os << "shortcut " << s2.estimate << " +- " << s2.std_error << ", direct " << d2.estimate << " +- "
         << d2.std_error << ", combined z " << cz;
      out.push_back(detail::make_check(suite, "shortcut_vs_direct(" + name + ",K=2)",
                                       std::fabs(cz) <= cfg.threshold, os.str()));
    }
  {
    bool ok = gamma_ratio_sum(2, 2) == 8 && gamma_ratio_sum(2, 3) == 30 && gamma_ratio_sum(1, 1) == 1;
    out.push_back(detail::make_check(suite, "gamma_sum_values", ok,
                                     "sum_i Gamma(M+i)/Gamma(i): (N,M)=(2,2) -> 8, (2,3) -> 30, (1,1) -> 1"));
  }

  for (std::uint32_t n = 1; n <= 4; ++n)
    for (std::uint32_t m = 1; m <= 6; ++m) {
      auto name = tag({{"N", n}, {"M", m}});
      out.push_back(detail::report_check(suite, "real_trace(" + name + ")", run_with_escalation(cfg, [&](std::uint64_t s) {
                                           return mc_real_trace_law(n, m, s, cfg.seed, cfg.partitions, cfg.threads);
                                         }),
                                         cfg.threshold));
      out.push_back(detail::report_check(suite, "trG2(" + name + ")", run_with_escalation(cfg, [&](std::uint64_t s) {
                                           return mc_tr_G_squared_law(n, m, s, cfg.seed, cfg.partitions, cfg.threads);
                                         }),
                                         cfg.threshold));
      out.push_back(detail::report_check(suite, "trG1G2(" + name + ")", run_with_escalation(cfg, [&](std::uint64_t s) {
                                           return mc_tr_G1G2_law(n, m, s, cfg.seed, cfg.partitions, cfg.threads);
                                         }),
                                         cfg.threshold));
    }
  for (std::uint32_t n = 1; n <= 4; ++n)
    out.push_back(detail::report_check(suite, "trG2_mean(" + tag({{"N", n}}) + ")",
                                       mc_tr_G_squared_phase(n, cfg.samples, cfg.seed, cfg.partitions, cfg.threads),
                                       cfg.threshold));
  for (auto [n, m1, m2] : std::vector<std::array<std::uint32_t, 3>>{
           {2, 1, 2}, {1, 1, 3}, {3, 2, 4}, {4, 1, 2}, {2, 2, 3}, {3, 1, 3}}) {
    out.push_back(detail::report_check(suite, "mixed(" + tag({{"N", n}, {"M1", m1}, {"M2", m2}}) + ")",
                                       mixed_trace_vanishing(n, m1, m2, cfg.samples, cfg.seed, cfg.partitions,
                                                             cfg.threads),
                                       cfg.threshold));
  }
  {
    Integer alternative = tr_G1G2_alternative_constant(1, 1);
    Rational derived = Rational(factorial(1)) * rising_factorial(1).eval(1);
    out.push_back(detail::make_check(suite, "trG1G2_alternative_constant_rejected", Rational(alternative) != derived,
                                     "M!(M+N^2)! gives " + alternative.get_str() + " at N = M = 1; M! F_M^+(N^2) gives " +
                                         rational_to_string(derived) + ", the simulated value"));
  }
  return out;
}

enum class VerifyScope { factorials, genfun_vs_oracle, bernoulli, rmt, all };

inline VerifyScope parse_verify_scope(std::string_view s) {
  if (s == "factorials") return VerifyScope::factorials;
  if (s == "genfun_vs_oracle") return VerifyScope::genfun_vs_oracle;
  if (s == "bernoulli") return VerifyScope::bernoulli;
  if (s == "rmt") return VerifyScope::rmt;
  if (s == "all") return VerifyScope::all;
  throw std::invalid_argument("unknown verify scope '" + std::string(s) + "'");
}

struct VerifyOptions {
  VerifyScope scope = VerifyScope::all;
  std::uint32_t max_ground = 6;
  EnumerationOptions enumeration{};
  RmtSuiteConfig rmt{};
  std::optional<Mutation> mutation;
};

inline std::vector<Check> run_verify(const VerifyOptions& opt) {
  ClosedForms forms(opt.mutation);
  std::vector<Check> out;
  auto append = [&out](std::vector<Check> more) {
    out.insert(out.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
  };
  const bool all = opt.scope == VerifyScope::all;
  if (all || opt.scope == VerifyScope::factorials) append(verify_factorials());
  if (all || opt.scope == VerifyScope::genfun_vs_oracle)
    append(verify_genfun_vs_oracle(opt.max_ground, forms, opt.enumeration));
  if (all || opt.scope == VerifyScope::bernoulli) append(verify_bernoulli(forms));
  if (all || opt.scope == VerifyScope::rmt) append(verify_rmt(opt.rmt));
  return out;
}

}  // namespace commcyc
