#pragma once

// Exact laws of cycle counts by exhaustive enumeration of the symmetric group.
// Counts are accumulated in integer histograms and divided by the number of
// terms once at the end.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "commcyc/genfun.hpp"
#include "commcyc/permutation.hpp"

namespace commcyc {

inline constexpr std::uint32_t default_enumeration_cap = 8;
inline constexpr std::uint32_t hard_enumeration_cap = 10;

class EnumerationCapError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

struct EnumerationOptions {
  std::uint32_t cap = default_enumeration_cap;
  /// 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
};

/// probs[k] = P(C = k) for k = 0..ground_size.
struct CycleDistribution {
  std::uint32_t ground_size = 0;
  std::vector<Rational> probs;

  Rational probability(std::size_t k) const { return k < probs.size() ? probs[k] : Rational(0); }

  Rational total() const {
    Rational s = 0;
    for (const auto& p : probs) s += p;
    return s;
  }

  /// True when every k with positive mass has k = ground_size (mod 2).
  bool even_support() const {
    for (std::size_t k = 0; k < probs.size(); ++k)
      if (probs[k] != 0 && k % 2 != ground_size % 2) return false;
    return true;
  }

  friend bool operator==(const CycleDistribution&, const CycleDistribution&) = default;
};

using CycleHistogram = std::vector<std::uint64_t>;

inline CycleDistribution histogram_to_distribution(std::uint32_t ground_size, const CycleHistogram& counts) {
  std::uint64_t total = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
  if (total == 0) throw std::invalid_argument("empty histogram");
  CycleDistribution d;
  d.ground_size = ground_size;
  d.probs.resize(ground_size + 1, 0);
  for (std::size_t k = 0; k < counts.size() && k <= ground_size; ++k) {
    if (counts[k] == 0) continue;
    Rational q(Integer(std::to_string(counts[k])), Integer(std::to_string(total)));
    q.canonicalize();
    d.probs[k] = q;
  }
  return d;
}

inline void check_cap(std::size_t size, const EnumerationOptions& opt, const char* what) {
  if (opt.cap > hard_enumeration_cap) {
    throw EnumerationCapError("enumeration cap " + std::to_string(opt.cap) + " exceeds the hard cap " +
                              std::to_string(hard_enumeration_cap));
  }
  if (size > opt.cap) {
    throw EnumerationCapError(std::string(what) + ": ground set of size " + std::to_string(size) +
                              " exceeds the enumeration cap " + std::to_string(opt.cap) +
                              "; use the class-based path or Monte-Carlo sampling (`mc`, `sample`)");
  }
}

inline unsigned resolve_threads(unsigned requested, std::size_t blocks) {
  unsigned t = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(t, blocks));
}

/// Visits every permutation of {0..n-1} in lexicographic order, split into n
/// contiguous blocks by first image. `make_block_visitor(block)` returns the
/// callable that receives each one-line map of that block; blocks run on up to
/// `threads` workers and the caller merges their results.
template <class Visitor>
void for_each_permutation_blocked(std::size_t n, unsigned threads, Visitor&& make_block_visitor) {
  const unsigned workers = resolve_threads(threads, n);
  auto run_block = [&](std::size_t block) {
    std::vector<Permutation::index_type> map(n);
    map[0] = static_cast<Permutation::index_type>(block);
    for (std::size_t i = 1, v = 0; i < n; ++i, ++v) {
      if (v == block) ++v;
      map[i] = static_cast<Permutation::index_type>(v);
    }
    auto visit = make_block_visitor(block);
    do {
      visit(std::span<const Permutation::index_type>(map));
    } while (std::next_permutation(map.begin() + 1, map.end()));
  };
  if (workers <= 1) {
    for (std::size_t b = 0; b < n; ++b) run_block(b);
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t b = w; b < n; b += workers) run_block(b);
    });
  }
  for (auto& t : pool) t.join();
}

/// Law of cycle_count([s, tau]) over all s in S_M.
inline CycleDistribution exact_commutator_distribution(const Permutation& tau, const EnumerationOptions& opt = {}) {
  const std::size_t n = tau.size();
  check_cap(n, opt, "exact_commutator_distribution");
  std::vector<Permutation::index_type> tau_inv(n);
  for (std::size_t i = 0; i < n; ++i) tau_inv[tau[i]] = static_cast<Permutation::index_type>(i);

  std::vector<CycleHistogram> per_block(n, CycleHistogram(n + 1, 0));
  for_each_permutation_blocked(n, opt.threads, [&](std::size_t block) {
    return [&, block, s_inv = std::vector<Permutation::index_type>(n),
            comm = std::vector<Permutation::index_type>(n)](std::span<const Permutation::index_type> s) mutable {
      for (std::size_t i = 0; i < n; ++i) s_inv[s[i]] = static_cast<Permutation::index_type>(i);
      // [s,tau](i) = s(tau(s^-1(tau^-1(i))))
      for (std::size_t i = 0; i < n; ++i) comm[i] = s[tau[s_inv[tau_inv[i]]]];
      ++per_block[block][cycle_count(comm)];
    };
  });
  CycleHistogram total(n + 1, 0);
  for (const auto& h : per_block)
    for (std::size_t k = 0; k <= n; ++k) total[k] += h[k];
  return histogram_to_distribution(static_cast<std::uint32_t>(n), total);
}

/// |conjugacy class| = M! / prod_j (j^{a_j} a_j!) where a_j counts parts equal to j.
inline Integer conjugacy_class_size(const CycleType& type) {
  std::map<std::uint32_t, std::uint32_t> mult;
  for (auto c : type.parts()) ++mult[c];
  Integer denom = 1;
  for (auto [len, count] : mult) {
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), len, count);
    denom *= p * factorial(count);
  }
  return factorial(type.size()) / denom;
}

/// Every permutation of the given cycle type, generated combinatorially: the
/// smallest free point opens a cycle of some remaining length, then the rest
/// of that cycle is an ordered choice of free points.
inline std::vector<Permutation> enumerate_conjugacy_class(const CycleType& type) {
  const std::size_t n = type.size();
  std::map<std::uint32_t, std::uint32_t> remaining;
  for (auto c : type.parts()) ++remaining[c];
  std::vector<Permutation> out;
  std::vector<Permutation::index_type> map(n, 0);
  std::vector<bool> used(n, false);
  std::vector<Permutation::index_type> cycle;

  std::function<void()> open_cycle;
  std::function<void(std::uint32_t)> extend;

  open_cycle = [&] {
    std::size_t first = 0;
    while (first < n && used[first]) ++first;
    if (first == n) {
      out.emplace_back(map);
      return;
    }
    for (auto& [len, count] : remaining) {
      if (count == 0) continue;
      --count;
      used[first] = true;
      cycle.assign(1, static_cast<Permutation::index_type>(first));
      extend(len);
      used[first] = false;
      ++count;
    }
  };

  extend = [&](std::uint32_t len) {
    if (cycle.size() == len) {
      for (std::size_t k = 0; k < len; ++k) map[cycle[k]] = cycle[(k + 1) % len];
      auto saved = cycle;
      open_cycle();
      cycle = std::move(saved);
      return;
    }
    for (std::size_t v = 0; v < n; ++v) {
      if (used[v]) continue;
      used[v] = true;
      cycle.push_back(static_cast<Permutation::index_type>(v));
      extend(len);
      cycle.pop_back();
      used[v] = false;
    }
  };

  open_cycle();
  return out;
}

/// Class enumeration by conjugating tau with all of S_M and deduplicating.
inline std::vector<Permutation> conjugacy_class_by_conjugation(const Permutation& tau,
                                                               const EnumerationOptions& opt = {}) {
  check_cap(tau.size(), opt, "conjugacy_class_by_conjugation");
  std::vector<Permutation> out;
  std::vector<Permutation::index_type> s(tau.size());
  std::iota(s.begin(), s.end(), Permutation::index_type{0});
  do {
    out.push_back(conjugate(Permutation(s), tau));
  } while (std::next_permutation(s.begin(), s.end()));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Law of cycle_count(t1 t2) with t1 uniform in the class of the canonical
/// tau of this type and t2 = tau^-1. Same law as the commutator.
inline CycleDistribution exact_class_product_distribution(const CycleType& type,
                                                         std::uint32_t cap = hard_enumeration_cap) {
  check_cap(type.size(), EnumerationOptions{cap, 1}, "exact_class_product_distribution");
  const Permutation tau_inv = inverse(canonical_tau(type));
  const auto cls = enumerate_conjugacy_class(type);
  const std::size_t n = type.size();
  CycleHistogram h(n + 1, 0);
  for (const auto& t1 : cls) ++h[cycle_count(compose(t1, tau_inv))];
  return histogram_to_distribution(static_cast<std::uint32_t>(n), h);
}

enum class PermutationSubset { all, alternating, co_alternating };

inline CycleDistribution exact_uniform_cycle_distribution(std::uint32_t m, PermutationSubset subset,
                                                          const EnumerationOptions& opt = {}) {
  if (m == 0) throw std::invalid_argument("M must be at least 1");
  if (subset == PermutationSubset::co_alternating && m == 1)
    throw std::invalid_argument("no odd permutations on one point");
  check_cap(m, opt, "exact_uniform_cycle_distribution");
  std::vector<CycleHistogram> per_block(m, CycleHistogram(m + 1, 0));
  for_each_permutation_blocked(m, opt.threads, [&](std::size_t block) {
    return [&, block](std::span<const Permutation::index_type> s) { ++per_block[block][cycle_count(s)]; };
  });
  CycleHistogram h(m + 1, 0);
  for (const auto& b : per_block)
    for (std::size_t k = 0; k <= m; ++k) {
      bool even = k % 2 == m % 2;
      if (subset == PermutationSubset::all || (subset == PermutationSubset::alternating) == even) h[k] += b[k];
    }
  return histogram_to_distribution(m, h);
}

inline CyclePGF distribution_to_pgf(const CycleDistribution& d, PgfSource source = PgfSource::oracle,
                                    std::uint32_t m = 0) {
  return {RationalPoly(d.probs), m ? m : d.ground_size, d.ground_size, source};
}

inline CycleDistribution pgf_to_distribution(const CyclePGF& pgf) {
  CycleDistribution d;
  d.ground_size = pgf.ground_size;
  d.probs.resize(pgf.ground_size + 1, 0);
  for (std::size_t k = 0; k <= pgf.ground_size; ++k) d.probs[k] = pgf.poly.coeff(k);
  if (static_cast<std::size_t>(pgf.poly.degree() + 1) > d.probs.size())
    throw std::invalid_argument("PGF degree exceeds its ground set");
  return d;
}

enum class HultmanMethod { formula, enumeration };

/// Number of s in S_M with cycle_count([s, (1..M)]) = k. Zero outside the support.
inline Integer hultman_count(std::uint32_t m, std::uint32_t k, HultmanMethod method = HultmanMethod::formula,
                             const EnumerationOptions& opt = {}) {
  if (m == 0) throw std::invalid_argument("M must be at least 1");
  if (k == 0 || k > m || (k % 2) != (m % 2)) return 0;
  Rational c;
  if (method == HultmanMethod::formula) {
    c = one_cycle_pgf(m).poly.coeff(k);
  } else {
    c = exact_commutator_distribution(one_cycle_tau(m), opt).probability(k);
  }
  Rational scaled = c * Rational(factorial(m));
  if (scaled.get_den() != 1) throw std::logic_error("hultman_count: non-integral count");
  return scaled.get_num();
}

inline std::string csv_header_distribution() { return "M,cycle_count,probability_num,probability_den\n"; }

/// Rows for k with positive mass.
inline std::string distribution_csv_rows(const CycleDistribution& d) {
  std::ostringstream os;
  for (std::size_t k = 0; k < d.probs.size(); ++k) {
    if (d.probs[k] == 0) continue;
    os << d.ground_size << ',' << k << ',' << d.probs[k].get_num().get_str() << ','
       << d.probs[k].get_den().get_str() << '\n';
  }
  return os.str();
}

}  // namespace commcyc
