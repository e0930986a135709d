#pragma once

// Permutations of {0, ..., M-1} in one-line notation, cycle statistics,
// commutators and the canonical representatives of the cycle types used
// throughout the library.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace commcyc {

enum class Parity { even, odd };

inline const char* to_string(Parity p) { return p == Parity::even ? "even" : "odd"; }

/// A bijection of {0, ..., size()-1}; image(i) is where i goes.
class Permutation {
 public:
  using index_type = std::uint32_t;

  static Permutation identity(std::size_t size) {
    if (size == 0) throw std::invalid_argument("permutation size must be at least 1");
    if (size > std::numeric_limits<std::int32_t>::max())
      throw std::invalid_argument("permutation size exceeds 2^31-1");
    std::vector<index_type> map(size);
    std::iota(map.begin(), map.end(), index_type{0});
    return Permutation(std::move(map), unchecked_tag{});
  }

  /// Validates that `map` is a bijection.
  explicit Permutation(std::vector<index_type> map) : map_(std::move(map)) {
    if (map_.empty()) throw std::invalid_argument("permutation size must be at least 1");
    if (map_.size() > std::numeric_limits<std::int32_t>::max())
      throw std::invalid_argument("permutation size exceeds 2^31-1");
    std::vector<bool> seen(map_.size(), false);
    for (index_type v : map_) {
      if (v >= map_.size() || seen[v])
        throw std::invalid_argument("one-line map is not a bijection");
      seen[v] = true;
    }
  }

  std::size_t size() const noexcept { return map_.size(); }
  index_type operator[](std::size_t i) const { return map_[i]; }
  std::span<const index_type> images() const noexcept { return map_; }
  bool is_identity() const noexcept {
    for (std::size_t i = 0; i < map_.size(); ++i)
      if (map_[i] != i) return false;
    return true;
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  struct unchecked_tag {};
  Permutation(std::vector<index_type> map, unchecked_tag) : map_(std::move(map)) {}

  friend Permutation compose(const Permutation&, const Permutation&);
  friend Permutation inverse(const Permutation&);

  std::vector<index_type> map_;
};

/// (a o b)(i) = a(b(i)).
inline Permutation compose(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) throw std::invalid_argument("compose: size mismatch");
  std::vector<Permutation::index_type> out(a.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.map_[b.map_[i]];
  return Permutation(std::move(out), Permutation::unchecked_tag{});
}

inline Permutation inverse(const Permutation& p) {
  std::vector<Permutation::index_type> out(p.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[p.map_[i]] = static_cast<Permutation::index_type>(i);
  return Permutation(std::move(out), Permutation::unchecked_tag{});
}

/// [s, t] = s t s^-1 t^-1.
inline Permutation commutator(const Permutation& s, const Permutation& t) {
  if (s.size() != t.size()) throw std::invalid_argument("commutator: size mismatch");
  return compose(compose(s, t), compose(inverse(s), inverse(t)));
}

/// s t s^-1
inline Permutation conjugate(const Permutation& s, const Permutation& t) {
  return compose(compose(s, t), inverse(s));
}

/// Number of orbits, fixed points included. Works on any one-line map.
inline std::size_t cycle_count(std::span<const Permutation::index_type> map) {
  std::vector<bool> seen(map.size(), false);
  std::size_t cycles = 0;
  for (std::size_t i = 0; i < map.size(); ++i) {
    if (seen[i]) continue;
    ++cycles;
    for (std::size_t j = i; !seen[j]; j = map[j]) seen[j] = true;
  }
  return cycles;
}

inline std::size_t cycle_count(const Permutation& p) { return cycle_count(p.images()); }

/// Even iff cycle_count(p) and size() have the same parity.
inline Parity sign_parity(const Permutation& p) {
  return (cycle_count(p) % 2) == (p.size() % 2) ? Parity::even : Parity::odd;
}

/// Multiset of cycle lengths. Parts are kept sorted in decreasing order so
/// that equal multisets compare equal.
class CycleType {
 public:
  explicit CycleType(std::vector<std::uint32_t> parts) : parts_(std::move(parts)) {
    if (parts_.empty()) throw std::invalid_argument("cycle type must have at least one part");
    std::uint64_t total = 0;
    for (auto c : parts_) {
      if (c == 0) throw std::invalid_argument("cycle lengths must be positive");
      total += c;
    }
    if (total > std::numeric_limits<std::int32_t>::max())
      throw std::invalid_argument("cycle type size exceeds 2^31-1");
    std::sort(parts_.begin(), parts_.end(), std::greater<>{});
  }

  std::span<const std::uint32_t> parts() const noexcept { return parts_; }
  std::size_t size() const noexcept {
    return std::accumulate(parts_.begin(), parts_.end(), std::size_t{0});
  }
  std::size_t cycles() const noexcept { return parts_.size(); }

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(parts_[i]);
    }
    return s + "]";
  }

  friend bool operator==(const CycleType&, const CycleType&) = default;

 private:
  std::vector<std::uint32_t> parts_;
};

inline CycleType cycle_type(const Permutation& p) {
  std::vector<bool> seen(p.size(), false);
  std::vector<std::uint32_t> parts;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    std::uint32_t len = 0;
    for (std::size_t j = i; !seen[j]; j = p[j]) {
      seen[j] = true;
      ++len;
    }
    parts.push_back(len);
  }
  return CycleType(std::move(parts));
}

/// Consecutive blocks (0 1 ... c1-1)(c1 ... c1+c2-1)... in the stored part order.
inline Permutation canonical_tau(const CycleType& type) {
  std::vector<Permutation::index_type> map(type.size());
  std::uint32_t start = 0;
  for (auto len : type.parts()) {
    for (std::uint32_t j = 0; j < len; ++j) map[start + j] = start + (j + 1) % len;
    start += len;
  }
  return Permutation(std::move(map));
}

/// (1 ... M) on M points.
inline Permutation one_cycle_tau(std::uint32_t m) {
  if (m == 0) throw std::invalid_argument("M must be at least 1");
  return canonical_tau(CycleType({m}));
}

/// (1 ... M)(M+1 ... 2M) on 2M points.
inline Permutation two_cycles_tau(std::uint32_t m) {
  if (m == 0) throw std::invalid_argument("M must be at least 1");
  return canonical_tau(CycleType({m, m}));
}

/// (1 2)(3 4)...(2M-1 2M) on 2M points.
inline Permutation transpositions_tau(std::uint32_t m) {
  if (m == 0) throw std::invalid_argument("M must be at least 1");
  return canonical_tau(CycleType(std::vector<std::uint32_t>(m, 2)));
}

/// Unbiased integer in [0, bound) by rejection on 64-bit draws.
template <class Rng>
std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  static_assert(Rng::min() == 0 && Rng::max() == std::numeric_limits<std::uint64_t>::max(),
                "uniform_below expects a full-range 64-bit generator");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

/// Fisher-Yates shuffle of the identity.
template <class Rng>
Permutation sample_uniform(std::size_t size, Rng& rng) {
  if (size == 0) throw std::invalid_argument("permutation size must be at least 1");
  std::vector<Permutation::index_type> map(size);
  std::iota(map.begin(), map.end(), Permutation::index_type{0});
  for (std::size_t i = size - 1; i > 0; --i) {
    auto j = static_cast<std::size_t>(uniform_below(rng, i + 1));
    std::swap(map[i], map[j]);
  }
  return Permutation(std::move(map));
}

// Cycle notation at the I/O boundary uses 1-based labels: "(1 2 3)(4 5)".

/// Parses cycle notation. Commas and whitespace both separate labels. When
/// `size` is absent the ground set is the largest label mentioned.
inline Permutation parse_cycles(std::string_view text, std::optional<std::size_t> size = std::nullopt) {
  std::vector<std::vector<std::uint64_t>> cycles;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ','))
      ++i;
  };
  std::uint64_t largest = 0;
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '(') throw std::invalid_argument("cycle notation: expected '('");
    ++i;
    std::vector<std::uint64_t> cycle;
    for (;;) {
      skip_ws();
      if (i >= text.size()) throw std::invalid_argument("cycle notation: unterminated cycle");
      if (text[i] == ')') {
        ++i;
        break;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[i])))
        throw std::invalid_argument("cycle notation: expected a label");
      std::uint64_t v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        v = v * 10 + static_cast<std::uint64_t>(text[i] - '0');
        if (v > std::numeric_limits<std::int32_t>::max())
          throw std::invalid_argument("cycle notation: label too large");
        ++i;
      }
      if (v == 0) throw std::invalid_argument("cycle notation: labels are 1-based");
      largest = std::max(largest, v);
      cycle.push_back(v - 1);
    }
    cycles.push_back(std::move(cycle));
    skip_ws();
  }
  std::size_t n = size.value_or(static_cast<std::size_t>(largest));
  if (n == 0) throw std::invalid_argument("cycle notation: empty permutation needs an explicit size");
  if (largest > n) throw std::invalid_argument("cycle notation: label exceeds ground-set size");
  std::vector<std::int64_t> map(n, -1);
  for (const auto& cyc : cycles) {
    for (std::size_t k = 0; k < cyc.size(); ++k) {
      auto from = cyc[k];
      auto to = cyc[(k + 1) % cyc.size()];
      if (map[from] != -1) throw std::invalid_argument("cycle notation: label repeated");
      map[from] = static_cast<std::int64_t>(to);
    }
  }
  std::vector<Permutation::index_type> out(n);
  for (std::size_t k = 0; k < n; ++k)
    out[k] = map[k] == -1 ? static_cast<Permutation::index_type>(k)
                          : static_cast<Permutation::index_type>(map[k]);
  return Permutation(std::move(out));
}

/// Fixed points are omitted; the identity prints as "()".
inline std::string format_cycles(const Permutation& p) {
  std::ostringstream os;
  std::vector<bool> seen(p.size(), false);
  bool any = false;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == i) continue;
    any = true;
    os << '(';
    bool first = true;
    for (std::size_t j = i; !seen[j]; j = p[j]) {
      seen[j] = true;
      if (!first) os << ' ';
      os << j + 1;
      first = false;
    }
    os << ')';
  }
  return any ? os.str() : "()";
}

}  // namespace commcyc
