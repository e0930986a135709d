#pragma once

// Dense univariate polynomials with exact rational coefficients.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace commcyc {

using Integer = mpz_class;
using Rational = mpq_class;

/// num/den reduced to lowest terms.
inline Rational ratio(const Integer& num, const Integer& den) {
  if (den == 0) throw std::domain_error("ratio: zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Canonical "num/den" rendering; integers keep the "/1".
inline std::string rational_to_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// Accepts "n", "-n" or "n/d" with d != 0.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto slash = s.find('/');
  try {
    Rational q;
    if (slash == std::string::npos) {
      q = Rational(Integer(s, 10));
    } else {
      Integer num(s.substr(0, slash), 10);
      Integer den(s.substr(slash + 1), 10);
      if (den == 0) throw std::invalid_argument("zero denominator");
      q = Rational(num, den);
      q.canonicalize();
    }
    return q;
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("not a rational: '" + s + "'");
  }
}

/// Coefficient i multiplies X^i. The highest stored coefficient is nonzero;
/// the zero polynomial has no coefficients.
class RationalPoly {
 public:
  RationalPoly() = default;

  explicit RationalPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
    for (auto& c : coeffs_) c.canonicalize();
    trim();
  }

  RationalPoly(std::initializer_list<Rational> coeffs)
      : RationalPoly(std::vector<Rational>(coeffs)) {}

  static RationalPoly constant(const Rational& c) { return RationalPoly({c}); }

  /// c * X^k
  static RationalPoly monomial(std::size_t k, const Rational& c = 1) {
    std::vector<Rational> v(k + 1, 0);
    v[k] = c;
    return RationalPoly(std::move(v));
  }

  static RationalPoly x() { return monomial(1); }

  bool is_zero() const noexcept { return coeffs_.empty(); }

  /// -1 for the zero polynomial.
  long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }

  const std::vector<Rational>& coefficients() const noexcept { return coeffs_; }

  /// Zero beyond the degree.
  Rational coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Rational(0); }

  Rational leading() const { return is_zero() ? Rational(0) : coeffs_.back(); }

  Rational operator()(const Rational& x) const { return eval(x); }

  /// Horner evaluation.
  Rational eval(Rational x) const {
    x.canonicalize();
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  double eval_double(double x) const {
    double acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + it->get_d();
    return acc;
  }

  /// P(c X)
  RationalPoly scaled_argument(const Rational& c) const {
    std::vector<Rational> v(coeffs_);
    Rational power = 1;
    for (auto& a : v) {
      a *= power;
      power *= c;
    }
    return RationalPoly(std::move(v));
  }

  /// P(X^k)
  RationalPoly power_argument(std::size_t k) const {
    if (k == 0) throw std::invalid_argument("power_argument: exponent must be positive");
    if (is_zero()) return {};
    std::vector<Rational> v((coeffs_.size() - 1) * k + 1, 0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) v[i * k] = coeffs_[i];
    return RationalPoly(std::move(v));
  }

  RationalPoly derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<Rational> v(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) v[i - 1] = coeffs_[i] * static_cast<unsigned long>(i);
    return RationalPoly(std::move(v));
  }

  /// Exact division by X^k; throws unless the low k coefficients vanish.
  RationalPoly divide_by_x_power(std::size_t k) const {
    for (std::size_t i = 0; i < k && i < coeffs_.size(); ++i)
      if (coeffs_[i] != 0) throw std::domain_error("divide_by_x_power: not divisible");
    if (k >= coeffs_.size()) return {};
    return RationalPoly(std::vector<Rational>(coeffs_.begin() + static_cast<long>(k), coeffs_.end()));
  }

  RationalPoly& operator+=(const RationalPoly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), 0);
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
  }

  RationalPoly& operator-=(const RationalPoly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), 0);
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    trim();
    return *this;
  }

  RationalPoly& operator*=(const Rational& c) {
    if (c == 0) {
      coeffs_.clear();
      return *this;
    }
    for (auto& a : coeffs_) a *= c;
    return *this;
  }

  RationalPoly& operator/=(const Rational& c) {
    if (c == 0) throw std::domain_error("division of polynomial by zero");
    for (auto& a : coeffs_) a /= c;
    return *this;
  }

  RationalPoly& operator*=(const RationalPoly& o) {
    *this = *this * o;
    return *this;
  }

  friend RationalPoly operator+(RationalPoly a, const RationalPoly& b) { return a += b; }
  friend RationalPoly operator-(RationalPoly a, const RationalPoly& b) { return a -= b; }
  friend RationalPoly operator-(RationalPoly a) {
    for (auto& c : a.coeffs_) c = -c;
    return a;
  }
  friend RationalPoly operator*(RationalPoly a, const Rational& c) { return a *= c; }
  friend RationalPoly operator*(const Rational& c, RationalPoly a) { return a *= c; }
  friend RationalPoly operator/(RationalPoly a, const Rational& c) { return a /= c; }

  friend RationalPoly operator*(const RationalPoly& a, const RationalPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> v(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return RationalPoly(std::move(v));
  }

  friend bool operator==(const RationalPoly& a, const RationalPoly& b) { return a.coeffs_ == b.coeffs_; }

  /// Human-readable, highest degree first, e.g. "1/2*t^3 + 1/2*t".
  std::string to_string(std::string_view var = "t") const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = coeffs_.size(); k-- > 0;) {
      const Rational& c = coeffs_[k];
      if (c == 0) continue;
      Rational mag = abs(c);
      if (first) {
        if (c < 0) os << "-";
      } else {
        os << (c < 0 ? " - " : " + ");
      }
      first = false;
      bool unit = mag == 1;
      if (!unit || k == 0) os << mag.get_str();
      if (k > 0) {
        if (!unit) os << "*";
        os << var;
        if (k > 1) os << "^" << k;
      }
    }
    return os.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const RationalPoly& p) { return os << p.to_string(); }

  std::vector<std::string> coefficient_strings() const {
    std::vector<std::string> out;
    out.reserve(coeffs_.size());
    for (const auto& c : coeffs_) out.push_back(rational_to_string(c));
    return out;
  }

  static RationalPoly from_coefficient_strings(const std::vector<std::string>& items) {
    std::vector<Rational> v;
    v.reserve(items.size());
    for (const auto& s : items) v.push_back(parse_rational(s));
    return RationalPoly(std::move(v));
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  std::vector<Rational> coeffs_;
};

}  // namespace commcyc
