#pragma once

// Exact rational functions of one integer variable n whose denominators
// factor into linear terms (a n + b). Used to build telescoping tail bounds.

#include <map>
#include <utility>
#include <vector>

#include "cbv/exact.hpp"

namespace cbv {

/// Polynomial with rational coefficients, ascending powers; no trailing zeros.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<BigRational> coeffs);
  static Poly constant(const BigRational& c);
  static Poly linear(long a, long b);  // a n + b

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  const std::vector<BigRational>& coeffs() const { return c_; }
  BigRational leading() const { return c_.empty() ? BigRational(0) : c_.back(); }

  BigRational eval(const BigRational& n) const;
  /// p(n + 1)
  Poly shifted() const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const BigRational& k);
  friend Poly operator+(Poly x, const Poly& y) { return x += y; }
  friend Poly operator-(Poly x, const Poly& y) { return x -= y; }
  friend Poly operator*(Poly x, const Poly& y) { return x *= y; }
  friend Poly operator*(Poly x, const BigRational& k) { return x *= k; }
  friend bool operator==(const Poly& x, const Poly& y) { return x.c_ == y.c_; }

 private:
  void trim();
  std::vector<BigRational> c_;
};

/// num(n) / prod (a n + b)^e, with gcd(a, b) = 1 and a > 0 for every factor.
class RatFunc {
 public:
  using Factor = std::pair<long, long>;  // (a, b)

  RatFunc() = default;
  explicit RatFunc(Poly num) : num_(std::move(num)) {}
  static RatFunc constant(const BigRational& c) { return RatFunc(Poly::constant(c)); }
  /// (a n + b)^e for any integer e.
  static RatFunc linear_power(long a, long b, int e);
  /// n^-k
  static RatFunc inverse_power(int k) { return linear_power(1, 0, -k); }

  const Poly& numerator() const { return num_; }
  const std::map<Factor, int>& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  int denominator_degree() const;
  /// deg den - deg num: the rate n^-order at which the function decays.
  int order() const;
  /// Coefficient c of the leading behaviour c n^-order.
  BigRational leading() const;

  BigRational eval(long n) const;
  RatFunc shifted() const;

  RatFunc& operator+=(const RatFunc& o);
  RatFunc& operator-=(const RatFunc& o);
  RatFunc& operator*=(const RatFunc& o);
  RatFunc& operator*=(const BigRational& k);
  friend RatFunc operator+(RatFunc x, const RatFunc& y) { return x += y; }
  friend RatFunc operator-(RatFunc x, const RatFunc& y) { return x -= y; }
  friend RatFunc operator*(RatFunc x, const RatFunc& y) { return x *= y; }
  friend RatFunc operator*(RatFunc x, const BigRational& k) { return x *= k; }

  /// K with |f(n)| <= K n^-order for all n >= n_min (n_min >= 1, every
  /// denominator factor positive on [n_min, inf)).
  BigRational decay_constant(long n_min) const;

 private:
  void bring_to(const std::map<Factor, int>& target);
  Poly num_;
  std::map<Factor, int> den_;
};

}  // namespace cbv
