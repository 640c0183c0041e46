#pragma once

// Exact integer, rational and Q(sqrt 5) arithmetic plus the combinatorial
// sequences the series terms are built from.

#include <gmpxx.h>

#include <cstddef>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

namespace cbv {

using BigInt = mpz_class;
using BigRational = mpq_class;

/// Largest |n| accepted by the sequence functions.
inline constexpr long kMaxSequenceIndex = 1'000'000;

/// Canonical num/den. Throws DomainError on a zero denominator.
BigRational make_rational(const BigInt& num, const BigInt& den);
BigRational make_rational(long num, long den = 1);

/// Parses "p", "p/q" or "-p/q". Floating-point strings are rejected.
BigRational parse_rational(std::string_view text);

/// a + b*sqrt(5) with rational a, b.
class SurdQ5 {
 public:
  SurdQ5() = default;
  SurdQ5(BigRational a, BigRational b = 0);  // NOLINT(google-explicit-constructor)
  SurdQ5(long a) : SurdQ5(BigRational(a)) {}  // NOLINT(google-explicit-constructor)

  static SurdQ5 sqrt5() { return {0, 1}; }
  static SurdQ5 alpha();
  static SurdQ5 beta();

  const BigRational& rational_part() const { return a_; }
  const BigRational& surd_part() const { return b_; }

  SurdQ5 conjugate() const { return {a_, -b_}; }
  /// (a + b sqrt5)(a - b sqrt5) = a^2 - 5 b^2.
  BigRational norm() const { return a_ * a_ - 5 * b_ * b_; }

  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
  bool is_rational() const { return sgn(b_) == 0; }
  /// Exact sign of the real number a + b sqrt5.
  int sign() const;

  SurdQ5 inverse() const;
  SurdQ5 pow(long k) const;

  SurdQ5& operator+=(const SurdQ5& o);
  SurdQ5& operator-=(const SurdQ5& o);
  SurdQ5& operator*=(const SurdQ5& o);
  SurdQ5& operator/=(const SurdQ5& o);

  friend SurdQ5 operator+(SurdQ5 x, const SurdQ5& y) { return x += y; }
  friend SurdQ5 operator-(SurdQ5 x, const SurdQ5& y) { return x -= y; }
  friend SurdQ5 operator*(SurdQ5 x, const SurdQ5& y) { return x *= y; }
  friend SurdQ5 operator/(SurdQ5 x, const SurdQ5& y) { return x /= y; }
  friend SurdQ5 operator-(const SurdQ5& x) { return {-x.a_, -x.b_}; }
  friend bool operator==(const SurdQ5& x, const SurdQ5& y) { return x.a_ == y.a_ && x.b_ == y.b_; }

  std::string to_string() const;

 private:
  BigRational a_{0};
  BigRational b_{0};
};

BigInt fib(long n);
BigInt lucas(long n);
BigRational harmonic(long n);
BigInt central_binomial(long n);
BigInt catalan_number(long n);
BigInt double_factorial(long n);
BigInt factorial(long n);

/// alpha^n = (L_n + F_n sqrt5) / 2, any sign of n.
SurdQ5 alpha_power(long n);
/// beta^n = (L_n - F_n sqrt5) / 2.
SurdQ5 beta_power(long n);

enum class BinetIdentity {
  AlphaFib,       // alpha^{2m} = alpha^m F_m sqrt5 - (-1)^{m+1}
  AlphaLucas,     // alpha^{2m} = alpha^m L_m - (-1)^m
  BetaLucas,      // beta^{2m}  = beta^m L_m - (-1)^m
  FibSquares,     // F_n^2 + (-1)^{n+m-1} F_m^2 = F_{n-m} F_{n+m}
  LucasProduct,   // L_{n+m} + (-1)^m L_{n-m} = L_n L_m
};

inline constexpr BinetIdentity kAllBinetIdentities[] = {
    BinetIdentity::AlphaFib, BinetIdentity::AlphaLucas, BinetIdentity::BetaLucas,
    BinetIdentity::FibSquares, BinetIdentity::LucasProduct};

std::string_view to_string(BinetIdentity id);
/// Accepts the names printed by to_string; throws UsageError otherwise.
BinetIdentity parse_binet_identity(std::string_view name);

/// True iff both sides agree exactly. Identities that only involve m ignore n.
bool check_binet_identity(BinetIdentity id, long m, long n = 0);

/// Memo tables for the integer/rational sequences. Thread-safe; a cached value
/// is always equal to a fresh computation.
class SequenceCache {
 public:
  /// cap = largest index stored; larger requests are computed but not kept.
  explicit SequenceCache(std::size_t cap = static_cast<std::size_t>(-1)) : cap_(cap) {}

  BigInt fib(long n);
  BigInt lucas(long n);
  BigRational harmonic(long n);
  BigInt central_binomial(long n);
  BigInt catalan_number(long n);
  BigInt double_factorial(long n);

  std::size_t cap() const { return cap_; }

 private:
  template <class T, class Grow>
  T lookup(std::vector<T>& table, long n, Grow grow);

  std::size_t cap_;
  std::mutex mutex_;
  std::vector<BigInt> fib_, lucas_, binom_, dfact_;
  std::vector<BigRational> harmonic_;
};

}  // namespace cbv
