#include "cbv/exact.hpp"

#include <cstdlib>
#include <sstream>

#include "cbv/error.hpp"

namespace cbv {

namespace {

void check_index(long n) {
  if (n > kMaxSequenceIndex || n < -kMaxSequenceIndex) {
    throw UsageError("sequence index " + std::to_string(n) + " exceeds bound " +
                     std::to_string(kMaxSequenceIndex));
  }
}

void check_nonnegative(long n, const char* what) {
  if (n < 0) throw UsageError(std::string(what) + ": index must be non-negative, got " + std::to_string(n));
  check_index(n);
}

int minus_one_pow(long k) { return (k % 2 == 0) ? 1 : -1; }

}  // namespace

BigRational make_rational(const BigInt& num, const BigInt& den) {
  if (sgn(den) == 0) throw DomainError("rational with zero denominator");
  BigRational q(num, den);
  q.canonicalize();
  return q;
}

BigRational make_rational(long num, long den) { return make_rational(BigInt(num), BigInt(den)); }

BigRational parse_rational(std::string_view text) {
  auto is_int = [](std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') return false;
    }
    return true;
  };
  auto to_int = [](std::string_view s) {
    if (!s.empty() && s[0] == '+') s.remove_prefix(1);
    return BigInt(std::string(s));
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    if (!is_int(text)) throw UsageError("not an exact rational: '" + std::string(text) + "'");
    return BigRational(to_int(text));
  }
  auto num = text.substr(0, slash);
  auto den = text.substr(slash + 1);
  if (!is_int(num) || !is_int(den) || den[0] == '-' || den[0] == '+') {
    throw UsageError("not an exact rational: '" + std::string(text) + "'");
  }
  return make_rational(to_int(num), to_int(den));
}

// ---- SurdQ5 -------------------------------------------------------------

SurdQ5::SurdQ5(BigRational a, BigRational b) : a_(std::move(a)), b_(std::move(b)) {
  a_.canonicalize();
  b_.canonicalize();
}

SurdQ5 SurdQ5::alpha() { return {make_rational(1, 2), make_rational(1, 2)}; }
SurdQ5 SurdQ5::beta() { return {make_rational(1, 2), make_rational(-1, 2)}; }

int SurdQ5::sign() const {
  int sa = sgn(a_);
  int sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // Opposite signs: compare a^2 with 5 b^2.
  int c = cmp(BigRational(a_ * a_), BigRational(5 * b_ * b_));
  if (c == 0) return 0;  // unreachable for rationals, sqrt5 is irrational
  return c > 0 ? sa : sb;
}

SurdQ5 SurdQ5::inverse() const {
  if (is_zero()) throw DomainError("division by the zero surd");
  BigRational n = norm();
  return {a_ / n, -b_ / n};
}

SurdQ5 SurdQ5::pow(long k) const {
  if (k < 0) return inverse().pow(-k);
  SurdQ5 result(1);
  SurdQ5 base = *this;
  while (k > 0) {
    if (k & 1) result *= base;
    k >>= 1;
    if (k > 0) base *= base;
  }
  return result;
}

SurdQ5& SurdQ5::operator+=(const SurdQ5& o) {
  a_ += o.a_;
  b_ += o.b_;
  return *this;
}

SurdQ5& SurdQ5::operator-=(const SurdQ5& o) {
  a_ -= o.a_;
  b_ -= o.b_;
  return *this;
}

SurdQ5& SurdQ5::operator*=(const SurdQ5& o) {
  BigRational a = a_ * o.a_ + 5 * b_ * o.b_;
  BigRational b = a_ * o.b_ + b_ * o.a_;
  a_ = std::move(a);
  b_ = std::move(b);
  return *this;
}

SurdQ5& SurdQ5::operator/=(const SurdQ5& o) { return *this *= o.inverse(); }

std::string SurdQ5::to_string() const {
  if (is_rational()) return a_.get_str();
  std::ostringstream os;
  if (sgn(a_) != 0) os << a_.get_str() << (sgn(b_) < 0 ? " - " : " + ");
  else if (sgn(b_) < 0) os << "-";
  BigRational mag = abs(b_);
  if (mag != 1) os << mag.get_str() << "*";
  os << "sqrt(5)";
  return os.str();
}

// ---- sequences ----------------------------------------------------------

BigInt fib(long n) {
  check_index(n);
  BigInt f;
  mpz_fib_ui(f.get_mpz_t(), static_cast<unsigned long>(std::labs(n)));
  // F_{-m} = (-1)^{m-1} F_m
  if (n < 0 && minus_one_pow(-n - 1) < 0) f = -f;
  return f;
}

BigInt lucas(long n) {
  check_index(n);
  BigInt l;
  mpz_lucnum_ui(l.get_mpz_t(), static_cast<unsigned long>(std::labs(n)));
  // L_{-m} = (-1)^m L_m
  if (n < 0 && minus_one_pow(-n) < 0) l = -l;
  return l;
}

BigRational harmonic(long n) {
  check_nonnegative(n, "harmonic");
  // Sum over a common denominator, reduce once.
  BigInt num = 0;
  BigInt den = 1;
  for (long k = 1; k <= n; ++k) {
    num = num * k + den;
    den *= k;
    if (k % 64 == 0) {
      BigInt g;
      mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
      num /= g;
      den /= g;
    }
  }
  return make_rational(num, den);
}

BigInt central_binomial(long n) {
  check_nonnegative(n, "central_binomial");
  BigInt b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(2 * n), static_cast<unsigned long>(n));
  return b;
}

BigInt catalan_number(long n) {
  BigInt b = central_binomial(n);
  BigInt c;
  mpz_divexact_ui(c.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(n + 1));
  return c;
}

BigInt double_factorial(long n) {
  check_nonnegative(n, "double_factorial");
  BigInt d;
  mpz_2fac_ui(d.get_mpz_t(), static_cast<unsigned long>(n));
  return d;
}

BigInt factorial(long n) {
  check_nonnegative(n, "factorial");
  BigInt f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return f;
}

SurdQ5 alpha_power(long n) {
  return {make_rational(lucas(n), 2), make_rational(fib(n), 2)};
}

SurdQ5 beta_power(long n) { return alpha_power(n).conjugate(); }

// ---- Binet identities ---------------------------------------------------

std::string_view to_string(BinetIdentity id) {
  switch (id) {
    case BinetIdentity::AlphaFib: return "alpha-fib";
    case BinetIdentity::AlphaLucas: return "alpha-lucas";
    case BinetIdentity::BetaLucas: return "beta-lucas";
    case BinetIdentity::FibSquares: return "fib-squares";
    case BinetIdentity::LucasProduct: return "lucas-product";
  }
  return "?";
}

BinetIdentity parse_binet_identity(std::string_view name) {
  for (auto id : kAllBinetIdentities) {
    if (to_string(id) == name) return id;
  }
  throw UsageError("unknown Binet identity '" + std::string(name) + "'");
}

bool check_binet_identity(BinetIdentity id, long m, long n) {
  switch (id) {
    case BinetIdentity::AlphaFib: {
      SurdQ5 lhs = alpha_power(2 * m);
      SurdQ5 rhs = alpha_power(m) * SurdQ5(0, BigRational(fib(m))) - SurdQ5(minus_one_pow(m + 1));
      return lhs == rhs;
    }
    case BinetIdentity::AlphaLucas: {
      SurdQ5 lhs = alpha_power(2 * m);
      SurdQ5 rhs = alpha_power(m) * SurdQ5(BigRational(lucas(m))) - SurdQ5(minus_one_pow(m));
      return lhs == rhs;
    }
    case BinetIdentity::BetaLucas: {
      SurdQ5 lhs = beta_power(2 * m);
      SurdQ5 rhs = beta_power(m) * SurdQ5(BigRational(lucas(m))) - SurdQ5(minus_one_pow(m));
      return lhs == rhs;
    }
    case BinetIdentity::FibSquares: {
      BigInt fm = fib(m);
      BigInt fn = fib(n);
      BigInt lhs = fn * fn + minus_one_pow(n + m - 1) * fm * fm;
      return lhs == fib(n - m) * fib(n + m);
    }
    case BinetIdentity::LucasProduct: {
      BigInt lhs = lucas(n + m) + minus_one_pow(m) * lucas(n - m);
      return lhs == lucas(n) * lucas(m);
    }
  }
  throw UsageError("unknown Binet identity");
}

// ---- SequenceCache ------------------------------------------------------

template <class T, class Grow>
T SequenceCache::lookup(std::vector<T>& table, long n, Grow grow) {
  std::lock_guard lock(mutex_);
  auto idx = static_cast<std::size_t>(n);
  if (idx > cap_) return grow(n, nullptr);
  while (table.size() <= idx) {
    long k = static_cast<long>(table.size());
    table.push_back(grow(k, &table));
  }
  return table[idx];
}

BigInt SequenceCache::fib(long n) {
  check_index(n);
  if (n < 0) return (minus_one_pow(-n - 1) < 0 ? -1 : 1) * fib(-n);
  return lookup(fib_, n, [](long k, std::vector<BigInt>* t) -> BigInt {
    if (t == nullptr || k < 2) return cbv::fib(k);
    return (*t)[k - 1] + (*t)[k - 2];
  });
}

BigInt SequenceCache::lucas(long n) {
  check_index(n);
  if (n < 0) return minus_one_pow(-n) * lucas(-n);
  return lookup(lucas_, n, [](long k, std::vector<BigInt>* t) -> BigInt {
    if (t == nullptr || k < 2) return cbv::lucas(k);
    return (*t)[k - 1] + (*t)[k - 2];
  });
}

BigRational SequenceCache::harmonic(long n) {
  check_nonnegative(n, "harmonic");
  return lookup(harmonic_, n, [](long k, std::vector<BigRational>* t) -> BigRational {
    if (t == nullptr || k == 0) return cbv::harmonic(k);
    BigRational h = (*t)[k - 1] + make_rational(1, k);
    return h;
  });
}

BigInt SequenceCache::central_binomial(long n) {
  check_nonnegative(n, "central_binomial");
  return lookup(binom_, n, [](long k, std::vector<BigInt>* t) -> BigInt {
    if (t == nullptr || k == 0) return cbv::central_binomial(k);
    // b_k = b_{k-1} * 2(2k-1) / k, exact
    BigInt b = (*t)[k - 1] * (2 * (2 * k - 1));
    mpz_divexact_ui(b.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(k));
    return b;
  });
}

BigInt SequenceCache::catalan_number(long n) {
  BigInt b = central_binomial(n);
  mpz_divexact_ui(b.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(n + 1));
  return b;
}

BigInt SequenceCache::double_factorial(long n) {
  check_nonnegative(n, "double_factorial");
  return lookup(dfact_, n, [](long k, std::vector<BigInt>* t) -> BigInt {
    if (t == nullptr || k < 2) return cbv::double_factorial(k);
    return (*t)[k - 2] * k;
  });
}

}  // namespace cbv
