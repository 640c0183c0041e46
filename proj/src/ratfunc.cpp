#include "cbv/ratfunc.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

#include "cbv/error.hpp"

namespace cbv {

Poly::Poly(std::vector<BigRational> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly Poly::constant(const BigRational& c) { return Poly(std::vector<BigRational>{c}); }

Poly Poly::linear(long a, long b) { return Poly(std::vector<BigRational>{BigRational(b), BigRational(a)}); }

void Poly::trim() {
  while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

BigRational Poly::eval(const BigRational& n) const {
  BigRational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * n + *it;
  return acc;
}

Poly Poly::shifted() const {
  // Horner in the shifted variable: p(n+1) = (...(c_d (n+1) + c_{d-1})(n+1) ...)
  Poly acc;
  const Poly step = linear(1, 1);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc *= step;
    acc += constant(*it);
  }
  return acc;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), BigRational(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), BigRational(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

Poly& Poly::operator*=(const Poly& o) {
  if (c_.empty() || o.c_.empty()) {
    c_.clear();
    return *this;
  }
  std::vector<BigRational> r(c_.size() + o.c_.size() - 1, BigRational(0));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  }
  c_ = std::move(r);
  trim();
  return *this;
}

Poly& Poly::operator*=(const BigRational& k) {
  for (auto& c : c_) c *= k;
  trim();
  return *this;
}

// ---- RatFunc ------------------------------------------------------------

RatFunc RatFunc::linear_power(long a, long b, int e) {
  if (a == 0) {
    if (b == 0 && e < 0) throw DomainError("zero linear factor in a denominator");
    BigRational v = 1;
    BigRational base(b);
    for (int i = 0; i < std::abs(e); ++i) v *= base;
    return constant(e >= 0 ? v : BigRational(1 / v));
  }
  if (e >= 0) {
    Poly p = Poly::constant(1);
    for (int i = 0; i < e; ++i) p *= Poly::linear(a, b);
    return RatFunc(p);
  }
  // (a n + b) = k (a' n + b') with a' > 0 and gcd(a', b') = 1
  long g = std::gcd(std::labs(a), std::labs(b));
  long k = a < 0 ? -g : g;
  RatFunc r(Poly::constant(1));
  BigRational scale = 1;
  for (int i = 0; i < -e; ++i) scale /= k;
  r.num_ *= scale;
  r.den_[{a / k, b / k}] = -e;
  return r;
}

int RatFunc::denominator_degree() const {
  int d = 0;
  for (const auto& [f, e] : den_) d += e;
  return d;
}

int RatFunc::order() const {
  if (num_.is_zero()) return 1 << 20;
  return denominator_degree() - num_.degree();
}

BigRational RatFunc::leading() const {
  BigRational l = num_.leading();
  for (const auto& [f, e] : den_) {
    for (int i = 0; i < e; ++i) l /= f.first;
  }
  return l;
}

BigRational RatFunc::eval(long n) const {
  BigRational v = num_.eval(BigRational(n));
  for (const auto& [f, e] : den_) {
    long d = f.first * n + f.second;
    if (d == 0) throw DomainError("rational function evaluated at a pole");
    for (int i = 0; i < e; ++i) v /= d;
  }
  return v;
}

RatFunc RatFunc::shifted() const {
  RatFunc r(num_.shifted());
  for (const auto& [f, e] : den_) r.den_[{f.first, f.first + f.second}] = e;
  return r;
}

void RatFunc::bring_to(const std::map<Factor, int>& target) {
  for (const auto& [f, e] : target) {
    int have = 0;
    auto it = den_.find(f);
    if (it != den_.end()) have = it->second;
    for (int i = have; i < e; ++i) num_ *= Poly::linear(f.first, f.second);
  }
  den_ = target;
}

namespace {

std::map<RatFunc::Factor, int> lcm(const std::map<RatFunc::Factor, int>& x,
                                   const std::map<RatFunc::Factor, int>& y) {
  auto r = x;
  for (const auto& [f, e] : y) r[f] = std::max(r[f], e);
  return r;
}

}  // namespace

RatFunc& RatFunc::operator+=(const RatFunc& o) {
  auto target = lcm(den_, o.den_);
  RatFunc other = o;
  bring_to(target);
  other.bring_to(target);
  num_ += other.num_;
  return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) {
  auto target = lcm(den_, o.den_);
  RatFunc other = o;
  bring_to(target);
  other.bring_to(target);
  num_ -= other.num_;
  return *this;
}

RatFunc& RatFunc::operator*=(const RatFunc& o) {
  num_ *= o.num_;
  for (const auto& [f, e] : o.den_) den_[f] += e;
  return *this;
}

RatFunc& RatFunc::operator*=(const BigRational& k) {
  num_ *= k;
  return *this;
}

BigRational RatFunc::decay_constant(long n_min) const {
  if (n_min < 1) throw UsageError("decay_constant needs n_min >= 1");
  if (num_.is_zero()) return 0;
  const int dp = num_.degree();
  const auto& c = num_.coeffs();
  BigRational nm(n_min);
  BigRational top = 0;
  BigRational pw = 1;  // n_min^(i - dp), built from the top down
  for (int i = dp; i >= 0; --i) {
    top += abs(c[static_cast<std::size_t>(i)]) * pw;
    pw /= nm;
  }
  BigRational bottom = 1;
  for (const auto& [f, e] : den_) {
    BigRational lo = BigRational(f.first) + BigRational(std::min(f.second, 0L)) / nm;
    if (sgn(lo) <= 0) throw DomainError("denominator factor not positive on the tail range");
    for (int i = 0; i < e; ++i) bottom *= lo;
  }
  return top / bottom;
}

}  // namespace cbv
