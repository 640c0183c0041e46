#include <map>
#include <mutex>
#include <utility>

#include "cbv/ball.hpp"
#include "cbv/error.hpp"

namespace cbv {

namespace {

template <class F>
Ball correctly_rounded(Precision prec, F f) {
  Real lo(prec), hi(prec);
  f(lo.get(), MPFR_RNDD);
  f(hi.get(), MPFR_RNDU);
  return Ball::from_interval(lo.get(), hi.get(), prec);
}

// True when every point of x lies below 2^-(prec + 8) in magnitude.
bool negligible(const Ball& x, Precision prec) {
  Real up(kRadiusPrecision + 2);
  mpfr_abs(up.get(), x.mid(), MPFR_RNDU);
  mpfr_add(up.get(), up.get(), x.rad(), MPFR_RNDU);
  return mpfr_cmp_ui_2exp(up.get(), 1, -(prec + 8)) < 0;
}

void add_tail(Ball& sum, const Ball& bound) {
  Real up(kRadiusPrecision + 2);
  mpfr_abs(up.get(), bound.mid(), MPFR_RNDU);
  mpfr_add(up.get(), up.get(), bound.rad(), MPFR_RNDU);
  sum.add_error(up.get());
}

// G = (pi/8) ln(2 + sqrt3) + (3/8) sum_{n>=0} 1 / ((2n+1)^2 C(2n,n)).
// Consecutive terms shrink by at least 1/4, so the tail after u_N is <= u_N/3.
Ball catalan_g(Precision prec) {
  Precision wp = prec + 32;
  Ball inv_binom(1, wp);  // 1 / C(2n,n)
  Ball sum(0, wp);
  Ball u(wp);
  for (long n = 0;; ++n) {
    u = inv_binom;
    u.div_si(2 * n + 1).div_si(2 * n + 1);
    sum += u;
    if (n > 0 && negligible(u, prec)) break;
    inv_binom.mul_si(n + 1).div_si(2 * (2 * n + 1));
  }
  u.div_si(3);
  add_tail(sum, u);
  Ball pi = constant(ConstantName::Pi, wp);
  Ball g = pi * log(Ball(2, wp) + sqrt(Ball(3, wp)));
  g.div_si(8);
  sum.mul_si(3).div_si(8);
  g += sum;
  return g.rounded_to(prec);
}

// zeta(3) = (5/2) sum_{k>=1} (-1)^{k+1} / (k^3 C(2k,k)); alternating, decreasing.
Ball zeta3(Precision prec) {
  Precision wp = prec + 32;
  Ball inv_binom(1, wp);
  inv_binom.div_si(2);  // 1 / C(2,1)
  Ball sum(0, wp);
  Ball v(wp);
  for (long k = 1;; ++k) {
    v = inv_binom;
    v.div_si(k).div_si(k).div_si(k);
    if (k > 1 && negligible(v, prec)) break;  // v is the first omitted term
    if (k % 2 == 1) sum += v;
    else sum -= v;
    inv_binom.mul_si(k + 1).div_si(2 * (2 * k + 1));
  }
  add_tail(sum, v);
  sum.mul_si(5).div_si(2);
  return sum.rounded_to(prec);
}

// zeta(2) = 3 sum_{n>=1} 1 / (n^2 C(2n,n)); ratio <= 1/4, tail <= u_N/3.
Ball zeta2(Precision prec) {
  Precision wp = prec + 32;
  Ball inv_binom(1, wp);
  inv_binom.div_si(2);
  Ball sum(0, wp);
  Ball u(wp);
  for (long n = 1;; ++n) {
    u = inv_binom;
    u.div_si(n).div_si(n);
    sum += u;
    if (n > 1 && negligible(u, prec)) break;
    inv_binom.mul_si(n + 1).div_si(2 * (2 * n + 1));
  }
  u.div_si(3);
  add_tail(sum, u);
  sum.mul_si(3);
  return sum.rounded_to(prec);
}

Ball generate(ConstantName name, Precision prec) {
  switch (name) {
    case ConstantName::Pi:
      return correctly_rounded(prec, [](mpfr_ptr r, mpfr_rnd_t rnd) { mpfr_const_pi(r, rnd); });
    case ConstantName::Ln2:
      return correctly_rounded(prec, [](mpfr_ptr r, mpfr_rnd_t rnd) { mpfr_const_log2(r, rnd); });
    case ConstantName::Sqrt5:
      return correctly_rounded(prec, [](mpfr_ptr r, mpfr_rnd_t rnd) { mpfr_sqrt_ui(r, 5, rnd); });
    case ConstantName::Alpha: {
      Ball a = Ball(1, prec + 8) + constant(ConstantName::Sqrt5, prec + 8);
      a.div_si(2);
      return a.rounded_to(prec);
    }
    case ConstantName::CatalanG: return catalan_g(prec);
    case ConstantName::Zeta3: return zeta3(prec);
    case ConstantName::Zeta2: return zeta2(prec);
  }
  throw UsageError("unknown constant");
}

}  // namespace

std::string_view to_string(ConstantName name) {
  switch (name) {
    case ConstantName::Pi: return "PI";
    case ConstantName::Ln2: return "LN2";
    case ConstantName::CatalanG: return "CATALAN_G";
    case ConstantName::Zeta3: return "ZETA3";
    case ConstantName::Sqrt5: return "SQRT5";
    case ConstantName::Alpha: return "ALPHA";
    case ConstantName::Zeta2: return "ZETA2";
  }
  return "?";
}

ConstantName parse_constant_name(std::string_view text) {
  for (auto c : kAllConstants) {
    if (to_string(c) == text) return c;
  }
  throw UsageError("unknown constant '" + std::string(text) + "'");
}

Ball constant(ConstantName name, Precision prec) {
  if (prec < 2) prec = 2;
  static std::mutex mutex;
  static std::map<std::pair<ConstantName, Precision>, Ball> memo;
  {
    std::lock_guard lock(mutex);
    auto it = memo.find({name, prec});
    if (it != memo.end()) return it->second;
  }
  // Generated outside the lock: generators may recurse into constant().
  Ball value = generate(name, prec);
  std::lock_guard lock(mutex);
  return memo.emplace(std::make_pair(name, prec), std::move(value)).first->second;
}

Ball from_surd(const SurdQ5& s, Precision prec) {
  Ball r(s.rational_part(), prec);
  if (!s.is_rational()) {
    r += Ball(s.surd_part(), prec) * constant(ConstantName::Sqrt5, prec);
  }
  return r;
}

}  // namespace cbv
