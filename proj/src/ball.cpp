#include "cbv/ball.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <memory>

#include "cbv/error.hpp"

namespace cbv {

namespace {

// Per-thread scratch for radius arithmetic; avoids allocations in hot loops.
struct Scratch {
  Real a{kRadiusPrecision};
  Real b{kRadiusPrecision};
  Real c{kRadiusPrecision};
  Real wide{64};
};

Scratch& scratch() {
  thread_local Scratch s;
  return s;
}

std::string take_mpfr_string(char* raw) {
  std::string s(raw);
  mpfr_free_str(raw);
  return s;
}

}  // namespace

Precision precision_for_digits(int digits) {
  if (digits < 1) digits = 1;
  return static_cast<Precision>(std::ceil(digits * std::log2(10.0))) + 64;
}

// ---- construction -------------------------------------------------------

Ball::Ball(Precision prec) : mid_(prec) {}

Ball::Ball(long value, Precision prec) : mid_(prec) {
  round_error(mpfr_set_si(mid_.get(), value, MPFR_RNDN));
}

Ball::Ball(const BigInt& value, Precision prec) : mid_(prec) {
  round_error(mpfr_set_z(mid_.get(), value.get_mpz_t(), MPFR_RNDN));
}

Ball::Ball(const BigRational& value, Precision prec) : mid_(prec) {
  round_error(mpfr_set_q(mid_.get(), value.get_mpq_t(), MPFR_RNDN));
}

Ball Ball::from_decimal(const std::string& mid, const std::string& rad, Precision prec) {
  Ball b(prec);
  if (mpfr_set_str(b.mid_.get(), mid.c_str(), 10, MPFR_RNDN) != 0) {
    // mpfr_set_str returns -1 on a malformed string
    if (mpfr_nan_p(b.mid_.get()) || !mpfr_number_p(b.mid_.get())) {
      throw UsageError("malformed decimal '" + mid + "'");
    }
  }
  // Bound the conversion error of the midpoint by one ulp.
  b.round_error(1);
  Real r(kRadiusPrecision);
  mpfr_set_str(r.get(), rad.c_str(), 10, MPFR_RNDU);
  mpfr_abs(r.get(), r.get(), MPFR_RNDU);
  b.add_error(r.get());
  return b;
}

Ball Ball::from_interval(mpfr_srcptr lo, mpfr_srcptr hi, Precision prec) {
  Ball b(prec);
  mpfr_add(b.mid_.get(), lo, hi, MPFR_RNDN);
  mpfr_div_2ui(b.mid_.get(), b.mid_.get(), 1, MPFR_RNDN);
  auto& s = scratch();
  mpfr_sub(s.a.get(), hi, b.mid_.get(), MPFR_RNDU);
  mpfr_sub(s.b.get(), b.mid_.get(), lo, MPFR_RNDU);
  mpfr_max(b.rad_.get(), s.a.get(), s.b.get(), MPFR_RNDU);
  if (mpfr_sgn(b.rad_.get()) < 0) mpfr_set_zero(b.rad_.get(), 1);
  return b;
}

Ball Ball::whole(Precision prec) {
  Ball b(prec);
  mpfr_set_inf(b.rad_.get(), 1);
  return b;
}

// ---- queries ------------------------------------------------------------

double Ball::magnitude_upper() const {
  auto& s = scratch();
  mpfr_abs(s.a.get(), mid_.get(), MPFR_RNDU);
  mpfr_add(s.a.get(), s.a.get(), rad_.get(), MPFR_RNDU);
  return mpfr_get_d(s.a.get(), MPFR_RNDU);
}

bool Ball::contains_zero() const { return mpfr_cmpabs(mid_.get(), rad_.get()) <= 0; }

bool Ball::is_positive() const { return mpfr_sgn(mid_.get()) > 0 && !contains_zero(); }

bool Ball::is_negative() const { return mpfr_sgn(mid_.get()) < 0 && !contains_zero(); }

void Ball::lower(mpfr_ptr out) const { mpfr_sub(out, mid_.get(), rad_.get(), MPFR_RNDD); }

void Ball::upper(mpfr_ptr out) const { mpfr_add(out, mid_.get(), rad_.get(), MPFR_RNDU); }

// ---- radius bookkeeping -------------------------------------------------

void Ball::round_error(int ternary) {
  if (ternary == 0 || !mpfr_regular_p(mid_.get())) return;
  auto& s = scratch();
  // one ulp of the midpoint: 2^(EXP - PREC)
  mpfr_set_ui_2exp(s.c.get(), 1, mpfr_get_exp(mid_.get()) - mpfr_get_prec(mid_.get()), MPFR_RNDU);
  mpfr_add(rad_.get(), rad_.get(), s.c.get(), MPFR_RNDU);
}

void Ball::add_error(mpfr_srcptr r) {
  if (mpfr_sgn(r) < 0) {
    auto& s = scratch();
    mpfr_abs(s.c.get(), r, MPFR_RNDU);
    mpfr_add(rad_.get(), rad_.get(), s.c.get(), MPFR_RNDU);
    return;
  }
  mpfr_add(rad_.get(), rad_.get(), r, MPFR_RNDU);
}

void Ball::add_error(double r) {
  mpfr_add_d(rad_.get(), rad_.get(), std::fabs(r), MPFR_RNDU);
}

void Ball::ensure_precision(Precision prec) {
  if (prec > mid_.precision()) mpfr_prec_round(mid_.get(), prec, MPFR_RNDN);
}

Ball Ball::rounded_to(Precision prec) const {
  Ball b(prec);
  mpfr_set(b.rad_.get(), rad_.get(), MPFR_RNDU);
  b.round_error(mpfr_set(b.mid_.get(), mid_.get(), MPFR_RNDN));
  return b;
}

// ---- arithmetic ---------------------------------------------------------

Ball& Ball::operator+=(const Ball& o) {
  ensure_precision(o.precision());
  int t = mpfr_add(mid_.get(), mid_.get(), o.mid_.get(), MPFR_RNDN);
  mpfr_add(rad_.get(), rad_.get(), o.rad_.get(), MPFR_RNDU);
  round_error(t);
  return *this;
}

Ball& Ball::operator-=(const Ball& o) {
  ensure_precision(o.precision());
  int t = mpfr_sub(mid_.get(), mid_.get(), o.mid_.get(), MPFR_RNDN);
  mpfr_add(rad_.get(), rad_.get(), o.rad_.get(), MPFR_RNDU);
  round_error(t);
  return *this;
}

Ball& Ball::operator*=(const Ball& o) {
  ensure_precision(o.precision());
  auto& s = scratch();
  // |m1| r2 + |m2| r1 + r1 r2
  mpfr_abs(s.a.get(), mid_.get(), MPFR_RNDU);
  mpfr_mul(s.a.get(), s.a.get(), o.rad_.get(), MPFR_RNDU);
  mpfr_abs(s.b.get(), o.mid_.get(), MPFR_RNDU);
  mpfr_mul(s.b.get(), s.b.get(), rad_.get(), MPFR_RNDU);
  mpfr_add(s.a.get(), s.a.get(), s.b.get(), MPFR_RNDU);
  mpfr_mul(s.b.get(), rad_.get(), o.rad_.get(), MPFR_RNDU);
  mpfr_add(s.a.get(), s.a.get(), s.b.get(), MPFR_RNDU);
  int t = mpfr_mul(mid_.get(), mid_.get(), o.mid_.get(), MPFR_RNDN);
  mpfr_set(rad_.get(), s.a.get(), MPFR_RNDU);
  round_error(t);
  return *this;
}

Ball& Ball::operator/=(const Ball& o) {
  if (o.contains_zero()) throw DomainError("division by a ball containing zero");
  ensure_precision(o.precision());
  auto& s = scratch();
  // |x/y - m1/m2| <= (|m1| r2 + |m2| r1) / (|m2| (|m2| - r2))
  if (!mpfr_zero_p(rad_.get()) || !mpfr_zero_p(o.rad_.get())) {
    mpfr_abs(s.a.get(), mid_.get(), MPFR_RNDU);
    mpfr_mul(s.a.get(), s.a.get(), o.rad_.get(), MPFR_RNDU);
    mpfr_abs(s.b.get(), o.mid_.get(), MPFR_RNDU);
    mpfr_mul(s.b.get(), s.b.get(), rad_.get(), MPFR_RNDU);
    mpfr_add(s.a.get(), s.a.get(), s.b.get(), MPFR_RNDU);
    mpfr_abs(s.wide.get(), o.mid_.get(), MPFR_RNDD);
    mpfr_sub(s.wide.get(), s.wide.get(), o.rad_.get(), MPFR_RNDD);
    if (mpfr_sgn(s.wide.get()) <= 0) throw DomainError("division by a ball containing zero");
    mpfr_abs(s.b.get(), o.mid_.get(), MPFR_RNDD);
    mpfr_mul(s.b.get(), s.b.get(), s.wide.get(), MPFR_RNDD);
    mpfr_div(s.a.get(), s.a.get(), s.b.get(), MPFR_RNDU);
  } else {
    mpfr_set_zero(s.a.get(), 1);
  }
  int t = mpfr_div(mid_.get(), mid_.get(), o.mid_.get(), MPFR_RNDN);
  mpfr_set(rad_.get(), s.a.get(), MPFR_RNDU);
  round_error(t);
  return *this;
}

Ball& Ball::mul_si(long k) {
  int t = mpfr_mul_si(mid_.get(), mid_.get(), k, MPFR_RNDN);
  mpfr_mul_ui(rad_.get(), rad_.get(), static_cast<unsigned long>(std::labs(k)), MPFR_RNDU);
  round_error(t);
  return *this;
}

Ball& Ball::div_si(long k) {
  if (k == 0) throw DomainError("division by zero");
  int t = mpfr_div_si(mid_.get(), mid_.get(), k, MPFR_RNDN);
  mpfr_div_ui(rad_.get(), rad_.get(), static_cast<unsigned long>(std::labs(k)), MPFR_RNDU);
  round_error(t);
  return *this;
}

Ball& Ball::add_ratio(long p, long q) {
  if (q == 0) throw DomainError("division by zero");
  thread_local Real t(kDefaultPrecision);
  const Precision want = std::max<Precision>(precision(), 64);
  if (t.precision() != want) mpfr_set_prec(t.get(), want);
  mpfr_set_si(t.get(), p, MPFR_RNDN);
  if (mpfr_div_si(t.get(), t.get(), q, MPFR_RNDN) != 0 && mpfr_regular_p(t.get())) {
    auto& s = scratch();
    mpfr_set_ui_2exp(s.c.get(), 1, mpfr_get_exp(t.get()) - mpfr_get_prec(t.get()), MPFR_RNDU);
    mpfr_add(rad_.get(), rad_.get(), s.c.get(), MPFR_RNDU);
  }
  round_error(mpfr_add(mid_.get(), mid_.get(), t.get(), MPFR_RNDN));
  return *this;
}

Ball& Ball::negate() {
  mpfr_neg(mid_.get(), mid_.get(), MPFR_RNDN);
  return *this;
}

// ---- formatting ---------------------------------------------------------

std::string Ball::to_string(int max_digits) const {
  if (!is_finite()) return "[±inf]";
  const int cap = static_cast<int>(std::floor(static_cast<double>(precision()) * std::log10(2.0)));
  int digits = cap;
  if (!mpfr_zero_p(rad_.get())) {
    if (mpfr_zero_p(mid_.get()) || mpfr_cmpabs(rad_.get(), mid_.get()) >= 0) {
      digits = 1;
    } else {
      Real ratio(64);
      mpfr_abs(ratio.get(), mid_.get(), MPFR_RNDD);
      mpfr_div(ratio.get(), ratio.get(), rad_.get(), MPFR_RNDD);
      mpfr_log10(ratio.get(), ratio.get(), MPFR_RNDD);
      digits = std::max(1, static_cast<int>(std::floor(mpfr_get_d(ratio.get(), MPFR_RNDD))));
    }
  }
  digits = std::min(digits, cap);
  if (max_digits > 0) digits = std::min(digits, max_digits);
  char* raw = nullptr;
  mpfr_asprintf(&raw, "%.*Rg", digits, mid_.get());
  std::string shown = take_mpfr_string(raw);

  // The printed radius also covers the decimal rounding of the midpoint.
  Real printed(precision() + 16);
  mpfr_set_str(printed.get(), shown.c_str(), 10, MPFR_RNDN);
  Real total(kRadiusPrecision);
  Real diff(precision() + 16);
  mpfr_sub(diff.get(), printed.get(), mid_.get(), MPFR_RNDA);
  mpfr_abs(total.get(), diff.get(), MPFR_RNDU);
  // Conversion of the printed string itself may be inexact: one more ulp.
  if (mpfr_regular_p(printed.get())) {
    Real ulp(kRadiusPrecision);
    mpfr_set_ui_2exp(ulp.get(), 1, mpfr_get_exp(printed.get()) - mpfr_get_prec(printed.get()), MPFR_RNDU);
    mpfr_add(total.get(), total.get(), ulp.get(), MPFR_RNDU);
  }
  mpfr_add(total.get(), total.get(), rad_.get(), MPFR_RNDU);
  raw = nullptr;
  mpfr_asprintf(&raw, "%.2RUe", total.get());
  return shown + " ± " + take_mpfr_string(raw);
}

// ---- elementary functions -----------------------------------------------

namespace {

// Monotone increasing f: image of [lo, hi] is [f(lo)_down, f(hi)_up].
template <class F>
Ball monotone_image(const Ball& x, F f, mpfr_ptr lo, mpfr_ptr hi) {
  Precision p = x.precision();
  Real flo(p), fhi(p);
  f(flo.get(), lo, MPFR_RNDD);
  f(fhi.get(), hi, MPFR_RNDU);
  return Ball::from_interval(flo.get(), fhi.get(), p);
}

}  // namespace

Ball abs(const Ball& x) {
  if (!x.contains_zero()) return mpfr_sgn(x.mid()) < 0 ? -x : x;
  Real lo(x.precision()), hi(x.precision());
  mpfr_set_zero(lo.get(), 1);
  Real m(kRadiusPrecision);
  mpfr_abs(m.get(), x.mid(), MPFR_RNDU);
  mpfr_add(hi.get(), m.get(), x.rad(), MPFR_RNDU);
  return Ball::from_interval(lo.get(), hi.get(), x.precision());
}

Ball sqrt(const Ball& x) {
  if (!x.is_finite()) throw DomainError("sqrt: argument is not finite");
  Real lo(x.precision()), hi(x.precision());
  x.lower(lo.get());
  x.upper(hi.get());
  if (mpfr_sgn(hi.get()) < 0) throw DomainError("sqrt: argument is negative");
  if (mpfr_sgn(lo.get()) < 0) mpfr_set_zero(lo.get(), 1);
  return monotone_image(x, mpfr_sqrt, lo.get(), hi.get());
}

Ball log(const Ball& x) {
  if (!x.is_finite()) throw DomainError("ln: argument is not finite");
  Real lo(x.precision()), hi(x.precision());
  x.lower(lo.get());
  x.upper(hi.get());
  if (mpfr_sgn(lo.get()) <= 0) throw DomainError("ln: argument interval is not strictly positive");
  return monotone_image(x, mpfr_log, lo.get(), hi.get());
}

Ball asin(const Ball& x) {
  if (!x.is_finite()) throw DomainError("arcsin: argument is not finite");
  Real lo(x.precision()), hi(x.precision());
  x.lower(lo.get());
  x.upper(hi.get());
  if (mpfr_cmp_si(lo.get(), -1) < 0 || mpfr_cmp_si(hi.get(), 1) > 0) {
    throw DomainError("arcsin: argument interval leaves [-1, 1]");
  }
  return monotone_image(x, mpfr_asin, lo.get(), hi.get());
}

Ball pow_int(const Ball& x, long k) {
  if (k < 0) return Ball(1, x.precision()) / pow_int(x, -k);
  Ball result(1, x.precision());
  Ball base = x;
  while (k > 0) {
    if (k & 1) result *= base;
    k >>= 1;
    if (k > 0) base *= base;
  }
  return result;
}

Ball ball_elementary(ElementaryFn fn, const Ball& x, long k) {
  switch (fn) {
    case ElementaryFn::Sqrt: return sqrt(x);
    case ElementaryFn::Ln: return log(x);
    case ElementaryFn::Arcsin: return asin(x);
    case ElementaryFn::PowInt: return pow_int(x, k);
  }
  throw UsageError("unknown elementary function");
}

Ball ball_arith(ArithOp op, const Ball& x, const Ball& y) {
  switch (op) {
    case ArithOp::Add: return x + y;
    case ArithOp::Sub: return x - y;
    case ArithOp::Mul: return x * y;
    case ArithOp::Div: return x / y;
    case ArithOp::Neg: return -x;
    case ArithOp::Abs: return abs(x);
  }
  throw UsageError("unknown arithmetic operation");
}

// ---- comparison ---------------------------------------------------------

bool overlaps(const Ball& x, const Ball& y) {
  if (!x.is_finite() || !y.is_finite()) return true;
  Real gap(std::max(x.precision(), y.precision()) + 2);
  mpfr_sub(gap.get(), x.mid(), y.mid(), MPFR_RNDA);
  mpfr_abs(gap.get(), gap.get(), MPFR_RNDU);
  Real reach(kRadiusPrecision + 2);
  mpfr_add(reach.get(), x.rad(), y.rad(), MPFR_RNDU);
  return mpfr_cmp(gap.get(), reach.get()) <= 0;
}

bool contains(const Ball& outer, const Ball& inner) {
  if (!outer.is_finite()) return true;
  if (!inner.is_finite()) return false;
  Precision p = std::max(outer.precision(), inner.precision()) + 2;
  Real olo(p), ohi(p), ilo(p), ihi(p);
  outer.lower(olo.get());
  outer.upper(ohi.get());
  // inner endpoints rounded outward so containment is never overstated
  inner.lower(ilo.get());
  inner.upper(ihi.get());
  return mpfr_cmp(olo.get(), ilo.get()) <= 0 && mpfr_cmp(ihi.get(), ohi.get()) <= 0;
}

namespace {

int digits_from_error(mpfr_srcptr err, mpfr_srcptr mid, Precision cap_prec) {
  const int cap = static_cast<int>(std::floor(static_cast<double>(cap_prec) * std::log10(2.0)));
  if (!mpfr_number_p(err)) return 0;
  if (mpfr_zero_p(err)) return cap;
  Real scale(64);
  mpfr_abs(scale.get(), mid, MPFR_RNDD);
  if (mpfr_cmp_ui(scale.get(), 1) < 0) mpfr_set_ui(scale.get(), 1, MPFR_RNDN);
  mpfr_div(scale.get(), scale.get(), err, MPFR_RNDD);
  if (mpfr_cmp_ui(scale.get(), 1) < 0) return 0;
  mpfr_log10(scale.get(), scale.get(), MPFR_RNDD);
  double d = std::floor(mpfr_get_d(scale.get(), MPFR_RNDD));
  return static_cast<int>(std::min<double>(d, cap));
}

}  // namespace

int agreed_digits(const Ball& x, const Ball& y) {
  if (!x.is_finite() || !y.is_finite()) return 0;
  Real diff(std::max(x.precision(), y.precision()) + 2);
  mpfr_sub(diff.get(), x.mid(), y.mid(), MPFR_RNDA);
  Real err(64);
  mpfr_abs(err.get(), diff.get(), MPFR_RNDU);
  mpfr_add(err.get(), err.get(), x.rad(), MPFR_RNDU);
  mpfr_add(err.get(), err.get(), y.rad(), MPFR_RNDU);
  return digits_from_error(err.get(), x.mid(), std::min(x.precision(), y.precision()));
}

int accurate_digits(const Ball& x) {
  if (!x.is_finite()) return 0;
  return digits_from_error(x.rad(), x.mid(), x.precision());
}

}  // namespace cbv
