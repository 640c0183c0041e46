#pragma once

// Midpoint-radius real arithmetic. The midpoint is an MPFR number of a chosen
// binary precision; the radius is a short MPFR number that is only ever
// rounded upward, so [mid - rad, mid + rad] always encloses the exact value.

#include <mpfr.h>

#include <string>
#include <utility>

#include "cbv/exact.hpp"

namespace cbv {

using Precision = mpfr_prec_t;

inline constexpr Precision kRadiusPrecision = 30;
inline constexpr Precision kDefaultPrecision = 64;

/// Working precision for a decimal digit target: ceil(D log2 10) + 64 guard bits.
Precision precision_for_digits(int digits);

/// Owning wrapper around mpfr_t.
class Real {
 public:
  explicit Real(Precision prec = kDefaultPrecision) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
  Real(const Real& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Real(Real&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
  }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  Precision precision() const { return mpfr_get_prec(v_); }

 private:
  mpfr_t v_;
};

class Ball {
 public:
  explicit Ball(Precision prec = kDefaultPrecision);
  Ball(long value, Precision prec);
  Ball(const BigInt& value, Precision prec);
  Ball(const BigRational& value, Precision prec);
  /// Decimal midpoint and radius, e.g. ("1.05", "0.01"); the radius is widened
  /// to cover the conversion error of the midpoint.
  static Ball from_decimal(const std::string& mid, const std::string& rad, Precision prec);
  /// Smallest ball (at this precision) containing [lo, hi].
  static Ball from_interval(mpfr_srcptr lo, mpfr_srcptr hi, Precision prec);
  /// A ball with infinite radius: encloses nothing useful.
  static Ball whole(Precision prec);

  Precision precision() const { return mid_.precision(); }
  mpfr_srcptr mid() const { return mid_.get(); }
  mpfr_srcptr rad() const { return rad_.get(); }

  double mid_double() const { return mpfr_get_d(mid_.get(), MPFR_RNDN); }
  double rad_double() const { return mpfr_get_d(rad_.get(), MPFR_RNDU); }
  /// Upper bound of |x| over the ball, as a double rounded up.
  double magnitude_upper() const;

  bool is_finite() const { return mpfr_number_p(mid_.get()) && mpfr_number_p(rad_.get()); }
  bool is_exact() const { return mpfr_zero_p(rad_.get()) != 0; }
  bool contains_zero() const;
  bool is_positive() const;  // whole ball > 0
  bool is_negative() const;  // whole ball < 0

  /// lower/upper endpoints rounded outward, at the midpoint precision.
  void lower(mpfr_ptr out) const;
  void upper(mpfr_ptr out) const;

  /// Widens the radius by r (rounded up).
  void add_error(mpfr_srcptr r);
  void add_error(double r);
  /// Raises the midpoint precision (exact), never lowers it.
  void ensure_precision(Precision prec);
  /// Copy with the midpoint rounded to prec bits; the radius absorbs the rounding.
  Ball rounded_to(Precision prec) const;

  Ball& operator+=(const Ball& o);
  Ball& operator-=(const Ball& o);
  Ball& operator*=(const Ball& o);
  Ball& operator/=(const Ball& o);
  Ball& mul_si(long k);
  /// Adds the rational p/q.
  Ball& add_ratio(long p, long q);
  Ball& div_si(long k);
  Ball& negate();

  friend Ball operator+(Ball x, const Ball& y) { return x += y; }
  friend Ball operator-(Ball x, const Ball& y) { return x -= y; }
  friend Ball operator*(Ball x, const Ball& y) { return x *= y; }
  friend Ball operator/(Ball x, const Ball& y) { return x /= y; }
  friend Ball operator-(Ball x) { return x.negate(); }

  /// "mid ± rad" with the midpoint cut to the digits the radius justifies.
  /// max_digits < 0 means no extra cap.
  std::string to_string(int max_digits = -1) const;

 private:
  void round_error(int ternary);

  Real mid_;
  Real rad_{kRadiusPrecision};
};

Ball abs(const Ball& x);
Ball sqrt(const Ball& x);
Ball log(const Ball& x);
Ball asin(const Ball& x);
Ball pow_int(const Ball& x, long k);

enum class ElementaryFn { Sqrt, Ln, Arcsin, PowInt };
/// Dispatcher over the elementary functions; k is only used by PowInt.
Ball ball_elementary(ElementaryFn fn, const Ball& x, long k = 0);

enum class ArithOp { Add, Sub, Mul, Div, Neg, Abs };
/// Dispatcher over the arithmetic operations; y is ignored for Neg and Abs.
Ball ball_arith(ArithOp op, const Ball& x, const Ball& y);

bool overlaps(const Ball& x, const Ball& y);
/// True iff inner's interval lies inside outer's.
bool contains(const Ball& outer, const Ball& inner);
/// Largest d >= 0 with |x.mid - y.mid| + x.rad + y.rad <= 10^-d max(|x.mid|, 1).
int agreed_digits(const Ball& x, const Ball& y);
/// Largest d >= 0 with rad <= 10^-d max(|mid|, 1).
int accurate_digits(const Ball& x);

// ---- named constants ----------------------------------------------------

enum class ConstantName { Pi, Ln2, CatalanG, Zeta3, Sqrt5, Alpha, Zeta2 };

inline constexpr ConstantName kAllConstants[] = {
    ConstantName::Pi,    ConstantName::Ln2,   ConstantName::CatalanG, ConstantName::Zeta3,
    ConstantName::Sqrt5, ConstantName::Alpha, ConstantName::Zeta2};

std::string_view to_string(ConstantName name);
ConstantName parse_constant_name(std::string_view text);

/// Enclosure with rad <= 2^(2 - prec) |mid|. Memoized per (name, prec).
Ball constant(ConstantName name, Precision prec);

/// Encloses a + b sqrt5.
Ball from_surd(const SurdQ5& s, Precision prec);

}  // namespace cbv
