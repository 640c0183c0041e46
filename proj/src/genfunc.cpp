#include "cbv/genfunc.hpp"

#include <algorithm>
#include <cmath>

#include "cbv/error.hpp"

namespace cbv {

namespace {

struct NameInfo {
  GFName name;
  std::string_view text;
  std::string_view domain;
};

constexpr NameInfo kNames[] = {
    {GFName::M, "GF_M", "-1/4 <= x < 1/4"},
    {GFName::HD, "GF_HD", "|x| < 1/4"},
    {GFName::H2N, "GF_H2N", "|x| < 1/4"},
    {GFName::CAT_HD, "GF_CAT_HD", "|x| < 1/4"},
    {GFName::CAT_H2N, "GF_CAT_H2N", "|x| < 1/4"},
    {GFName::CAT_HALF, "GF_CAT_HALF", "|x| < 1/4"},
    {GFName::EQ28, "GF_EQ28", "|x| <= 1"},
    {GFName::EQ29, "GF_EQ29", "|x| <= 1"},
    {GFName::EQ30, "GF_EQ30", "0 < |x| <= 1"},
    {GFName::SHIFTED, "GF_SHIFTED", "|x| < 1/4"},
};

const NameInfo& info(GFName n) {
  for (const auto& i : kNames) {
    if (i.name == n) return i;
  }
  throw UsageError("unknown generating function");
}

bool quarter_domain(GFName n) {
  return n != GFName::EQ28 && n != GFName::EQ29 && n != GFName::EQ30;
}

bool uses_square(GFName n) { return !quarter_domain(n); }

[[noreturn]] void reject(const GF& gf, bool straddles) {
  throw DomainError(to_string(gf) + ": x " + (straddles ? "straddles the boundary of" : "lies outside") +
                    " the domain " + std::string(info(gf.name).domain));
}

// Coefficient envelope |a_n| <= K (n + 1) in the series variable (4x or x^2).
long envelope(const GF& gf) { return gf.name == GFName::SHIFTED ? std::max(2L, 1L << gf.k) : 2L; }

Component harmonic_component(HarmonicKind h, std::vector<LinearFactor> factors = {}) {
  Component c;
  c.s = 1;
  c.h = h;
  c.w.factors = std::move(factors);
  return c;
}

// Series part without base power and scale: coefficient of y^n.
StreamSpec coefficient_spec(const GF& gf) {
  StreamSpec spec;
  spec.label = to_string(gf);
  const std::vector<LinearFactor> catalan = {{1, 1, -1}};
  switch (gf.name) {
    case GFName::M: spec.components = {harmonic_component(HarmonicKind::H)}; break;
    case GFName::HD: spec.components = {harmonic_component(HarmonicKind::D)}; break;
    case GFName::H2N: spec.components = {harmonic_component(HarmonicKind::H2N)}; break;
    case GFName::CAT_HD: spec.components = {harmonic_component(HarmonicKind::D, catalan)}; break;
    case GFName::CAT_H2N: spec.components = {harmonic_component(HarmonicKind::H2N, catalan)}; break;
    case GFName::CAT_HALF: spec.components = {harmonic_component(HarmonicKind::E, catalan)}; break;
    case GFName::EQ28:
      spec.components = {harmonic_component(HarmonicKind::None, {{1, 0, 1}, {2, -1, -2}, {2, 1, -1}})};
      break;
    case GFName::EQ29:
      spec.components = {
          harmonic_component(HarmonicKind::None, {{1, 0, 1}, {2, -1, -2}, {2, 1, -1}, {2, 3, -1}})};
      break;
    case GFName::EQ30:
      spec.components = {harmonic_component(HarmonicKind::None, {{1, 0, 2}, {2, -1, -2}, {2, 1, -1}})};
      break;
    case GFName::SHIFTED: {
      std::vector<LinearFactor> f;
      for (int i = 1; i <= gf.k; ++i) {
        f.push_back({2, i, 1});
        f.push_back({1, i, -1});
      }
      spec.first_index = 0;
      spec.components = {harmonic_component(HarmonicKind::None, std::move(f))};
      break;
    }
  }
  return spec;
}

// Global factor multiplying the power series in y: x^3 for EQ29, 2/x for EQ30.
Ball series_scale(GFName n, const Ball& x) {
  const Precision p = x.precision();
  if (n == GFName::EQ29) return pow_int(x, 3);
  if (n == GFName::EQ30) return Ball(2, p) / x;
  return Ball(1, p);
}

Ball series_variable(GFName n, const Ball& x) {
  if (uses_square(n)) return x * x;
  Ball y = x;
  y.mul_si(4);
  return y;
}

// Truncated power series with a rigorous remainder, for |x| tiny.
Ball small_x_series(const GF& gf, const Ball& x, Precision prec) {
  const StreamSpec spec = coefficient_spec(gf);
  const Ball y = series_variable(gf.name, x);
  Real t(64);
  mpfr_set_d(t.get(), y.magnitude_upper(), MPFR_RNDU);

  // K (M + 2) t^(M+1) / (1 - t)^2 bounds sum_{n > M} K (n + 1) t^n.
  Real bound(64), one_minus(64), target(64);
  mpfr_ui_sub(one_minus.get(), 1, t.get(), MPFR_RNDD);
  mpfr_sqr(one_minus.get(), one_minus.get(), MPFR_RNDD);
  mpfr_set_ui_2exp(target.get(), 1, -static_cast<long>(prec) - 8, MPFR_RNDD);
  if (spec.first_index > 0 && !mpfr_zero_p(t.get())) mpfr_mul(target.get(), target.get(), t.get(), MPFR_RNDD);

  long M = spec.first_index + 2;
  for (;; ++M) {
    mpfr_pow_ui(bound.get(), t.get(), static_cast<unsigned long>(M + 1), MPFR_RNDU);
    mpfr_mul_si(bound.get(), bound.get(), envelope(gf) * (M + 2), MPFR_RNDU);
    mpfr_div(bound.get(), bound.get(), one_minus.get(), MPFR_RNDU);
    if (mpfr_lessequal_p(bound.get(), target.get()) || M > 64) break;
  }

  std::vector<BigRational> coeffs;
  ExactTermStream terms(spec);
  for (long n = spec.first_index; n <= M; ++n) coeffs.push_back(terms.next().rational_part());

  Ball acc(0, prec);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    acc *= y;
    acc += Ball(*it, prec);
  }
  for (long n = 0; n < spec.first_index; ++n) acc *= y;
  acc.add_error(bound.get());
  return acc * series_scale(gf.name, x);
}

Ball closed_form(const GF& gf, const Ball& x) {
  const Precision p = x.precision();
  const Ball one(1, p);
  if (gf.name == GFName::EQ28 || gf.name == GFName::EQ29 || gf.name == GFName::EQ30) {
    const Ball as = asin(x);
    const Ball r = sqrt(one - x * x);
    const Ball x2 = x * x;
    switch (gf.name) {
      case GFName::EQ28: {
        Ball v = r + Ball(2, p) * x * as - as / x;
        return v.div_si(8);
      }
      case GFName::EQ29: {
        Ball poly = Ball(8, p) * x2 * x2 - Ball(8, p) * x2 + Ball(3, p);
        Ball cubic = Ball(6, p) * x2 * x - Ball(3, p) * x;
        Ball v = poly * as + r * cubic;
        return v.div_si(128);
      }
      default: {
        Ball v = (Ball(2, p) * x2 + one) * as - x * r;
        Ball d = x2;
        d.mul_si(8);
        return v / d;
      }
    }
  }

  Ball four_x = x;
  four_x.mul_si(4);
  const Ball s = sqrt(one - four_x);
  const Ball one_plus = one + s;
  Ball half_one_plus = one_plus;
  half_one_plus.div_si(2);
  Ball two_x = x;
  two_x.mul_si(2);

  switch (gf.name) {
    case GFName::M: {
      Ball twice_s = s;
      twice_s.mul_si(2);
      Ball v = log(one_plus / twice_s) / s;
      return v.mul_si(2);
    }
    case GFName::HD: return -(log(half_one_plus) / s);
    case GFName::H2N: {
      Ball v = log(half_one_plus) - Ball(2, p) * log(s);
      return v / s;
    }
    case GFName::CAT_HD: return ((one - s) + one_plus * log(half_one_plus)) / two_x;
    case GFName::CAT_H2N: {
      Ball v = (one - s) - one_plus * log(one_plus) + constant(ConstantName::Ln2, p) +
               s * log(Ball(2, p) - Ball(8, p) * x);
      return v / two_x;
    }
    case GFName::CAT_HALF: return (one - s + s * log(s)) / two_x;
    case GFName::SHIFTED: return pow_int((one - s) / two_x, gf.k) / s;
    default: break;
  }
  throw UsageError("unknown generating function");
}

// Bits lost to cancellation when |x| is small.
long cancellation_guard(const Ball& x) {
  if (mpfr_zero_p(x.mid()) || !mpfr_number_p(x.mid())) return 0;
  const long e = mpfr_get_exp(x.mid());
  return e < 0 ? 2 * (-e) : 0;
}

}  // namespace

std::string_view to_string(GFName n) { return info(n).text; }

GFName parse_gf_name(std::string_view text) {
  for (const auto& i : kNames) {
    if (i.text == text) return i.name;
  }
  throw UsageError("unknown generating function: " + std::string(text));
}

std::string to_string(const GF& gf) {
  std::string s(to_string(gf.name));
  if (gf.name == GFName::SHIFTED) s += "(" + std::to_string(gf.k) + ")";
  return s;
}

std::string domain_text(GFName n) { return std::string(info(n).domain); }

void check_domain(const GF& gf, const Ball& x) {
  if (gf.name == GFName::SHIFTED && gf.k < 0) throw UsageError("GF_SHIFTED needs k >= 0");
  if (!x.is_finite()) reject(gf, false);
  Real lo(x.precision()), hi(x.precision());
  x.lower(lo.get());
  x.upper(hi.get());
  if (quarter_domain(gf.name)) {
    const bool closed_left = gf.name == GFName::M;
    const int c_lo = mpfr_cmp_d(lo.get(), -0.25);
    const int c_hi = mpfr_cmp_d(hi.get(), 0.25);
    const bool lo_ok = closed_left ? c_lo >= 0 : c_lo > 0;
    const bool hi_ok = c_hi < 0;
    if (lo_ok && hi_ok) return;
    // entirely outside when the whole ball sits beyond one boundary
    const bool outside = mpfr_cmp_d(lo.get(), 0.25) >= 0 ||
                         (closed_left ? mpfr_cmp_d(hi.get(), -0.25) < 0 : mpfr_cmp_d(hi.get(), -0.25) <= 0);
    reject(gf, !outside);
  }
  const bool lo_ok = mpfr_cmp_si(lo.get(), -1) >= 0;
  const bool hi_ok = mpfr_cmp_si(hi.get(), 1) <= 0;
  const bool zero_ok = gf.name != GFName::EQ30 || !x.contains_zero();
  if (lo_ok && hi_ok && zero_ok) return;
  const bool outside = mpfr_cmp_si(lo.get(), 1) > 0 || mpfr_cmp_si(hi.get(), -1) < 0 ||
                       (gf.name == GFName::EQ30 && x.is_exact() && mpfr_zero_p(x.mid()));
  reject(gf, !outside);
}

void check_domain(const GF& gf, const SurdQ5& x) {
  if (gf.name == GFName::SHIFTED && gf.k < 0) throw UsageError("GF_SHIFTED needs k >= 0");
  const SurdQ5 quarter(make_rational(1, 4));
  bool ok = false;
  if (quarter_domain(gf.name)) {
    const int left = (x + quarter).sign();
    ok = (quarter - x).sign() > 0 && (gf.name == GFName::M ? left >= 0 : left > 0);
  } else {
    ok = (SurdQ5(1) - x).sign() >= 0 && (SurdQ5(1) + x).sign() >= 0;
    if (gf.name == GFName::EQ30 && x.is_zero()) ok = false;
  }
  if (!ok) reject(gf, false);
}

Ball gf_eval(const GF& gf, const Ball& x) {
  check_domain(gf, x);
  const Precision prec = x.precision();
  // small |x|: the closed forms cancel, use the power series instead
  Real thr(64);
  mpfr_set_ui_2exp(thr.get(), 1, -static_cast<long>(prec) / 4, MPFR_RNDD);
  Real hi(64);
  mpfr_set_d(hi.get(), x.magnitude_upper(), MPFR_RNDU);
  if (mpfr_less_p(hi.get(), thr.get())) {
    Ball xw = x;
    xw.ensure_precision(prec + 16);
    return small_x_series(gf, xw, prec + 16).rounded_to(prec);
  }
  Ball xw = x;
  xw.ensure_precision(prec + 32 + cancellation_guard(x));
  return closed_form(gf, xw).rounded_to(prec);
}

Ball gf_eval(const GF& gf, const SurdQ5& x, Precision prec) {
  check_domain(gf, x);
  const long guard = 32;
  if (x.is_zero()) {
    Ball z(0, prec);
    return small_x_series(gf, z, prec);
  }
  Ball xb = from_surd(x, prec + guard);
  if (gf.name == GFName::M && x == SurdQ5(make_rational(-1, 4))) xb = Ball(make_rational(-1, 4), prec + guard);
  Ball v = [&] {
    Real thr(64);
    mpfr_set_ui_2exp(thr.get(), 1, -static_cast<long>(prec) / 4, MPFR_RNDD);
    Real hi(64);
    mpfr_set_d(hi.get(), xb.magnitude_upper(), MPFR_RNDU);
    if (mpfr_less_p(hi.get(), thr.get())) return small_x_series(gf, xb, prec + guard);
    xb.ensure_precision(prec + guard + cancellation_guard(xb));
    return closed_form(gf, xb);
  }();
  return v.rounded_to(prec);
}

StreamSpec gf_series_stream(const GF& gf, const SurdQ5& x) {
  check_domain(gf, x);
  StreamSpec spec = coefficient_spec(gf);
  if (uses_square(gf.name)) {
    spec.base = x * x;
    if (gf.name == GFName::EQ29) spec.scale = x * x * x;
    if (gf.name == GFName::EQ30) spec.scale = SurdQ5(2) / x;
  } else {
    spec.base = SurdQ5(4) * x;
  }
  spec.label = to_string(gf) + " at x = " + x.to_string();
  return spec;
}

SurdQ5 family_parameter(FamilyBase base, long r) {
  if (base == FamilyBase::FIB) {
    if (r < 1) throw UsageError("Fibonacci substitution needs r >= 1");
    return alpha_power(r) * SurdQ5(BigRational(fib(r))) * SurdQ5::sqrt5();
  }
  if (r < 0) throw UsageError("Lucas substitution needs r >= 0");
  return alpha_power(r) * SurdQ5(BigRational(lucas(r)));
}

SurdQ5 substitution_point(FamilyBase base, long r) {
  if (r < 1) throw UsageError("substitution point needs r >= 1");
  return (SurdQ5(4) * family_parameter(base, r)).inverse();
}

}  // namespace cbv
