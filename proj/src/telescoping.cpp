#include "cbv/telescoping.hpp"

#include "cbv/error.hpp"

namespace cbv {

namespace {

RatFunc rho_power(int s) {
  // ((2n+1)/(2n+2))^s = c_{n+1}^s / c_n^s
  return RatFunc::linear_power(2, 1, s) * RatFunc::linear_power(2, 2, -s);
}

RatFunc reciprocal_linear(long a, long b) { return RatFunc::linear_power(a, b, -1); }

}  // namespace

RatFunc telescoping_operator(const RatFunc& R, int s) { return R - rho_power(s) * R.shifted(); }

// L_s[n^-k] = (k + s/2) n^-(k+1) + O(n^-(k+2)), so each step removes the
// leading term of the remainder.
RatFunc build_telescoper(const RatFunc& w, int s, int order) {
  RatFunc R;
  RatFunc e = w;
  for (int j = 0; j < order && !e.is_zero(); ++j) {
    const int ord = e.order();
    const int k = ord - 1;
    BigRational denom = BigRational(k) + make_rational(s, 2);
    if (sgn(denom) <= 0) throw UsageError("weight decays too slowly for a telescoping tail");
    RatFunc step = RatFunc::inverse_power(k) * BigRational(e.leading() / denom);
    R += step;
    e -= telescoping_operator(step, s);
    if (!e.is_zero() && e.order() <= ord) throw Error("telescoping step failed to raise the decay order");
  }
  return R;
}

RatFunc harmonic_increment(HarmonicKind h) {
  switch (h) {
    case HarmonicKind::None: return RatFunc();
    case HarmonicKind::H: return reciprocal_linear(1, 1);
    case HarmonicKind::H2N: return reciprocal_linear(2, 1) + reciprocal_linear(2, 2);
    case HarmonicKind::D: return reciprocal_linear(2, 1) - reciprocal_linear(2, 2);
    case HarmonicKind::E: return reciprocal_linear(2, 1);
    case HarmonicKind::F: return reciprocal_linear(2, 0) + reciprocal_linear(2, 1) - reciprocal_linear(1, 1);
  }
  throw UsageError("unknown harmonic kind");
}

// H_n <= ln n + 1, H_2n - H_n <= ln 2, H_{2n-1} - H_n <= ln 2.
std::pair<double, double> harmonic_log_bound(HarmonicKind h) {
  switch (h) {
    case HarmonicKind::None: return {0.0, 1.0};
    case HarmonicKind::H: return {1.0, 1.0};
    case HarmonicKind::H2N: return {1.0, 1.6932};
    case HarmonicKind::D: return {0.0, 0.6932};
    case HarmonicKind::E: return {0.5, 1.6932};
    case HarmonicKind::F: return {0.0, 0.6932};
  }
  throw UsageError("unknown harmonic kind");
}

TelescopingPlan build_telescoping_plan(const StreamSpec& spec, int order) {
  if (!(spec.base == SurdQ5(1))) throw UsageError("telescoping tail needs base 1");
  if (!spec.sign.is_constant()) throw UsageError("telescoping tail needs a constant sign");
  if (!spec.scale.is_rational()) throw UsageError("telescoping tail needs a rational scale");
  TelescopingPlan plan;
  plan.global = spec.scale.rational_part() * spec.sign.at(0);
  for (const auto& c : spec.components) {
    TelescopingPart part;
    part.coeff = c.coeff;
    part.constant = c.constant;
    part.h = c.h;
    part.s = c.s;
    RatFunc w = c.w.as_ratfunc();
    if (c.wallis) {
      // c_n (2n)!!/(2n+1)!! = 1/(2n+1)
      if (c.s < 1) throw UsageError("Wallis factor needs a central binomial factor");
      w *= reciprocal_linear(2, 1);
      part.s -= 1;
    }
    part.R = build_telescoper(w, part.s, order);
    part.e1 = w - telescoping_operator(part.R, part.s);
    if (c.h != HarmonicKind::None) {
      RatFunc q = rho_power(part.s) * part.R.shifted() * harmonic_increment(c.h);
      part.S = build_telescoper(q, part.s, order);
      part.e2 = q - telescoping_operator(part.S, part.s);
    }
    plan.parts.push_back(std::move(part));
  }
  return plan;
}

namespace {

// Upper bound of sum_{n>N} |c_n^s e(n)| (a ln n + b) using c_n <= (pi n)^-1/2.
void remainder_bound(mpfr_ptr out, const RatFunc& e, int s, std::pair<double, double> ab, long N) {
  if (e.is_zero()) {
    mpfr_set_zero(out, 1);
    return;
  }
  BigRational K = e.decay_constant(N + 1);
  Real k(64), pi(64);
  mpfr_set_q(k.get(), K.get_mpq_t(), MPFR_RNDU);
  if (s > 0) {
    mpfr_const_pi(pi.get(), MPFR_RNDD);
    mpfr_rec_sqrt(pi.get(), pi.get(), MPFR_RNDU);  // pi^-1/2
    mpfr_pow_ui(pi.get(), pi.get(), static_cast<unsigned long>(s), MPFR_RNDU);
    mpfr_mul(k.get(), k.get(), pi.get(), MPFR_RNDU);
  }
  const double p = e.order() + 0.5 * s;
  log_power_tail(out, k.get(), ab.first, ab.second, p, N);
}

}  // namespace

std::optional<Ball> telescoping_tail(const TelescopingPlan& plan, const TermStream& stream) {
  const long N = stream.index();
  if (!stream.started() || N < 2) return std::nullopt;
  const Precision prec = stream.precision();
  const StreamState next = stream.peek_state();
  Ball total(0, prec);
  Real r1(64), r2(64), mag(64);
  for (const auto& part : plan.parts) {
    Ball k(part.coeff, prec);
    if (part.constant) k *= constant(*part.constant, prec);

    // boundary term c_{N+1}^s (R(N+1) h(N+1) + S(N+1))
    Ball b(part.R.eval(N + 1), prec);
    if (part.h != HarmonicKind::None) {
      b *= next.harmonic(part.h);
      b += Ball(part.S.eval(N + 1), prec);
    }
    for (int i = 0; i < part.s; ++i) b *= next.c;

    remainder_bound(r1.get(), part.e1, part.s, harmonic_log_bound(part.h), N);
    if (part.h != HarmonicKind::None) {
      remainder_bound(r2.get(), part.e2, part.s, {0.0, 1.0}, N);
      mpfr_add(r1.get(), r1.get(), r2.get(), MPFR_RNDU);
    }
    if (!mpfr_number_p(r1.get())) return std::nullopt;
    b.add_error(r1.get());
    b *= k;
    total += b;
  }
  total *= Ball(plan.global, prec);
  return total;
}

}  // namespace cbv
