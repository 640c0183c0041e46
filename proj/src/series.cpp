#include "cbv/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "cbv/error.hpp"
#include "cbv/telescoping.hpp"

namespace cbv {

// ---- term model ---------------------------------------------------------

BigRational RationalWeight::eval(long n) const {
  BigRational v = coeff;
  for (const auto& f : factors) {
    BigRational base(f.a * n + f.b);
    if (f.exp < 0 && sgn(base) == 0) throw DomainError("weight has a pole at n = " + std::to_string(n));
    for (int i = 0; i < std::abs(f.exp); ++i) {
      if (f.exp > 0) v *= base;
      else v /= base;
    }
  }
  return v;
}

RatFunc RationalWeight::as_ratfunc() const {
  RatFunc r = RatFunc::constant(coeff);
  for (const auto& f : factors) r *= RatFunc::linear_power(f.a, f.b, f.exp);
  return r;
}

namespace {

std::string linear_text(long a, long b) {
  std::ostringstream os;
  if (a == 1) os << "n";
  else if (a != 0) os << a << "n";
  if (b != 0 || a == 0) {
    if (a != 0) os << (b < 0 ? "-" : "+") << std::labs(b);
    else os << b;
  }
  return os.str();
}

}  // namespace

std::string RationalWeight::to_string() const {
  std::ostringstream num, den;
  num << coeff.get_num().get_str();
  BigInt d = coeff.get_den();
  if (d != 1) den << d.get_str();
  for (const auto& f : factors) {
    std::ostringstream piece;
    piece << "(" << linear_text(f.a, f.b) << ")";
    if (std::abs(f.exp) != 1) piece << "^" << std::abs(f.exp);
    if (f.exp > 0) num << "*" << piece.str();
    else den << (den.tellp() > 0 ? "*" : "") << piece.str();
  }
  std::string out = num.str();
  if (den.tellp() > 0) out += "/(" + den.str() + ")";
  return out;
}

std::string_view to_string(HarmonicKind h) {
  switch (h) {
    case HarmonicKind::None: return "1";
    case HarmonicKind::H: return "H_n";
    case HarmonicKind::H2N: return "H_2n";
    case HarmonicKind::D: return "(H_2n-H_n)";
    case HarmonicKind::E: return "(H_2n-H_n/2)";
    case HarmonicKind::F: return "(H_(2n-1)-H_n)";
  }
  return "?";
}

BigRational harmonic_value(HarmonicKind h, long n) {
  switch (h) {
    case HarmonicKind::None: return 1;
    case HarmonicKind::H: return harmonic(n);
    case HarmonicKind::H2N: return harmonic(2 * n);
    case HarmonicKind::D: return harmonic(2 * n) - harmonic(n);
    case HarmonicKind::E: return harmonic(2 * n) - harmonic(n) / 2;
    case HarmonicKind::F:
      if (n < 1) throw DomainError("H_(2n-1) needs n >= 1");
      return harmonic(2 * n - 1) - harmonic(n);
  }
  return 0;
}

int SignPattern::at(long n) const {
  long e = static_cast<long>(a) * n + b;
  return (e % 2 == 0) ? 1 : -1;
}

bool StreamSpec::is_exact() const {
  return std::none_of(components.begin(), components.end(),
                      [](const Component& c) { return c.constant.has_value(); });
}

std::string StreamSpec::describe() const {
  std::ostringstream os;
  os << "sum_{n>=" << first_index << "} ";
  if (!(scale == SurdQ5(1))) os << "(" << scale.to_string() << ")*";
  if (sign.a != 0 || sign.b % 2 != 0) os << "(-1)^(" << linear_text(sign.a, sign.b) << ")*";
  if (!(base == SurdQ5(1))) os << "(" << base.to_string() << ")^n*";
  os << "[";
  for (std::size_t i = 0; i < components.size(); ++i) {
    const auto& c = components[i];
    if (i > 0) os << " + ";
    os << c.coeff.get_str();
    if (c.constant) os << "*" << to_string(*c.constant);
    if (c.s == 1) os << "*c_n";
    else if (c.s != 0) os << "*c_n^" << c.s;
    os << "*" << c.w.to_string();
    if (c.h != HarmonicKind::None) os << "*" << to_string(c.h);
    if (c.wallis) os << "*(2n)!!/(2n+1)!!";
  }
  os << "], c_n = C(2n,n)/4^n";
  return os.str();
}

Ball StreamState::harmonic(HarmonicKind h) const {
  switch (h) {
    case HarmonicKind::None: return Ball(1, hn.precision());
    case HarmonicKind::H: return hn;
    case HarmonicKind::H2N: return h2n;
    case HarmonicKind::D: return h2n - hn;
    case HarmonicKind::E: {
      Ball half = hn;
      half.div_si(2);
      return h2n - half;
    }
    case HarmonicKind::F: {
      Ball v = h2n - hn;
      v.add_ratio(-1, 2 * n);
      return v;
    }
  }
  throw UsageError("unknown harmonic kind");
}

// ---- TermStream ---------------------------------------------------------

namespace {

BigRational c_exact(long n) {
  BigInt four_pow = 1;
  four_pow <<= static_cast<mp_bitcnt_t>(2 * n);
  return make_rational(central_binomial(n), four_pow);
}

BigRational wallis_exact(long n) { return make_rational(double_factorial(2 * n), double_factorial(2 * n + 1)); }

}  // namespace

TermStream::TermStream(StreamSpec spec, Precision prec)
    : spec_(std::move(spec)), prec_(prec), base_(prec), scale_(prec) {
  if (spec_.first_index < 0) throw UsageError("stream must start at n >= 0");
  base_is_one_ = spec_.base == SurdQ5(1);
  need_wallis_ = std::any_of(spec_.components.begin(), spec_.components.end(),
                             [](const Component& c) { return c.wallis; });
  base_ = from_surd(spec_.base, prec_);
  scale_ = from_surd(spec_.scale, prec_);
  for (const auto& c : spec_.components) {
    Ball k(BigRational(c.coeff * c.w.coeff), prec_);
    if (c.constant) k *= constant(*c.constant, prec_);
    coeffs_.push_back(std::move(k));
  }
  values_.assign(spec_.components.size(), Ball(prec_));
  const long n = spec_.first_index;
  state_.n = n;
  state_.c = Ball(c_exact(n), prec_);
  state_.hn = Ball(harmonic(n), prec_);
  state_.h2n = Ball(harmonic(2 * n), prec_);
  state_.wallis = need_wallis_ ? Ball(wallis_exact(n), prec_) : Ball(1, prec_);
  state_.power = base_is_one_ ? Ball(1, prec_) : from_surd(spec_.base.pow(n), prec_);
}

void TermStream::advance(StreamState& st) const {
  const long n = st.n;
  if (n >= kMaxStreamIndex) throw ResourceError("stream index exceeds " + std::to_string(kMaxStreamIndex));
  st.c.mul_si(2 * n + 1).div_si(2 * n + 2);
  st.hn.add_ratio(1, n + 1);
  st.h2n.add_ratio(1, 2 * n + 1);
  st.h2n.add_ratio(1, 2 * n + 2);
  if (need_wallis_) st.wallis.mul_si(2 * n + 2).div_si(2 * n + 3);
  if (!base_is_one_) st.power *= base_;
  st.n = n + 1;
}

StreamState TermStream::peek_state() const {
  if (!started_) return state_;
  StreamState st = state_;
  advance(st);
  return st;
}

Ball TermStream::term_at(const StreamState& st) {
  const long n = st.n;
  Ball global = scale_;
  if (!base_is_one_) global *= st.power;
  if (spec_.sign.at(n) < 0) global.negate();
  Ball total(0, prec_);
  for (std::size_t i = 0; i < spec_.components.size(); ++i) {
    const Component& comp = spec_.components[i];
    Ball& v = values_[i];
    v = coeffs_[i];
    for (int k = 0; k < comp.s; ++k) v *= st.c;
    for (const auto& f : comp.w.factors) {
      const long x = f.a * n + f.b;
      if (f.exp < 0 && x == 0) throw DomainError("weight has a pole at n = " + std::to_string(n));
      for (int k = 0; k < std::abs(f.exp); ++k) {
        if (f.exp > 0) v.mul_si(x);
        else v.div_si(x);
      }
    }
    if (comp.h != HarmonicKind::None) v *= st.harmonic(comp.h);
    if (comp.wallis) v *= st.wallis;
    v *= global;
    total += v;
  }
  return total;
}

Ball TermStream::next() {
  if (started_) advance(state_);
  started_ = true;
  return term_at(state_);
}

// ---- ExactTermStream ----------------------------------------------------

ExactTermStream::ExactTermStream(StreamSpec spec) : spec_(std::move(spec)) {
  if (!spec_.is_exact()) throw UsageError("stream '" + spec_.label + "' has a transcendental factor");
  if (spec_.first_index < 0) throw UsageError("stream must start at n >= 0");
  n_ = spec_.first_index;
  c_ = c_exact(n_);
  hn_ = harmonic(n_);
  h2n_ = harmonic(2 * n_);
  wallis_ = wallis_exact(n_);
  power_ = spec_.base.pow(n_);
}

SurdQ5 ExactTermStream::next() {
  if (started_) {
    const long n = n_;
    c_ *= make_rational(2 * n + 1, 2 * n + 2);
    hn_ += make_rational(1, n + 1);
    h2n_ += make_rational(1, 2 * n + 1) + make_rational(1, 2 * n + 2);
    wallis_ *= make_rational(2 * n + 2, 2 * n + 3);
    power_ *= spec_.base;
    n_ = n + 1;
  }
  started_ = true;
  const long n = n_;
  BigRational sum = 0;
  for (const auto& comp : spec_.components) {
    BigRational v = comp.coeff;
    for (int k = 0; k < comp.s; ++k) v *= c_;
    v *= comp.w.eval(n);
    switch (comp.h) {
      case HarmonicKind::None: break;
      case HarmonicKind::H: v *= hn_; break;
      case HarmonicKind::H2N: v *= h2n_; break;
      case HarmonicKind::D: v *= h2n_ - hn_; break;
      case HarmonicKind::E: v *= h2n_ - hn_ / 2; break;
      case HarmonicKind::F: v *= h2n_ - make_rational(1, 2 * n) - hn_; break;
    }
    if (comp.wallis) v *= wallis_;
    sum += v;
  }
  SurdQ5 t = spec_.scale * power_ * SurdQ5(sum);
  return spec_.sign.at(n) < 0 ? -t : t;
}

Ball partial_sum(const StreamSpec& spec, long N, Precision prec) {
  if (N > kMaxStreamIndex) throw ResourceError("partial sum length exceeds " + std::to_string(kMaxStreamIndex));
  TermStream s(spec, prec);
  Ball sum(0, prec);
  while (s.index() < N) sum += s.next();
  return sum;
}

SurdQ5 exact_partial_sum(const StreamSpec& spec, long N) {
  ExactTermStream s(spec);
  SurdQ5 sum(0);
  while (s.index() < N) sum += s.next();
  return sum;
}

// ---- tails --------------------------------------------------------------

std::string_view to_string(TailKind k) {
  switch (k) {
    case TailKind::GeometricRatio: return "GeometricRatio";
    case TailKind::PSeries: return "PSeries";
    case TailKind::Alternating: return "Alternating";
    case TailKind::Telescoping: return "Telescoping";
  }
  return "?";
}

std::string_view to_string(SumOutcome o) {
  switch (o) {
    case SumOutcome::Reached: return "Reached";
    case SumOutcome::MaxTerms: return "PrecisionNotReached";
    case SumOutcome::PrecisionExhausted: return "PrecisionExhausted";
  }
  return "?";
}

TailStrategy TailStrategy::p_series(PSeriesBound b) {
  TailStrategy t;
  t.kind = TailKind::PSeries;
  t.pseries = b;
  t.n0 = std::max(1L, b.n0);
  return t;
}

TailStrategy TailStrategy::alternating(long n0) {
  TailStrategy t;
  t.kind = TailKind::Alternating;
  t.n0 = n0;
  return t;
}

TailStrategy TailStrategy::telescoping(int order) {
  TailStrategy t;
  t.kind = TailKind::Telescoping;
  t.order = order;
  return t;
}

std::string TailStrategy::describe() const {
  std::ostringstream os;
  os << to_string(kind);
  switch (kind) {
    case TailKind::PSeries:
      os << "(C=" << pseries.C << ", p=" << pseries.p << ", N0=" << pseries.n0;
      if (pseries.log_slope != 0) os << ", log=" << pseries.log_slope << "*ln n+" << pseries.log_offset;
      if (pseries.tail_sign != 0) os << ", sign=" << (pseries.tail_sign > 0 ? "+" : "-");
      os << ")";
      break;
    case TailKind::Alternating: os << "(N0=" << n0 << ")"; break;
    case TailKind::Telescoping: os << "(order=" << order << ")"; break;
    case TailKind::GeometricRatio: break;
  }
  return os.str();
}

void log_power_tail(mpfr_ptr out, mpfr_srcptr C, double a, double b, double p, long N) {
  // The integrand is decreasing on [N, inf) iff a <= p (a ln N + b).
  const bool decreasing = p * (a * std::log(static_cast<double>(N)) + b) >= a * (1 + 1e-12);
  if (p <= 1 || N < 1 || a < 0 || b < 0 || !decreasing) {
    mpfr_set_inf(out, 1);
    return;
  }
  Real ln(64), num(64), pm1(64), np(64), den(64), t1(64), t2(64);
  mpfr_set_si(ln.get(), N, MPFR_RNDN);
  mpfr_log(ln.get(), ln.get(), MPFR_RNDU);
  mpfr_mul_d(num.get(), ln.get(), a, MPFR_RNDU);
  mpfr_add_d(num.get(), num.get(), b, MPFR_RNDU);
  mpfr_set_d(pm1.get(), p, MPFR_RNDD);
  mpfr_sub_ui(pm1.get(), pm1.get(), 1, MPFR_RNDD);
  mpfr_set_si(np.get(), N, MPFR_RNDN);
  mpfr_pow(np.get(), np.get(), pm1.get(), MPFR_RNDD);  // N^(p-1)
  mpfr_mul(den.get(), pm1.get(), np.get(), MPFR_RNDD);
  mpfr_div(t1.get(), num.get(), den.get(), MPFR_RNDU);
  mpfr_mul(den.get(), den.get(), pm1.get(), MPFR_RNDD);
  mpfr_set_d(t2.get(), a, MPFR_RNDU);
  mpfr_div(t2.get(), t2.get(), den.get(), MPFR_RNDU);
  mpfr_add(t1.get(), t1.get(), t2.get(), MPFR_RNDU);
  mpfr_mul(out, t1.get(), C, MPFR_RNDU);
}

TailEvaluator::TailEvaluator(const StreamSpec& spec, TailStrategy tail, Precision prec)
    : tail_(tail), prec_(prec) {
  if (tail_.kind == TailKind::Telescoping) {
    plan_ = std::make_unique<TelescopingPlan>(build_telescoping_plan(spec, tail_.order));
  }
}

TailEvaluator::~TailEvaluator() = default;
TailEvaluator::TailEvaluator(TailEvaluator&&) noexcept = default;
TailEvaluator& TailEvaluator::operator=(TailEvaluator&&) noexcept = default;

std::optional<Ball> TailEvaluator::at(const TermStream& stream) const {
  if (!stream.started() || stream.index() < tail_.n0) return std::nullopt;
  switch (tail_.kind) {
    case TailKind::GeometricRatio: return geometric(stream);
    case TailKind::PSeries: return pseries(stream);
    case TailKind::Alternating: return alternating(stream);
    case TailKind::Telescoping: return telescoping_tail(*plan_, stream);
  }
  return std::nullopt;
}

namespace {

void magnitude_up(mpfr_ptr out, const Ball& x) {
  mpfr_abs(out, x.mid(), MPFR_RNDU);
  mpfr_add(out, out, x.rad(), MPFR_RNDU);
}

// Multiplies q by an upper bound of (1 + num/den)^e.
void times_growth(mpfr_ptr q, long num, long den, int e) {
  Real t(64);
  mpfr_set_si(t.get(), num, MPFR_RNDU);
  mpfr_div_si(t.get(), t.get(), den, MPFR_RNDU);
  mpfr_add_ui(t.get(), t.get(), 1, MPFR_RNDU);
  mpfr_pow_ui(t.get(), t.get(), static_cast<unsigned long>(e), MPFR_RNDU);
  mpfr_mul(q, q, t.get(), MPFR_RNDU);
}

Ball symmetric(mpfr_srcptr bound, Precision prec) {
  Ball b(0, prec);
  b.add_error(bound);
  return b;
}

}  // namespace

// Each component is bounded by its own ratio: |y| times, per factor,
//   c_{n+1}/c_n <= 1, W_{n+1}/W_n <= 1, (a(n+1)+b)/(an+b) <= 1 + a/(an+b),
// and h(n+1)/h(n) <= 1 + (h(n+1)-h(n))/min h. Each bound decreases in n,
// so sum_{n>N} |t_n| <= |t_N| q/(1-q) with q evaluated at N.
std::optional<Ball> TailEvaluator::geometric(const TermStream& s) const {
  const long N = s.index();
  if (N < 2) return std::nullopt;
  Real y(64), q(64), v(64), total(64), one_minus(64);
  magnitude_up(y.get(), s.base_ball());
  mpfr_set_zero(total.get(), 1);
  const auto& comps = s.spec().components;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const Component& c = comps[i];
    mpfr_set(q.get(), y.get(), MPFR_RNDU);
    for (const auto& f : c.w.factors) {
      long at = f.a * N + f.b;
      if (at <= 0 || f.a < 0) return std::nullopt;
      if (f.exp > 0 && f.a > 0) times_growth(q.get(), f.a, at, f.exp);
    }
    switch (c.h) {
      case HarmonicKind::None: break;
      case HarmonicKind::H: times_growth(q.get(), 1, N + 1, 1); break;
      case HarmonicKind::H2N: times_growth(q.get(), 2, 3 * N, 1); break;
      case HarmonicKind::D: times_growth(q.get(), 2, (2 * N + 1) * (2 * N + 2), 1); break;
      case HarmonicKind::E: times_growth(q.get(), 1, 2 * N + 1, 1); break;
      case HarmonicKind::F: times_growth(q.get(), 3, N * (N + 1), 1); break;
    }
    if (mpfr_cmp_ui(q.get(), 1) >= 0) return std::nullopt;
    mpfr_ui_sub(one_minus.get(), 1, q.get(), MPFR_RNDD);
    magnitude_up(v.get(), s.component_values()[i]);
    mpfr_mul(v.get(), v.get(), q.get(), MPFR_RNDU);
    mpfr_div(v.get(), v.get(), one_minus.get(), MPFR_RNDU);
    mpfr_add(total.get(), total.get(), v.get(), MPFR_RNDU);
  }
  return symmetric(total.get(), prec_);
}

std::optional<Ball> TailEvaluator::pseries(const TermStream& s) const {
  const auto& b = tail_.pseries;
  const long N = s.index();
  if (N < b.n0 || N < 1) return std::nullopt;
  Real c(64), bound(64);
  mpfr_set_d(c.get(), b.C, MPFR_RNDU);
  log_power_tail(bound.get(), c.get(), b.log_slope, b.log_offset, b.p, N);
  if (!mpfr_number_p(bound.get())) return std::nullopt;
  if (b.tail_sign == 0) return symmetric(bound.get(), prec_);
  Real zero(64);
  mpfr_set_zero(zero.get(), 1);
  if (b.tail_sign > 0) return Ball::from_interval(zero.get(), bound.get(), prec_);
  mpfr_neg(bound.get(), bound.get(), MPFR_RNDD);
  return Ball::from_interval(bound.get(), zero.get(), prec_);
}

// Terms alternate in sign with decreasing magnitude from N0 on, so the tail
// lies between 0 and t_{N+1}.
std::optional<Ball> TailEvaluator::alternating(const TermStream& s) const {
  TermStream peek = s;
  Ball t = peek.next();
  Real lo(prec_), hi(prec_);
  t.lower(lo.get());
  t.upper(hi.get());
  if (mpfr_sgn(lo.get()) > 0) mpfr_set_zero(lo.get(), 1);
  if (mpfr_sgn(hi.get()) < 0) mpfr_set_zero(hi.get(), 1);
  return Ball::from_interval(lo.get(), hi.get(), prec_);
}

// ---- summation ----------------------------------------------------------

namespace {

bool within(const Ball& x, int digits, double factor) {
  if (!x.is_finite()) return false;
  Real tol(64), m(64);
  mpfr_set_si(tol.get(), 10, MPFR_RNDN);
  mpfr_pow_si(tol.get(), tol.get(), -digits, MPFR_RNDD);
  mpfr_abs(m.get(), x.mid(), MPFR_RNDD);
  if (mpfr_cmp_ui(m.get(), 1) < 0) mpfr_set_ui(m.get(), 1, MPFR_RNDN);
  mpfr_mul(tol.get(), tol.get(), m.get(), MPFR_RNDD);
  mpfr_mul_d(tol.get(), tol.get(), factor, MPFR_RNDD);
  return mpfr_cmp(x.rad(), tol.get()) <= 0;
}

class CheckSchedule {
 public:
  explicit CheckSchedule(TailKind k) : kind_(k) {}
  bool due(long n) {
    if (n < next_) return false;
    switch (kind_) {
      case TailKind::GeometricRatio:
      case TailKind::Alternating: next_ = n + 1; break;
      case TailKind::PSeries: next_ = n + std::max(1L, n / 32); break;
      case TailKind::Telescoping: next_ = std::max(8L, 2 * n); break;
    }
    return true;
  }

 private:
  TailKind kind_;
  long next_ = 0;
};

}  // namespace

SumResult sum_to_precision(const StreamSpec& spec, const TailStrategy& tail, int target_digits,
                           long max_terms, Precision prec, double tolerance_factor) {
  if (target_digits < 1) throw UsageError("target_digits must be >= 1");
  if (prec == 0) prec = precision_for_digits(target_digits);
  TermStream stream(spec, prec);
  TailEvaluator ev(spec, tail, prec);
  CheckSchedule schedule(tail.kind);
  if (tail.kind == TailKind::Telescoping) schedule.due(0);

  SumResult result;
  result.strategy = tail.kind;
  result.value = Ball::whole(prec);
  result.tail = Ball::whole(prec);
  result.outcome = SumOutcome::MaxTerms;

  Ball sum(0, prec);
  long terms = 0;
  while (terms < max_terms) {
    sum += stream.next();
    ++terms;
    if (!schedule.due(stream.index())) continue;
    auto t = ev.at(stream);
    if (!t) continue;
    Ball total = sum + *t;
    result.value = total;
    result.tail = *t;
    result.terms_used = terms;
    if (within(total, target_digits, tolerance_factor)) {
      result.outcome = SumOutcome::Reached;
      return result;
    }
    if (!within(sum, target_digits, tolerance_factor)) {
      result.outcome = SumOutcome::PrecisionExhausted;
      return result;
    }
  }
  result.terms_used = terms;
  return result;
}

TailCheckReport empirical_tail_check(const StreamSpec& spec, const TailStrategy& tail,
                                     const std::vector<long>& probes, Precision prec) {
  if (probes.empty()) throw UsageError("empirical_tail_check needs at least one probe");
  std::vector<long> ns = probes;
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());

  struct Slot {
    std::optional<Ball> t_lo, t_hi;
    Ball block;
  };
  std::vector<Slot> slots(ns.size());
  for (auto& s : slots) s.block = Ball(0, prec);

  TermStream stream(spec, prec);
  TailEvaluator ev(spec, tail, prec);
  const long last = 4 * ns.back();
  while (stream.index() < last) {
    Ball t = stream.next();
    const long n = stream.index();
    for (std::size_t i = 0; i < ns.size(); ++i) {
      if (n > ns[i] && n <= 4 * ns[i]) slots[i].block += t;
      if (n == ns[i]) slots[i].t_lo = ev.at(stream);
      if (n == 4 * ns[i]) slots[i].t_hi = ev.at(stream);
    }
  }

  const bool signed_tail = tail.kind == TailKind::Telescoping ||
                           tail.kind == TailKind::Alternating ||
                           (tail.kind == TailKind::PSeries && tail.pseries.tail_sign != 0);
  TailCheckReport report;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    TailProbe p;
    p.N = ns[i];
    p.block = slots[i].block;
    if (!slots[i].t_lo) {
      p.ok = false;
      p.tail = Ball::whole(prec);
      p.detail = "tail hypotheses do not hold at N = " + std::to_string(p.N);
    } else {
      p.tail = *slots[i].t_lo;
      Real bound(64), lhs(64);
      magnitude_up(bound.get(), p.tail);
      mpfr_abs(lhs.get(), p.block.mid(), MPFR_RNDD);
      mpfr_sub(lhs.get(), lhs.get(), p.block.rad(), MPFR_RNDD);
      p.ok = mpfr_cmp(lhs.get(), bound.get()) <= 0;
      if (!p.ok) p.detail = "block sum exceeds the tail bound";
      if (p.ok && signed_tail) {
        Ball rest = p.block;
        if (slots[i].t_hi) rest += *slots[i].t_hi;
        p.ok = overlaps(rest, p.tail);
        if (!p.ok) p.detail = "block plus later tail falls outside the tail enclosure";
      }
    }
    if (!p.ok) report.passed = false;
    report.probes.push_back(std::move(p));
  }
  return report;
}

}  // namespace cbv
