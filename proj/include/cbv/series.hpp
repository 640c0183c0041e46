#pragma once

// Term streams for series built from c_n = C(2n,n)/4^n, harmonic numbers,
// rational weights and powers, and rigorous enclosures of their sums.

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cbv/ball.hpp"
#include "cbv/exact.hpp"
#include "cbv/ratfunc.hpp"

namespace cbv {

/// Largest index a stream may reach.
inline constexpr long kMaxStreamIndex = 1'000'000'000;
inline constexpr long kDefaultMaxTerms = 10'000'000;

/// (a n + b)^exp
struct LinearFactor {
  long a = 1;
  long b = 0;
  int exp = 1;
};

/// coeff * prod (a n + b)^exp
struct RationalWeight {
  BigRational coeff{1};
  std::vector<LinearFactor> factors;

  BigRational eval(long n) const;
  RatFunc as_ratfunc() const;
  std::string to_string() const;
};

/// Harmonic factor attached to a term.
enum class HarmonicKind {
  None,
  H,    // H_n
  H2N,  // H_{2n}
  D,    // H_{2n} - H_n
  E,    // H_{2n} - H_n / 2
  F,    // H_{2n-1} - H_n
};

std::string_view to_string(HarmonicKind h);
BigRational harmonic_value(HarmonicKind h, long n);

/// coeff * [constant] * c_n^s * w(n) * h(n) * [W_n], W_n = (2n)!!/(2n+1)!!.
struct Component {
  BigRational coeff{1};
  std::optional<ConstantName> constant;
  int s = 1;
  RationalWeight w;
  HarmonicKind h = HarmonicKind::None;
  bool wallis = false;
};

/// (-1)^(a n + b)
struct SignPattern {
  int a = 0;
  int b = 0;
  int at(long n) const;
  bool is_constant() const { return a % 2 == 0; }
};

/// t_n = scale * sign(n) * base^n * sum of components, for n >= first_index.
struct StreamSpec {
  std::string label;
  long first_index = 1;
  SurdQ5 base{1};
  SurdQ5 scale{1};
  SignPattern sign;
  std::vector<Component> components;

  /// True when every term lies in Q(sqrt5).
  bool is_exact() const;
  std::string describe() const;
};

/// Running quantities at index n.
struct StreamState {
  long n = 0;
  Ball c;     // c_n
  Ball hn;    // H_n
  Ball h2n;   // H_{2n}
  Ball wallis;
  Ball power;  // base^n

  Ball harmonic(HarmonicKind h) const;
};

/// Emits t_first, t_first+1, ... as Balls using incremental recurrences.
class TermStream {
 public:
  TermStream(StreamSpec spec, Precision prec);

  const StreamSpec& spec() const { return spec_; }
  Precision precision() const { return prec_; }
  /// Index of the last emitted term; first_index - 1 before the first call.
  long index() const { return started_ ? state_.n : spec_.first_index - 1; }
  bool started() const { return started_; }

  Ball next();

  const StreamState& state() const { return state_; }
  /// State at index() + 1 without emitting a term.
  StreamState peek_state() const;
  /// Per-component contributions to the last emitted term (global factors included).
  const std::vector<Ball>& component_values() const { return values_; }
  const Ball& base_ball() const { return base_; }

 private:
  void advance(StreamState& st) const;
  Ball term_at(const StreamState& st);

  StreamSpec spec_;
  Precision prec_;
  bool started_ = false;
  bool base_is_one_;
  bool need_wallis_;
  StreamState state_;
  Ball base_;
  Ball scale_;
  std::vector<Ball> coeffs_;  // coeff * constant, per component
  std::vector<Ball> values_;
};

/// Exact counterpart of TermStream for specs without transcendental factors.
class ExactTermStream {
 public:
  explicit ExactTermStream(StreamSpec spec);
  long index() const { return started_ ? n_ : spec_.first_index - 1; }
  SurdQ5 next();

 private:
  StreamSpec spec_;
  bool started_ = false;
  long n_ = 0;
  BigRational c_;
  BigRational hn_, h2n_, wallis_;
  SurdQ5 power_;
};

/// Encloses sum_{n = first_index}^{N} t_n.
Ball partial_sum(const StreamSpec& spec, long N, Precision prec);
/// Exact sum_{n = first_index}^{N} t_n; throws UsageError for non-exact specs.
SurdQ5 exact_partial_sum(const StreamSpec& spec, long N);

// ---- tails --------------------------------------------------------------

enum class TailKind { GeometricRatio, PSeries, Alternating, Telescoping };
std::string_view to_string(TailKind k);

/// |t_n| <= C (a ln n + b) / n^p for n >= n0. tail_sign = +1 / -1 when every
/// term from n0 on is >= 0 / <= 0, 0 when unknown.
struct PSeriesBound {
  double C = 1;
  double p = 2;
  long n0 = 1;
  double log_slope = 0;
  double log_offset = 1;
  int tail_sign = 0;
};

struct TailStrategy {
  TailKind kind = TailKind::GeometricRatio;
  PSeriesBound pseries;
  long n0 = 2;    // first N at which the strategy may be applied
  int order = 8;  // telescoping: number of correction terms

  static TailStrategy geometric() { return {}; }
  static TailStrategy p_series(PSeriesBound b);
  static TailStrategy alternating(long n0);
  static TailStrategy telescoping(int order = 8);
  std::string describe() const;
};

/// Upper bound on sum_{n > N} C (a ln n + b) n^-p via the integral from N.
/// Returns +inf when the integrand is not decreasing on [N, inf) or p <= 1.
void log_power_tail(mpfr_ptr out, mpfr_srcptr C, double a, double b, double p, long N);

struct TelescopingPlan;

/// Produces enclosures of sum_{n > N} t_n for the stream's current index N.
class TailEvaluator {
 public:
  TailEvaluator(const StreamSpec& spec, TailStrategy tail, Precision prec);
  ~TailEvaluator();
  TailEvaluator(TailEvaluator&&) noexcept;
  TailEvaluator& operator=(TailEvaluator&&) noexcept;

  /// nullopt while the declared hypotheses do not yet hold at N.
  std::optional<Ball> at(const TermStream& stream) const;
  const TailStrategy& strategy() const { return tail_; }

 private:
  std::optional<Ball> geometric(const TermStream& s) const;
  std::optional<Ball> pseries(const TermStream& s) const;
  std::optional<Ball> alternating(const TermStream& s) const;

  TailStrategy tail_;
  Precision prec_;
  std::unique_ptr<TelescopingPlan> plan_;
};

enum class SumOutcome {
  Reached,
  MaxTerms,            // ran out of terms before the tail was small enough
  PrecisionExhausted,  // accumulated rounding alone exceeds the target
};
std::string_view to_string(SumOutcome o);

struct SumResult {
  Ball value;
  long terms_used = 0;
  Ball tail;  // enclosure of the omitted remainder that was added
  TailKind strategy = TailKind::GeometricRatio;
  SumOutcome outcome = SumOutcome::MaxTerms;
  bool reached() const { return outcome == SumOutcome::Reached; }
};

/// Sums until rad <= tolerance_factor * 10^-digits * max(|mid|, 1).
SumResult sum_to_precision(const StreamSpec& spec, const TailStrategy& tail, int target_digits,
                           long max_terms = kDefaultMaxTerms, Precision prec = 0,
                           double tolerance_factor = 1.0);

struct TailProbe {
  long N = 0;
  Ball tail;   // tail enclosure at N
  Ball block;  // sum_{N < n <= 4N} t_n
  bool ok = false;
  std::string detail;
};

struct TailCheckReport {
  std::vector<TailProbe> probes;
  bool passed = true;
};

/// For each probe N checks |block| - rad <= tail bound at N, and for
/// non-symmetric tails that block + tail(4N) overlaps tail(N).
TailCheckReport empirical_tail_check(const StreamSpec& spec, const TailStrategy& tail,
                                     const std::vector<long>& probes, Precision prec = 128);

}  // namespace cbv
