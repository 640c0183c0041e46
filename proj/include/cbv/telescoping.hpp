#pragma once

// Tail enclosures for slowly convergent sums of c_n^s * w(n) * h(n) with
// rational w. A rational R(n) is built so that c_n^s w(n) is approximately
// c_n^s R(n) - c_{n+1}^s R(n+1); the telescoped part is exact and the
// remainder decays fast enough for a crude integral bound.

#include <optional>
#include <vector>

#include "cbv/ratfunc.hpp"
#include "cbv/series.hpp"

namespace cbv {

struct TelescopingPart {
  BigRational coeff;
  std::optional<ConstantName> constant;
  int s = 1;
  HarmonicKind h = HarmonicKind::None;
  RatFunc R;   // telescoper for w
  RatFunc e1;  // w - L_s[R]
  RatFunc S;   // telescoper for the harmonic correction (h != None)
  RatFunc e2;  // its remainder
};

struct TelescopingPlan {
  std::vector<TelescopingPart> parts;
  BigRational global;  // scale * constant sign
};

/// L_s[R](n) = R(n) - ((2n+1)/(2n+2))^s R(n+1)
RatFunc telescoping_operator(const RatFunc& R, int s);

/// R (a Laurent polynomial in 1/n, `order` terms) with w - L_s[R] decaying
/// `order` powers faster than w. Throws UsageError if w decays too slowly.
RatFunc build_telescoper(const RatFunc& w, int s, int order);

/// h(n+1) - h(n)
RatFunc harmonic_increment(HarmonicKind h);

/// (a, b) with 0 <= h(n) <= a ln n + b for n >= 1.
std::pair<double, double> harmonic_log_bound(HarmonicKind h);

/// Requires base 1 and a constant sign.
TelescopingPlan build_telescoping_plan(const StreamSpec& spec, int order);

/// Encloses sum_{n > N} t_n where st is the stream state at N; nullopt if N is too small.
std::optional<Ball> telescoping_tail(const TelescopingPlan& plan, const TermStream& stream);

}  // namespace cbv
