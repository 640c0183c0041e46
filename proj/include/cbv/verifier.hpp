#pragma once

// Runs an identity: sums the series side to a digit target, evaluates the
// closed form, and classifies the comparison.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cbv/ball.hpp"
#include "cbv/registry.hpp"
#include "cbv/series.hpp"

namespace cbv {

enum class Verdict { PASS, FAIL, INCONCLUSIVE };
std::string_view to_string(Verdict v);

struct VerificationReport {
  std::string id;
  Status status = Status::AS_PRINTED_OK;
  Ball lhs;
  Ball rhs;
  bool overlap = false;
  int agreed_digits = 0;
  int requested_digits = 0;
  long terms_used = 0;
  TailKind tail_strategy = TailKind::GeometricRatio;
  SumOutcome outcome = SumOutcome::MaxTerms;
  Precision precision = 0;
  int attempts = 0;
  double wall_time = 0;  // seconds
  Verdict verdict = Verdict::INCONCLUSIVE;
  std::string note;
};

/// Default digit targets by convergence class.
struct DigitsPolicy {
  int geometric = 30;
  int pseries_fast = 8;  // p >= 3
  int pseries_slow = 6;  // p < 3
  int telescoping = 15;
  int alternating = 15;
  /// When false, per-entry digit overrides are ignored.
  bool entry_overrides = true;

  int digits_for(const IdentityEntry& e) const;
  /// "key=value,..." with keys geometric, pseries_fast, pseries_slow,
  /// telescoping, alternating, entry_overrides (0/1). Throws UsageError.
  static DigitsPolicy parse(std::string_view text);
  /// Default policy, modified by the CBVERIFY_POLICY environment variable when set.
  static DigitsPolicy from_environment();
  std::string to_string() const;
};

/// Fraction of the 10^-D budget given to the series side; the rest is left
/// for the closed form and the comparison.
inline constexpr double kLhsToleranceFactor = 0.45;
inline constexpr int kMaxPrecisionRetries = 3;
/// A FAIL needs a gap above this multiple of the combined radii.
inline constexpr double kFailGapFactor = 10.0;
inline const std::vector<long> kVerifyTailProbes = {32, 128};

/// PASS / FAIL / INCONCLUSIVE from two enclosures.
Verdict classify(const Ball& lhs, const Ball& rhs, int digits);

VerificationReport verify(const IdentityEntry& entry, int digits, long max_terms = kDefaultMaxTerms);
/// Throws UsageError for unknown ids.
VerificationReport verify(std::string_view id, int digits, long max_terms = kDefaultMaxTerms);

struct SuiteSummary {
  std::map<Status, std::map<Verdict, int>> counts;
  std::vector<std::string> expected_failures;    // discrepant fixtures that did FAIL
  std::vector<std::string> unexpected;            // anything breaking the contract
  bool contract_ok = false;
};

struct SuiteResult {
  std::vector<VerificationReport> reports;  // registry order
  SuiteSummary summary;
};

/// Every registry entry, distributed over `workers` threads; the report
/// order and contents do not depend on the worker count.
SuiteResult verify_all(const DigitsPolicy& policy = {}, unsigned workers = 1, long max_terms = kDefaultMaxTerms);
SuiteSummary summarize(const std::vector<VerificationReport>& reports);
bool expected_to_fail(Status s);

struct OracleMismatch {
  long n = 0;
  std::string stream_value;
  std::string oracle_value;
};

struct OracleReport {
  std::string id;
  long N = 0;
  bool exact_compared = false;  // exact stream vs oracle, else Ball overlap
  bool match = true;
  std::optional<OracleMismatch> first_mismatch;
};

/// Compares stream terms n <= N against the entry's from-scratch oracle.
OracleReport oracle_crosscheck(const IdentityEntry& entry, long N);
OracleReport oracle_crosscheck(std::string_view id, long N);

}  // namespace cbv
