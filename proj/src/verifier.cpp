#include "cbv/verifier.hpp"

#include <atomic>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <sstream>
#include <thread>

#include "cbv/error.hpp"

namespace cbv {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::PASS: return "PASS";
    case Verdict::FAIL: return "FAIL";
    case Verdict::INCONCLUSIVE: return "INCONCLUSIVE";
  }
  return "?";
}

// ---- digits policy ------------------------------------------------------

int DigitsPolicy::digits_for(const IdentityEntry& e) const {
  if (entry_overrides && e.digits) return *e.digits;
  switch (e.tail.kind) {
    case TailKind::GeometricRatio: return geometric;
    case TailKind::PSeries: return e.tail.pseries.p >= 3 ? pseries_fast : pseries_slow;
    case TailKind::Telescoping: return telescoping;
    case TailKind::Alternating: return alternating;
  }
  return geometric;
}

DigitsPolicy DigitsPolicy::parse(std::string_view text) {
  DigitsPolicy p;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view item = text.substr(pos, end - pos);
    pos = end + 1;
    if (item.empty()) continue;
    const std::size_t eq = item.find('=');
    if (eq == std::string_view::npos) throw UsageError("policy item needs key=value: " + std::string(item));
    const std::string_view key = item.substr(0, eq), val = item.substr(eq + 1);
    int v = 0;
    auto [ptr, ec] = std::from_chars(val.data(), val.data() + val.size(), v);
    if (ec != std::errc() || ptr != val.data() + val.size()) {
      throw UsageError("policy value is not an integer: " + std::string(item));
    }
    if (key == "entry_overrides") {
      p.entry_overrides = v != 0;
      continue;
    }
    if (v < 1 || v > 10000) throw UsageError("policy digits out of range: " + std::string(item));
    if (key == "geometric") p.geometric = v;
    else if (key == "pseries_fast") p.pseries_fast = v;
    else if (key == "pseries_slow") p.pseries_slow = v;
    else if (key == "telescoping") p.telescoping = v;
    else if (key == "alternating") p.alternating = v;
    else throw UsageError("unknown policy key: " + std::string(key));
  }
  return p;
}

DigitsPolicy DigitsPolicy::from_environment() {
  const char* env = std::getenv("CBVERIFY_POLICY");
  if (env == nullptr || *env == '\0') return {};
  return parse(env);
}

std::string DigitsPolicy::to_string() const {
  std::ostringstream os;
  os << "geometric=" << geometric << ",pseries_fast=" << pseries_fast << ",pseries_slow=" << pseries_slow
     << ",telescoping=" << telescoping << ",alternating=" << alternating
     << ",entry_overrides=" << (entry_overrides ? 1 : 0);
  return os.str();
}

// ---- verification -------------------------------------------------------

Verdict classify(const Ball& lhs, const Ball& rhs, int digits) {
  if (!lhs.is_finite() || !rhs.is_finite()) return Verdict::INCONCLUSIVE;
  if (overlaps(lhs, rhs)) return agreed_digits(lhs, rhs) >= digits ? Verdict::PASS : Verdict::INCONCLUSIVE;
  const Precision p = std::max(lhs.precision(), rhs.precision()) + 8;
  Real gap(p), radii(kRadiusPrecision + 8);
  mpfr_sub(gap.get(), lhs.mid(), rhs.mid(), MPFR_RNDN);
  mpfr_abs(gap.get(), gap.get(), MPFR_RNDD);
  mpfr_add(radii.get(), lhs.rad(), rhs.rad(), MPFR_RNDU);
  mpfr_sub(gap.get(), gap.get(), radii.get(), MPFR_RNDD);
  mpfr_mul_d(radii.get(), radii.get(), kFailGapFactor, MPFR_RNDU);
  return mpfr_greater_p(gap.get(), radii.get()) ? Verdict::FAIL : Verdict::INCONCLUSIVE;
}

VerificationReport verify(const IdentityEntry& entry, int digits, long max_terms) {
  if (digits < 1) throw UsageError("digits must be >= 1");
  if (max_terms < 1) throw UsageError("max_terms must be >= 1");
  const auto start = std::chrono::steady_clock::now();
  VerificationReport r;
  r.id = entry.id;
  r.status = entry.status;
  r.requested_digits = digits;
  r.tail_strategy = entry.tail.kind;

  auto finish = [&] {
    r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
  };

  const TailCheckReport check = empirical_tail_check(entry.lhs, entry.tail, kVerifyTailProbes);
  if (!check.passed) {
    for (const auto& p : check.probes) {
      if (!p.ok) {
        r.note = TailHypothesisViolation("tail hypothesis violated at N = " + std::to_string(p.N) + ": " + p.detail)
                     .what();
        break;
      }
    }
    r.lhs = Ball::whole(precision_for_digits(digits));
    r.rhs = entry.rhs.eval(precision_for_digits(digits));
    r.verdict = Verdict::INCONCLUSIVE;
    return finish();
  }

  Precision prec = precision_for_digits(digits);
  for (int attempt = 0; attempt <= kMaxPrecisionRetries; ++attempt) {
    const SumResult sum = sum_to_precision(entry.lhs, entry.tail, digits, max_terms, prec, kLhsToleranceFactor);
    r.lhs = sum.value;
    r.rhs = entry.rhs.eval(prec);
    r.terms_used = sum.terms_used;
    r.outcome = sum.outcome;
    r.precision = prec;
    r.attempts = attempt + 1;
    r.overlap = overlaps(r.lhs, r.rhs);
    r.agreed_digits = r.lhs.is_finite() && r.rhs.is_finite() ? agreed_digits(r.lhs, r.rhs) : 0;
    r.verdict = classify(r.lhs, r.rhs, digits);
    // more terms are needed, not more bits
    if (r.verdict != Verdict::INCONCLUSIVE || sum.outcome == SumOutcome::MaxTerms) break;
    prec *= 2;
  }
  if (r.outcome == SumOutcome::MaxTerms && r.verdict == Verdict::INCONCLUSIVE) {
    r.note = "PrecisionNotReached after " + std::to_string(r.terms_used) + " terms";
  }
  return finish();
}

VerificationReport verify(std::string_view id, int digits, long max_terms) {
  return verify(Registry::instance().get(id), digits, max_terms);
}

bool expected_to_fail(Status s) { return s == Status::AS_PRINTED_DISCREPANT; }

SuiteSummary summarize(const std::vector<VerificationReport>& reports) {
  SuiteSummary s;
  for (Status st : kAllStatuses) {
    for (Verdict v : {Verdict::PASS, Verdict::FAIL, Verdict::INCONCLUSIVE}) s.counts[st][v] = 0;
  }
  for (const auto& r : reports) {
    ++s.counts[r.status][r.verdict];
    if (expected_to_fail(r.status)) {
      if (r.verdict == Verdict::FAIL) s.expected_failures.push_back(r.id);
      else s.unexpected.push_back(r.id);
    } else if (r.verdict != Verdict::PASS) {
      s.unexpected.push_back(r.id);
    }
  }
  s.contract_ok = s.unexpected.empty();
  return s;
}

SuiteResult verify_all(const DigitsPolicy& policy, unsigned workers, long max_terms) {
  const auto& entries = Registry::instance().entries();
  SuiteResult result;
  result.reports.resize(entries.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < entries.size(); i = next++) {
      const IdentityEntry& e = entries[i];
      const int digits = policy.digits_for(e);
      try {
        result.reports[i] = verify(e, digits, max_terms);
      } catch (const Error& err) {
        VerificationReport r;
        r.id = e.id;
        r.status = e.status;
        r.requested_digits = digits;
        r.tail_strategy = e.tail.kind;
        r.verdict = Verdict::INCONCLUSIVE;
        r.note = err.what();
        result.reports[i] = std::move(r);
      }
    }
  };
  workers = std::max(1u, workers);
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  result.summary = summarize(result.reports);
  return result;
}

// ---- oracle comparison --------------------------------------------------

OracleReport oracle_crosscheck(const IdentityEntry& entry, long N) {
  if (N < 1 || N > 50) throw UsageError("oracle crosscheck needs 1 <= N <= 50");
  if (!entry.oracle) throw UsageError("entry " + entry.id + " has no oracle");
  OracleReport rep;
  rep.id = entry.id;
  rep.N = N;
  const long first = entry.lhs.first_index;
  auto mismatch = [&](long n, std::string s, std::string o) {
    rep.match = false;
    rep.first_mismatch = OracleMismatch{n, std::move(s), std::move(o)};
  };
  if (entry.lhs.is_exact()) {
    rep.exact_compared = true;
    ExactTermStream stream(entry.lhs);
    for (long n = first; n <= N; ++n) {
      const SurdQ5 t = stream.next();
      const OracleTerm o = entry.oracle(n);
      if (!o.times_pi.is_zero() || !(t == o.exact)) {
        mismatch(n, t.to_string(), o.exact.to_string() + " + (" + o.times_pi.to_string() + ")*pi");
        break;
      }
    }
    return rep;
  }
  const Precision prec = 256;
  TermStream stream(entry.lhs, prec);
  const Ball pi = constant(ConstantName::Pi, prec);
  for (long n = first; n <= N; ++n) {
    const Ball t = stream.next();
    const OracleTerm o = entry.oracle(n);
    const Ball ob = from_surd(o.exact, prec) + from_surd(o.times_pi, prec) * pi;
    if (!overlaps(t, ob)) {
      mismatch(n, t.to_string(), ob.to_string());
      break;
    }
  }
  return rep;
}

OracleReport oracle_crosscheck(std::string_view id, long N) {
  return oracle_crosscheck(Registry::instance().get(id), N);
}

}  // namespace cbv
