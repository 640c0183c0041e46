#include "cbv/report_json.hpp"

namespace cbv {

Json to_json(const Ball& b) { return b.to_string(); }

Json to_json(const VerificationReport& r, bool include_wall_time) {
  Json j = {
      {"id", r.id},
      {"status", std::string(to_string(r.status))},
      {"lhs", to_json(r.lhs)},
      {"rhs", to_json(r.rhs)},
      {"overlap", r.overlap},
      {"agreed_digits", r.agreed_digits},
      {"requested_digits", r.requested_digits},
      {"terms_used", r.terms_used},
      {"tail_strategy", std::string(to_string(r.tail_strategy))},
      {"sum_outcome", std::string(to_string(r.outcome))},
      {"precision_bits", static_cast<long>(r.precision)},
      {"attempts", r.attempts},
      {"verdict", std::string(to_string(r.verdict))},
      {"note", r.note},
  };
  if (include_wall_time) j["wall_time"] = r.wall_time;
  return j;
}

Json to_json(const SuiteSummary& s) {
  Json counts = Json::object();
  for (const auto& [status, by_verdict] : s.counts) {
    Json c = Json::object();
    for (const auto& [verdict, n] : by_verdict) c[std::string(to_string(verdict))] = n;
    counts[std::string(to_string(status))] = c;
  }
  return {
      {"counts", counts},
      {"expected_failures", s.expected_failures},
      {"unexpected", s.unexpected},
      {"contract_ok", s.contract_ok},
  };
}

Json to_json(const SuiteResult& s, bool include_wall_time) {
  Json reports = Json::array();
  for (const auto& r : s.reports) reports.push_back(to_json(r, include_wall_time));
  return {{"reports", reports}, {"summary", to_json(s.summary)}};
}

Json to_json(const EntrySummary& e) {
  Json family = nullptr;
  if (e.family) family = {{"name", std::string(to_string(e.family->family))}, {"r", e.family->r}};
  return {
      {"id", e.id},
      {"equations", e.equations},
      {"status", std::string(to_string(e.status))},
      {"family", family},
      {"domain", e.domain},
      {"tail", std::string(to_string(e.tail))},
      {"lhs", e.lhs},
      {"rhs", e.rhs},
      {"notes", e.notes},
  };
}

Json catalog_json(const std::vector<EntrySummary>& entries) {
  Json a = Json::array();
  for (const auto& e : entries) a.push_back(to_json(e));
  return {{"identities", a}, {"count", entries.size()}};
}

Json to_json(const OracleReport& r) {
  Json j = {{"id", r.id}, {"N", r.N}, {"exact_compared", r.exact_compared}, {"match", r.match}};
  if (r.first_mismatch) {
    j["first_mismatch"] = {{"n", r.first_mismatch->n},
                           {"stream", r.first_mismatch->stream_value},
                           {"oracle", r.first_mismatch->oracle_value}};
  }
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace cbv
