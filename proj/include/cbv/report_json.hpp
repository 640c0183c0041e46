#pragma once

// JSON encodings of reports, suite summaries and the identity catalog.
// Keys are sorted and enclosures are decimal strings "mid ± rad".

#include <json.hpp>

#include <string>
#include <vector>

#include "cbv/registry.hpp"
#include "cbv/verifier.hpp"

namespace cbv {

using Json = nlohmann::json;

Json to_json(const Ball& b);
Json to_json(const VerificationReport& r, bool include_wall_time = true);
Json to_json(const SuiteSummary& s);
Json to_json(const SuiteResult& s, bool include_wall_time = true);
Json to_json(const EntrySummary& e);
Json catalog_json(const std::vector<EntrySummary>& entries);
Json to_json(const OracleReport& r);

/// Two-space indented text with a trailing newline.
std::string dump(const Json& j);

}  // namespace cbv
