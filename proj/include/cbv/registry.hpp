#pragma once

// Catalog of identities: the series side as a stream spec, the closed form,
// the tail strategy, the print status and an independent term oracle.

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cbv/closed_form.hpp"
#include "cbv/exact.hpp"
#include "cbv/genfunc.hpp"
#include "cbv/series.hpp"

namespace cbv {

enum class Status { AS_PRINTED_OK, AS_PRINTED_DISCREPANT, CORRECTED, PRIOR_WORK };

inline constexpr Status kAllStatuses[] = {Status::AS_PRINTED_OK, Status::AS_PRINTED_DISCREPANT,
                                          Status::CORRECTED, Status::PRIOR_WORK};

std::string_view to_string(Status s);
Status parse_status(std::string_view text);

enum class Family { FIB, LUCAS, HD_LUCAS, HD_FIB, FIB_EVEN, LUCAS_EVEN };

inline constexpr Family kAllFamilies[] = {Family::FIB,    Family::LUCAS,    Family::HD_LUCAS,
                                          Family::HD_FIB, Family::FIB_EVEN, Family::LUCAS_EVEN};

std::string_view to_string(Family f);
Family parse_family(std::string_view text);
/// Catalog reference of the general display a family instantiates.
std::string family_equation(Family f);

struct FamilyRef {
  Family family = Family::FIB;
  long r = 1;
};

/// t_n = exact + times_pi * pi, computed from scratch from the displayed term.
struct OracleTerm {
  SurdQ5 exact;
  SurdQ5 times_pi;
};

struct IdentityEntry {
  std::string id;
  std::vector<std::string> equations;  // catalog references, e.g. "34" or "T2.6"
  StreamSpec lhs;
  ClosedForm rhs;
  TailStrategy tail;
  Status status = Status::AS_PRINTED_OK;
  std::optional<FamilyRef> family;
  std::string domain;  // where the identity is instantiated, e.g. "x = 1/8"
  std::string notes;
  std::optional<int> digits;  // overrides the class default digit target
  std::string partner;        // paired as-printed / corrected entry id
  std::function<OracleTerm(long)> oracle;
};

/// Summary view for listings and the JSON catalog.
struct EntrySummary {
  std::string id;
  std::vector<std::string> equations;
  Status status;
  std::optional<FamilyRef> family;
  std::string domain;
  TailKind tail;
  std::string lhs;
  std::string rhs;
  std::string notes;
};

struct ListFilter {
  std::optional<Status> status;
  std::optional<Family> family;
};

/// Immutable after construction.
class Registry {
 public:
  static const Registry& instance();

  const std::vector<IdentityEntry>& entries() const { return entries_; }
  /// Throws UsageError for unknown ids.
  const IdentityEntry& get(std::string_view id) const;
  bool contains(std::string_view id) const;

 private:
  Registry();
  std::vector<IdentityEntry> entries_;
};

/// Deterministic order: by first catalog reference, then id.
std::vector<EntrySummary> list_identities(const ListFilter& filter = {});
EntrySummary summarize(const IdentityEntry& e);

/// Entry for a golden-ratio family at parameter r (r >= 1), using the general
/// display with the Fibonacci/Lucas values substituted exactly.
IdentityEntry instantiate_family(Family family, long r);

/// Half-argument series at x with the displayed closed form whose logarithm
/// argument is (1 - sqrt(1-4x))/2; x must be rational in (0, 1/4).
IdentityEntry hd_display_fixture(const BigRational& x);
/// Same series with the corrected logarithm argument (1 + sqrt(1-4x))/2.
IdentityEntry hd_corrected_entry(const BigRational& x);

/// Catalog references that the registry must cover.
std::vector<std::string> required_equations();
/// Union of entry references and family references.
std::vector<std::string> covered_equations();

}  // namespace cbv
