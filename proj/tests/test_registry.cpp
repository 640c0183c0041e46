#include <doctest.h>

#include <algorithm>
#include <set>

#include "cbv/error.hpp"
#include "cbv/registry.hpp"
#include "cbv/report_json.hpp"

using namespace cbv;

namespace {

const Registry& reg() { return Registry::instance(); }

std::vector<std::string> ids(const std::vector<EntrySummary>& v) {
  std::vector<std::string> out;
  for (const auto& e : v) out.push_back(e.id);
  return out;
}

SurdQ5 exact_term(const StreamSpec& s, long n) {
  ExactTermStream t(s);
  SurdQ5 v;
  for (long i = s.first_index; i <= n; ++i) v = t.next();
  return v;
}

}  // namespace

TEST_SUITE("registry") {
  TEST_CASE("catalog covers every displayed identity") {
    const auto covered = covered_equations();
    for (const std::string& eq : required_equations()) {
      CHECK_MESSAGE(std::find(covered.begin(), covered.end(), eq) != covered.end(), "missing " << eq);
    }
    CHECK(list_identities().size() >= 40);
    CHECK(required_equations().size() == 45);
  }

  TEST_CASE("ids are unique and lookups work") {
    std::set<std::string> seen;
    for (const auto& e : reg().entries()) CHECK_MESSAGE(seen.insert(e.id).second, "duplicate " << e.id);
    CHECK(reg().contains("EQ34"));
    CHECK_FALSE(reg().contains("EQ99"));
    CHECK_THROWS_AS(reg().get("EQ99"), UsageError);
  }

  TEST_CASE("every entry is complete") {
    for (const auto& e : reg().entries()) {
      CHECK_MESSAGE(!e.equations.empty(), e.id);
      CHECK_MESSAGE(!e.lhs.components.empty(), e.id);
      CHECK_MESSAGE(static_cast<bool>(e.oracle), e.id);
      CHECK_MESSAGE(e.rhs.size() >= 1, e.id);
    }
  }

  TEST_CASE("status filter") {
    const auto d = ids(list_identities({Status::AS_PRINTED_DISCREPANT, std::nullopt}));
    CHECK(d == std::vector<std::string>{"EQ17_AS_PRINTED", "EQ37_AS_PRINTED", "EQ38_AS_PRINTED"});
    const auto prior = ids(list_identities({Status::PRIOR_WORK, std::nullopt}));
    CHECK(prior == std::vector<std::string>{"EQ1", "EQ2", "EQ3"});
  }

  TEST_CASE("family filter") {
    CHECK(ids(list_identities({std::nullopt, Family::FIB})) == std::vector<std::string>{"EQ6", "EQ7", "EQ8"});
    CHECK(ids(list_identities({std::nullopt, Family::LUCAS})) == std::vector<std::string>{"EQ11", "EQ12", "EQ13"});
    CHECK(ids(list_identities({std::nullopt, Family::HD_LUCAS})) == std::vector<std::string>{"EQ18", "EQ19", "EQ20"});
    CHECK(ids(list_identities({std::nullopt, Family::HD_FIB})) == std::vector<std::string>{"EQ21", "EQ22", "EQ23"});
    CHECK(list_identities({Status::CORRECTED, Family::FIB}).empty());
  }

  TEST_CASE("listing order is deterministic") {
    const auto a = ids(list_identities());
    CHECK(a == ids(list_identities()));
    CHECK(a.front() == "EQ1");
    CHECK(a.back() == "THM27");
  }

  TEST_CASE("discrepant entries are paired with corrected ones") {
    for (const auto& e : reg().entries()) {
      if (e.status != Status::AS_PRINTED_DISCREPANT) continue;
      REQUIRE_MESSAGE(!e.partner.empty(), e.id);
      const IdentityEntry& p = reg().get(e.partner);
      CHECK(p.status == Status::CORRECTED);
      CHECK(p.partner == e.id);
      CHECK(p.equations == e.equations);
      for (long n = 1; n <= 20; ++n) REQUIRE(exact_term(p.lhs, n) == exact_term(e.lhs, n));
    }
  }

  TEST_CASE("printed and corrected closed forms differ minimally") {
    CHECK(structural_difference(reg().get("EQ17").rhs, reg().get("EQ17_AS_PRINTED").rhs) == 1);
    CHECK(structural_difference(reg().get("EQ37").rhs, reg().get("EQ37_AS_PRINTED").rhs) == 1);
    CHECK(structural_difference(reg().get("EQ38").rhs, reg().get("EQ38_AS_PRINTED").rhs) == 2);
  }

  TEST_CASE("printed closed forms of the fixtures") {
    const Precision p = 128;
    CHECK(overlaps(reg().get("EQ37_AS_PRINTED").rhs.eval(p), Ball::from_decimal("2.71684", "0.00001", p)));
    CHECK(overlaps(reg().get("EQ38_AS_PRINTED").rhs.eval(p), Ball::from_decimal("2.72126", "0.00001", p)));
  }

  TEST_CASE("family instances reproduce the hand transcriptions") {
    const Precision p = precision_for_digits(50);
    for (const auto& e : reg().entries()) {
      if (!e.family) continue;
      const IdentityEntry inst = instantiate_family(e.family->family, e.family->r);
      REQUIRE_MESSAGE(agreed_digits(inst.rhs.eval(p), e.rhs.eval(p)) >= 50, e.id);
      for (long n = 1; n <= 25; ++n) REQUIRE_MESSAGE(exact_term(inst.lhs, n) == exact_term(e.lhs, n), e.id);
    }
  }

  TEST_CASE("family instance examples") {
    const IdentityEntry l1 = instantiate_family(Family::LUCAS, 1);
    CHECK(l1.id == "LUCAS_R1");
    CHECK(l1.family->r == 1);
    CHECK(l1.tail.kind == TailKind::GeometricRatio);
    // (2 sqrt(a)/sqrt(a-1)) ln((sqrt(a) + sqrt(a-1)) / (2 sqrt(a-1)))
    using namespace expr;
    const ClosedForm a = alpha();
    const ClosedForm eq11 = lit(2) * sqrt(a) / sqrt(a - lit(1)) *
                            ln((sqrt(a) + sqrt(a - lit(1))) / (lit(2) * sqrt(a - lit(1))));
    CHECK(agreed_digits(l1.rhs.eval(300), eq11.eval(300)) >= 80);
    CHECK_THROWS_AS(instantiate_family(Family::FIB, 0), UsageError);
    for (Family f : kAllFamilies) CHECK(parse_family(to_string(f)) == f);
    for (Status s : kAllStatuses) CHECK(parse_status(to_string(s)) == s);
  }

  TEST_CASE("even aliases match the general families") {
    const Precision p = 300;
    CHECK(agreed_digits(reg().get("EQ9").rhs.eval(p), reg().get("EQ7").rhs.eval(p)) >= 80);
    CHECK(agreed_digits(reg().get("EQ14").rhs.eval(p), reg().get("EQ12").rhs.eval(p)) >= 80);
    for (long r = 1; r <= 4; ++r) {
      CHECK(agreed_digits(instantiate_family(Family::FIB_EVEN, r).rhs.eval(p),
                          instantiate_family(Family::FIB, 2 * r).rhs.eval(p)) >= 80);
      CHECK(agreed_digits(instantiate_family(Family::LUCAS_EVEN, r).rhs.eval(p),
                          instantiate_family(Family::LUCAS, 2 * r).rhs.eval(p)) >= 80);
    }
  }

  TEST_CASE("half-argument builders") {
    const BigRational x = make_rational(1, 7);
    const IdentityEntry printed = hd_display_fixture(x);
    const IdentityEntry corrected = hd_corrected_entry(x);
    CHECK(printed.status == Status::AS_PRINTED_DISCREPANT);
    CHECK(corrected.status == Status::CORRECTED);
    CHECK(structural_difference(printed.rhs, corrected.rhs) == 1);
    CHECK_THROWS_AS(hd_corrected_entry(make_rational(1, 4)), DomainError);
  }

  TEST_CASE("catalog json") {
    const Json j = catalog_json(list_identities());
    CHECK(j["count"] == reg().entries().size());
    CHECK(j["identities"].size() == reg().entries().size());
    const Json& first = j["identities"][0];
    for (const char* key : {"id", "equations", "status", "domain", "tail", "lhs", "rhs"}) {
      CHECK_MESSAGE(first.contains(key), key);
    }
  }
}
