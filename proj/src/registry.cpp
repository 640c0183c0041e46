#include "cbv/registry.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "cbv/error.hpp"

namespace cbv {

using namespace expr;

namespace {

// ---- stream building ----------------------------------------------------

Component comp(int s, std::vector<LinearFactor> factors, HarmonicKind h = HarmonicKind::None,
               BigRational coeff = 1) {
  Component c;
  c.s = s;
  c.w.factors = std::move(factors);
  c.h = h;
  c.coeff = std::move(coeff);
  return c;
}

StreamSpec stream(std::string label, SurdQ5 base, std::vector<Component> comps, SignPattern sign = {}) {
  StreamSpec s;
  s.label = std::move(label);
  s.base = std::move(base);
  s.sign = sign;
  s.components = std::move(comps);
  return s;
}

// ---- oracle helpers -----------------------------------------------------

BigRational binom2(long n) { return BigRational(central_binomial(n)); }
BigRational cat(long n) { return BigRational(catalan_number(n)); }
BigRational H(long n) { return harmonic(n); }

BigRational qpow(const BigRational& b, long n) {
  BigRational r = 1;
  for (long i = 0; i < n; ++i) r *= b;
  return r;
}

BigRational inv_pow(long b, long n) { return 1 / qpow(BigRational(b), n); }

OracleTerm exact_term(SurdQ5 v) { return {std::move(v), SurdQ5(0)}; }
OracleTerm exact_term(const BigRational& v) { return {SurdQ5(v), SurdQ5(0)}; }

int sign_pow(long e) { return e % 2 == 0 ? 1 : -1; }

// ---- closed-form builders at a point x ----------------------------------

ClosedForm s_of(const ClosedForm& x) { return sqrt(lit(1) - lit(4) * x); }

ClosedForm m_form(const ClosedForm& x) {
  ClosedForm s = s_of(x);
  return lit(2) / s * ln((lit(1) + s) / (lit(2) * s));
}

ClosedForm hd_form(const ClosedForm& x, bool printed) {
  ClosedForm s = s_of(x);
  ClosedForm inner = printed ? lit(1) - s : lit(1) + s;
  return -(lit(1) / s * ln(inner / lit(2)));
}

ClosedForm h2n_form(const ClosedForm& x) {
  ClosedForm s = s_of(x);
  return lit(1) / s * (ln((lit(1) + s) / lit(2)) - lit(2) * ln(s));
}

ClosedForm cat_hd_form(const ClosedForm& x) {
  ClosedForm s = s_of(x);
  return lit(1) / (lit(2) * x) * ((lit(1) - s) + (lit(1) + s) * ln((lit(1) + s) / lit(2)));
}

ClosedForm cat_h2n_form(const ClosedForm& x) {
  ClosedForm s = s_of(x);
  return lit(1) / (lit(2) * x) *
         ((lit(1) - s) - (lit(1) + s) * ln(lit(1) + s) + ln2() + s * ln(lit(2) - lit(8) * x));
}

ClosedForm arcsin_forms(GFName name, const ClosedForm& x) {
  ClosedForm r = sqrt(lit(1) - pow(x, 2));
  ClosedForm as = arcsin(x);
  switch (name) {
    case GFName::EQ28: return lit(1, 8) * (r + lit(2) * x * as - as / x);
    case GFName::EQ29:
      return ((lit(8) * pow(x, 4) - lit(8) * pow(x, 2) + lit(3)) * as + r * (lit(6) * pow(x, 3) - lit(3) * x)) /
             lit(128);
    default: return lit(1) / (lit(8) * pow(x, 2)) * ((lit(2) * pow(x, 2) + lit(1)) * as - x * r);
  }
}

// Generic golden-ratio closed forms in the parameter A = 1/(4x).
ClosedForm m_family_form(const ClosedForm& A) {
  ClosedForm d = sqrt(A - lit(1));
  return lit(2) * sqrt(A) / d * ln((sqrt(A) + d) / (lit(2) * d));
}

ClosedForm hd_family_form(const ClosedForm& A) {
  ClosedForm d = sqrt(A - lit(1));
  return -(sqrt(A) / d * ln((sqrt(A) + d) / (lit(2) * sqrt(A))));
}

// Displays for even parameters: alpha^r sqrt(K) in place of sqrt(alpha^2r K).
ClosedForm even_m_form(long r, const ClosedForm& K) {
  ClosedForm ar = pow(alpha(), r);
  ClosedForm d = sqrt(pow(alpha(), 2 * r) * K - lit(1));
  return lit(2) * ar * sqrt(K) / d * ln((ar * sqrt(K) + d) / (lit(2) * d));
}

// ---- entries ------------------------------------------------------------

struct Spec {
  std::string id;
  std::vector<std::string> eqs;
  StreamSpec lhs;
  ClosedForm rhs;
  TailStrategy tail;
  Status status = Status::AS_PRINTED_OK;
  std::string domain = "n >= 1";
  std::string notes;
  std::optional<int> digits;
  std::function<OracleTerm(long)> oracle;
};

IdentityEntry make_entry(Spec s) {
  IdentityEntry e;
  e.id = std::move(s.id);
  e.equations = std::move(s.eqs);
  e.lhs = std::move(s.lhs);
  if (e.lhs.label.empty()) e.lhs.label = e.id;
  e.rhs = std::move(s.rhs);
  e.tail = s.tail;
  e.status = s.status;
  e.domain = std::move(s.domain);
  e.notes = std::move(s.notes);
  e.digits = s.digits;
  e.oracle = std::move(s.oracle);
  return e;
}

TailStrategy pseries(double C, double p, long n0, int sign, double a = 0, double b = 1) {
  PSeriesBound pb;
  pb.C = C;
  pb.p = p;
  pb.n0 = n0;
  pb.log_slope = a;
  pb.log_offset = b;
  pb.tail_sign = sign;
  return TailStrategy::p_series(pb);
}

// Series at a rational x through a generating function, oracle from the
// coefficient definition.
std::function<OracleTerm(long)> gf_oracle(GFName name, BigRational x) {
  return [name, x](long n) -> OracleTerm {
    switch (name) {
      case GFName::M: return exact_term(binom2(n) * H(n) * qpow(x, n));
      case GFName::HD: return exact_term(binom2(n) * (H(2 * n) - H(n)) * qpow(x, n));
      case GFName::H2N: return exact_term(binom2(n) * H(2 * n) * qpow(x, n));
      case GFName::CAT_HD: return exact_term(cat(n) * (H(2 * n) - H(n)) * qpow(x, n));
      case GFName::CAT_H2N: return exact_term(cat(n) * H(2 * n) * qpow(x, n));
      case GFName::CAT_HALF: return exact_term(cat(n) * (H(2 * n) - H(n) / 2) * qpow(x, n));
      case GFName::EQ28:
        return exact_term(BigRational(n) * qpow(x, 2 * n) * inv_pow(4, n) * binom2(n) /
                          BigRational((2 * n - 1) * (2 * n - 1) * (2 * n + 1)));
      case GFName::EQ29:
        return exact_term(BigRational(n) * qpow(x, 2 * n + 3) * inv_pow(4, n) * binom2(n) /
                          BigRational((2 * n - 1) * (2 * n - 1) * (2 * n + 1) * (2 * n + 3)));
      case GFName::EQ30:
        return exact_term(BigRational(2 * n * n) * qpow(x, 2 * n) / x * inv_pow(4, n) * binom2(n) /
                          BigRational((2 * n - 1) * (2 * n - 1) * (2 * n + 1)));
      case GFName::SHIFTED: break;
    }
    throw UsageError("no oracle for this generating function");
  };
}

IdentityEntry gf_entry(std::string id, std::string eq, GFName name, const BigRational& x, ClosedForm rhs,
                       Status status = Status::AS_PRINTED_OK) {
  Spec s;
  s.id = std::move(id);
  s.eqs = {std::move(eq)};
  s.lhs = gf_series_stream(GF{name}, SurdQ5(x));
  s.lhs.label = s.id;
  s.rhs = std::move(rhs);
  s.tail = TailStrategy::geometric();
  s.status = status;
  s.domain = "x = " + x.get_str();
  s.oracle = gf_oracle(name, x);
  return make_entry(std::move(s));
}

// Family parameter A and its display-independent pieces.
struct FamilyData {
  FamilyBase base;
  long param;  // index substituted into F or L
  bool hd;     // H_2n - H_n instead of H_n
};

FamilyData family_data(Family f, long r) {
  switch (f) {
    case Family::FIB: return {FamilyBase::FIB, r, false};
    case Family::LUCAS: return {FamilyBase::LUCAS, r, false};
    case Family::HD_LUCAS: return {FamilyBase::LUCAS, r, true};
    case Family::HD_FIB: return {FamilyBase::FIB, r, true};
    case Family::FIB_EVEN: return {FamilyBase::FIB, 2 * r, false};
    case Family::LUCAS_EVEN: return {FamilyBase::LUCAS, 2 * r, false};
  }
  throw UsageError("unknown family");
}

ClosedForm family_rhs(Family f, long r, const SurdQ5& A) {
  switch (f) {
    case Family::FIB:
    case Family::LUCAS: return m_family_form(surd(A));
    case Family::HD_LUCAS:
    case Family::HD_FIB: return hd_family_form(surd(A));
    case Family::FIB_EVEN: return even_m_form(r, lit(BigRational(fib(2 * r))) * sqrt5());
    case Family::LUCAS_EVEN: return even_m_form(r, lit(BigRational(lucas(2 * r))));
  }
  throw UsageError("unknown family");
}

// ---- hand transcriptions of the displayed instances ---------------------

ClosedForm a_sqrt5() { return alpha() * sqrt5(); }
ClosedForm fourth_root5() { return sqrt(sqrt5()); }

ClosedForm display_rhs(const std::string& id) {
  const ClosedForm a3 = pow(alpha(), 3);
  if (id == "EQ6") {
    ClosedForm A = a_sqrt5();
    ClosedForm d = sqrt(A - lit(1));
    return lit(2) * sqrt(A) / d * ln((sqrt(A) + d) / (lit(2) * d));
  }
  if (id == "EQ7") {
    ClosedForm d = sqrt(pow(alpha(), 2) * sqrt5() - lit(1));
    ClosedForm top = alpha() * fourth_root5();
    return lit(2) * top / d * ln((top + d) / (lit(2) * d));
  }
  if (id == "EQ8") {
    ClosedForm d = sqrt(lit(2) * a3 * sqrt5() - lit(1));
    return lit(2) * sqrt(lit(2)) * sqrt(a3 * sqrt5()) / d *
           ln((sqrt(lit(2) * a3 * sqrt5()) + d) / (lit(2) * d));
  }
  if (id == "EQ11") {
    ClosedForm d = sqrt(alpha() - lit(1));
    return lit(2) * sqrt(alpha()) / d * ln((sqrt(alpha()) + d) / (lit(2) * d));
  }
  if (id == "EQ12") {
    ClosedForm d = sqrt(lit(3) * pow(alpha(), 2) - lit(1));
    ClosedForm top = alpha() * sqrt(lit(3));
    return lit(2) * top / d * ln((top + d) / (lit(2) * d));
  }
  if (id == "EQ13") {
    ClosedForm d = sqrt(lit(4) * a3 - lit(1));
    return lit(4) * sqrt(a3) / d * ln((lit(2) * sqrt(a3) + d) / (lit(2) * d));
  }
  if (id == "EQ18") {
    ClosedForm d = sqrt(alpha() - lit(1));
    return -(sqrt(alpha()) / d * ln((sqrt(alpha()) + d) / (lit(2) * sqrt(alpha()))));
  }
  if (id == "EQ19") {
    ClosedForm d = sqrt(lit(3) * pow(alpha(), 2) - lit(1));
    ClosedForm top = alpha() * sqrt(lit(3));
    return -(top / d * ln((top + d) / (lit(2) * top)));
  }
  if (id == "EQ20") {
    ClosedForm d = sqrt(lit(4) * a3 - lit(1));
    return -(lit(2) * sqrt(a3) / d * ln((lit(2) * sqrt(a3) + d) / (lit(4) * sqrt(a3))));
  }
  if (id == "EQ21") {
    ClosedForm A = a_sqrt5();
    ClosedForm d = sqrt(A - lit(1));
    return -(sqrt(A) / d * ln((sqrt(A) + d) / (lit(2) * sqrt(A))));
  }
  if (id == "EQ22") {
    ClosedForm d = sqrt(pow(alpha(), 2) * sqrt5() - lit(1));
    ClosedForm top = alpha() * fourth_root5();
    return -(top / d * ln((top + d) / (lit(2) * top)));
  }
  if (id == "EQ23") {
    ClosedForm d = sqrt(a3 * lit(2) * sqrt5() - lit(1));
    ClosedForm top = sqrt(lit(2)) * sqrt(a3 * sqrt5());
    return -(top / d * ln((top + d) / (lit(2) * top)));
  }
  throw UsageError("no displayed instance " + id);
}

struct Instance {
  const char* id;
  const char* eq;
  Family family;
  long r;
};

constexpr Instance kInstances[] = {
    {"EQ6", "6", Family::FIB, 1},        {"EQ7", "7", Family::FIB, 2},
    {"EQ8", "8", Family::FIB, 3},        {"EQ11", "11", Family::LUCAS, 1},
    {"EQ12", "12", Family::LUCAS, 2},    {"EQ13", "13", Family::LUCAS, 3},
    {"EQ18", "18", Family::HD_LUCAS, 1}, {"EQ19", "19", Family::HD_LUCAS, 2},
    {"EQ20", "20", Family::HD_LUCAS, 3}, {"EQ21", "21", Family::HD_FIB, 1},
    {"EQ22", "22", Family::HD_FIB, 2},   {"EQ23", "23", Family::HD_FIB, 3},
};

// ---- the catalog --------------------------------------------------------

std::vector<IdentityEntry> build_catalog() {
  std::vector<IdentityEntry> out;
  const SurdQ5 half(make_rational(1, 2)), quarter(make_rational(1, 4));

  // Telescoping tails: base 1 with rational weights of decay order >= 1.
  {
    Spec s;
    s.id = "EQ1";
    s.eqs = {"1"};
    s.lhs = stream("", 1, {comp(1, {{2, 1, -1}}, HarmonicKind::D)});
    s.rhs = pi() * ln2() - lit(2) * catalan();
    s.tail = TailStrategy::telescoping();
    s.status = Status::PRIOR_WORK;
    s.digits = 15;
    s.oracle = [](long n) { return exact_term(binom2(n) * (H(2 * n) - H(n)) * inv_pow(4, n) / (2 * n + 1)); };
    out.push_back(make_entry(std::move(s)));
  }
  {
    Spec s;
    s.id = "EQ2";
    s.eqs = {"2"};
    s.lhs = stream("", 1, {comp(1, {{1, 0, -1}, {2, 1, -1}}, HarmonicKind::F)});
    s.rhs = lit(2) + lit(2) * ln2() + pow(ln2(), 2) + lit(4) * catalan() - pi() * (lit(1) + lit(2) * ln2());
    s.tail = TailStrategy::telescoping();
    s.status = Status::PRIOR_WORK;
    s.digits = 15;
    s.notes = "H_(2n-1) is carried as H_2n - 1/(2n)";
    s.oracle = [](long n) {
      return exact_term(binom2(n) * (H(2 * n - 1) - H(n)) * inv_pow(4, n) / BigRational(n * (2 * n + 1)));
    };
    out.push_back(make_entry(std::move(s)));
  }
  {
    Spec s;
    s.id = "EQ3";
    s.eqs = {"3"};
    s.lhs = stream("", 1, {comp(1, {{1, 1, -1}, {2, 3, -1}}, HarmonicKind::H)});
    s.rhs = lit(2) + lit(4) * ln2() - lit(4) * catalan() - pi() + pi() * ln2();
    s.tail = TailStrategy::telescoping();
    s.status = Status::PRIOR_WORK;
    s.digits = 15;
    s.oracle = [](long n) { return exact_term(cat(n) * H(n) * inv_pow(4, n) / (2 * n + 3)); };
    out.push_back(make_entry(std::move(s)));
  }

  out.push_back(gf_entry("EQ4", "4", GFName::M, make_rational(1, 8), m_form(lit(1, 8))));

  for (const auto& inst : kInstances) {
    IdentityEntry e = instantiate_family(inst.family, inst.r);
    e.id = inst.id;
    e.lhs.label = inst.id;
    e.equations = {inst.eq};
    e.rhs = display_rhs(inst.id);
    e.status = Status::AS_PRINTED_OK;
    out.push_back(std::move(e));
  }
  for (auto [fam, id, eq] : {std::tuple{Family::FIB_EVEN, "EQ9", "9"}, std::tuple{Family::LUCAS_EVEN, "EQ14", "14"}}) {
    IdentityEntry e = instantiate_family(fam, 1);
    e.id = id;
    e.lhs.label = id;
    e.equations = {eq};
    out.push_back(std::move(e));
  }
  {
    // r = 0 of the Lucas half-argument family: A = L_0 = 2, x = 1/8.
    IdentityEntry e = instantiate_family(Family::HD_LUCAS, 1);
    e.id = "EQ15_R0";
    e.lhs = gf_series_stream(GF{GFName::HD}, SurdQ5(make_rational(1, 8)));
    e.lhs.label = e.id;
    e.equations = {"15"};
    e.family.reset();
    e.rhs = hd_family_form(lit(2));
    e.status = Status::CORRECTED;
    e.domain = "r = 0 (x = 1/8)";
    e.notes = "parameter r = 0 of the Lucas half-argument family";
    e.oracle = gf_oracle(GFName::HD, make_rational(1, 8));
    out.push_back(std::move(e));
  }
  {
    const BigRational x = make_rational(1, 10);
    out.push_back(hd_corrected_entry(x));
    out.push_back(hd_display_fixture(x));
  }
  {
    // t = pi/3: sin^2 t = 3/4, cos t = 1/2.
    Spec s;
    s.id = "EQ24";
    s.eqs = {"24"};
    s.lhs = stream("", SurdQ5(make_rational(3, 4)), {comp(1, {{1, 1, -1}}, HarmonicKind::E)});
    s.rhs = lit(2) / lit(3, 4) * (lit(1) - lit(1, 2) + lit(1, 2) * ln(lit(1, 2)));
    s.tail = TailStrategy::geometric();
    s.domain = "t = pi/3";
    s.oracle = [](long n) {
      return exact_term(cat(n) * (H(2 * n) - H(n) / 2) * inv_pow(4, n) * qpow(make_rational(3, 4), n));
    };
    out.push_back(make_entry(std::move(s)));
  }
  {
    const BigRational x = make_rational(3, 16);
    out.push_back(gf_entry("EQ25", "25", GFName::CAT_HD, x, cat_hd_form(lit(x))));
    out.push_back(gf_entry("EQ26", "26", GFName::H2N, x, h2n_form(lit(x))));
    out.push_back(gf_entry("EQ27", "27", GFName::CAT_H2N, x, cat_h2n_form(lit(x))));
  }
  {
    const BigRational x = make_rational(1, 2);
    out.push_back(gf_entry("EQ28", "28", GFName::EQ28, x, arcsin_forms(GFName::EQ28, lit(x))));
    out.push_back(gf_entry("EQ29", "29", GFName::EQ29, x, arcsin_forms(GFName::EQ29, lit(x))));
    out.push_back(gf_entry("EQ30", "30", GFName::EQ30, x, arcsin_forms(GFName::EQ30, lit(x))));
  }

  // Catalan-weighted half-argument series at x = -1/8, 1/16, -1/16.
  const std::vector<LinearFactor> catalan_w = {{1, 1, -1}};
  {
    Spec s;
    s.id = "EQ31";
    s.eqs = {"31"};
    s.lhs = stream("", half, {comp(1, catalan_w, HarmonicKind::D)}, SignPattern{1, 0});
    ClosedForm r2 = sqrt(lit(2)), r3 = sqrt(lit(3));
    s.rhs = -(lit(4) / r2) * ((r2 - r3) + (r2 + r3) * ln((r2 + r3) / (lit(2) * r2)));
    s.tail = TailStrategy::geometric();
    s.domain = "x = -1/8";
    s.oracle = [](long n) { return exact_term(sign_pow(n) * cat(n) * inv_pow(8, n) * (H(2 * n) - H(n))); };
    out.push_back(make_entry(std::move(s)));
  }
  {
    Spec s;
    s.id = "EQ32";
    s.eqs = {"32"};
    s.lhs = stream("", quarter, {comp(1, catalan_w, HarmonicKind::D)});
    ClosedForm r3 = sqrt(lit(3));
    s.rhs = lit(4) * ((lit(2) - r3) + (lit(2) + r3) * ln((lit(2) + r3) / lit(4)));
    s.tail = TailStrategy::geometric();
    s.domain = "x = 1/16";
    s.oracle = [](long n) { return exact_term(cat(n) * inv_pow(16, n) * (H(2 * n) - H(n))); };
    out.push_back(make_entry(std::move(s)));
  }
  {
    Spec s;
    s.id = "EQ33";
    s.eqs = {"33"};
    s.lhs = stream("", quarter, {comp(1, catalan_w, HarmonicKind::D)}, SignPattern{1, 0});
    ClosedForm r5 = sqrt(lit(5));
    s.rhs = -(lit(4) * ((lit(2) - r5) + (lit(2) + r5) * ln((lit(2) + r5) / lit(4))));
    s.tail = TailStrategy::geometric();
    s.domain = "x = -1/16";
    s.oracle = [](long n) { return exact_term(sign_pow(n) * cat(n) * inv_pow(16, n) * (H(2 * n) - H(n))); };
    out.push_back(make_entry(std::move(s)));
  }

  // Arcsin series at x = +-1: terms decay like n^-3.5, so the tail comes from
  // the asymptotic expansion of c_n times the rational weight.
  const std::vector<LinearFactor> w34 = {{1, 0, 1}, {2, -1, -2}, {2, 1, -1}, {2, 3, -1}};
  auto eq34_oracle = [](long n) {
    return exact_term(BigRational(n) * inv_pow(4, n) * binom2(n) /
                      BigRational((2 * n - 1) * (2 * n - 1) * (2 * n + 1) * (2 * n + 3)));
  };
  {
    Spec s;
    s.id = "EQ34";
    s.eqs = {"34"};
    s.lhs = stream("", 1, {comp(1, w34)});
    s.rhs = lit(3) * pi() / lit(256);
    s.tail = TailStrategy::telescoping();
    s.domain = "x = 1";
    s.oracle = eq34_oracle;
    out.push_back(make_entry(std::move(s)));
  }
  {
    Spec s;
    s.id = "EQ35";
    s.eqs = {"35"};
    s.lhs = stream("", 1, {comp(1, w34)}, SignPattern{2, 3});
    s.rhs = lit(-3) * pi() / lit(256);
    s.tail = TailStrategy::telescoping();
    s.domain = "x = -1";
    s.notes = "sign factor (-1)^(2n+3) kept literally";
    s.oracle = [eq34_oracle](long n) { return exact_term(-eq34_oracle(n).exact); };
    out.push_back(make_entry(std::move(s)));
  }
  {
    Spec s;
    s.id = "EQ36";
    s.eqs = {"36"};
    s.lhs = stream("", 1, {comp(1, {{1, 0, 2}, {2, -1, -2}, {2, 1, -1}})});
    s.rhs = lit(3) * pi() / lit(32);
    s.tail = TailStrategy::telescoping();
    s.domain = "x = 1";
    s.oracle = [](long n) {
      return exact_term(BigRational(n * n) * inv_pow(4, n) * binom2(n) /
                        BigRational((2 * n - 1) * (2 * n - 1) * (2 * n + 1)));
    };
    out.push_back(make_entry(std::move(s)));
  }

  // Half-argument series at x = 1/8 and 1/16, as printed and corrected.
  {
    auto lhs = [](const SurdQ5& base) { return stream("", base, {comp(1, {}, HarmonicKind::D)}); };
    auto oracle = [](long b) {
      return [b](long n) { return exact_term(binom2(n) * inv_pow(b, n) * (H(2 * n) - H(n))); };
    };
    ClosedForm r2 = sqrt(lit(2)), r3 = sqrt(lit(3));

    Spec c37;
    c37.id = "EQ37";
    c37.eqs = {"37"};
    c37.lhs = lhs(half);
    c37.rhs = -(r2 * ln((r2 + lit(1)) / (lit(2) * r2)));
    c37.tail = TailStrategy::geometric();
    c37.status = Status::CORRECTED;
    c37.domain = "x = 1/8";
    c37.notes = "logarithm numerator sqrt(2)+1";
    c37.oracle = oracle(8);
    Spec p37 = c37;
    p37.id = "EQ37_AS_PRINTED";
    p37.rhs = -(r2 * ln((r2 - lit(1)) / (lit(2) * r2)));
    p37.status = Status::AS_PRINTED_DISCREPANT;
    p37.notes = "logarithm numerator sqrt(2)-1 as displayed";

    Spec c38;
    c38.id = "EQ38";
    c38.eqs = {"38"};
    c38.lhs = lhs(quarter);
    c38.rhs = -(lit(2) / r3 * ln((lit(2) + r3) / lit(4)));
    c38.tail = TailStrategy::geometric();
    c38.status = Status::CORRECTED;
    c38.domain = "x = 1/16";
    c38.notes = "logarithm argument (2+sqrt(3))/4";
    c38.oracle = oracle(16);
    Spec p38 = c38;
    p38.id = "EQ38_AS_PRINTED";
    p38.rhs = -(lit(2) / r3 * ln((lit(2) - r3) / (lit(2) * r2)));
    p38.status = Status::AS_PRINTED_DISCREPANT;
    p38.notes = "logarithm argument (2-sqrt(3))/(2 sqrt(2)) as displayed";

    for (Spec* s : {&c37, &p37, &c38, &p38}) {
      IdentityEntry e = make_entry(*s);
      e.partner = s->status == Status::CORRECTED ? s->id + "_AS_PRINTED" : s->id.substr(0, 4);
      out.push_back(std::move(e));
    }
  }
  {
    Spec s;
    s.id = "EQ39";
    s.eqs = {"39"};
    s.lhs = stream("", half, {comp(1, catalan_w, HarmonicKind::E)});
    ClosedForm r2 = sqrt(lit(2));
    s.rhs = lit(4) * (lit(1) - lit(1) / r2 - ln2() / (lit(2) * r2));
    s.tail = TailStrategy::geometric();
    s.domain = "x = 1/8";
    s.oracle = [](long n) { return exact_term(cat(n) * inv_pow(8, n) * (H(2 * n) - H(n) / 2)); };
    out.push_back(make_entry(std::move(s)));
  }
  {
    Spec s;
    s.id = "EQ40";
    s.eqs = {"40"};
    s.lhs = stream("", quarter, {comp(1, catalan_w, HarmonicKind::E)});
    ClosedForm h3 = sqrt(lit(3)) / lit(2);
    s.rhs = lit(8) * (lit(1) - h3 + h3 * ln(h3));
    s.tail = TailStrategy::geometric();
    s.domain = "x = 1/16";
    s.oracle = [](long n) { return exact_term(cat(n) * inv_pow(16, n) * (H(2 * n) - H(n) / 2)); };
    out.push_back(make_entry(std::move(s)));
  }

  // ---- constant-valued series ----
  {
    // c_n/((n+1)(2n+1)) (H_2n - H_n/2) (pi/2 - W_n), W_n = (2n)!!/(2n+1)!!
    Spec s;
    s.id = "THM24";
    s.eqs = {"T2.4"};
    Component a = comp(1, {{1, 1, -1}, {2, 1, -1}}, HarmonicKind::E, make_rational(1, 2));
    a.constant = ConstantName::Pi;
    Component b = comp(1, {{1, 1, -1}, {2, 1, -1}}, HarmonicKind::E, -1);
    b.wallis = true;
    s.lhs = stream("", 1, {a, b});
    s.rhs = lit(2) * ln2() + lit(7, 8) * zeta3() +
            pi() / lit(12) * (lit(-12) + pi() * (lit(-1) + ln(lit(8))));
    s.tail = TailStrategy::telescoping();
    s.digits = 8;
    s.oracle = [](long n) {
      BigRational k = cat(n) * (H(2 * n) - H(n) / 2) * inv_pow(4, n) / (2 * n + 1);
      BigRational w = BigRational(double_factorial(2 * n)) / BigRational(double_factorial(2 * n + 1));
      return OracleTerm{SurdQ5(-k * w), SurdQ5(k / 2)};
    };
    out.push_back(make_entry(std::move(s)));
  }
  {
    // 2 c_n^2 (2n+1)/(n+1)^2 (H_2n - H_n) <= (1/(pi n)) (4/n) ln 2 = 0.88254 / n^2
    Spec s;
    s.id = "THM25A";
    s.eqs = {"T2.5a"};
    s.lhs = stream("", 1, {comp(2, {{2, 1, 1}, {1, 1, -2}}, HarmonicKind::D, 2)});
    s.rhs = lit(16) / pi() * psi();
    s.tail = pseries(0.8826, 2, 1, +1);
    s.oracle = [](long n) {
      return exact_term(cat(n) * (H(2 * n) - H(n)) * inv_pow(16, n) * binom2(n + 1));
    };
    out.push_back(make_entry(std::move(s)));
  }
  {
    // c_n^2/(n+1) H_2n <= (ln n + ln 2 + gamma + 1/(4n)) / (pi n^2) <= (1/pi)(ln n + 1.2860)/n^2 for n >= 16
    Spec s;
    s.id = "THM25B";
    s.eqs = {"T2.5b"};
    s.lhs = stream("", 1, {comp(2, {{1, 1, -1}}, HarmonicKind::H2N)});
    s.rhs = lit(2) / pi() * psi_star();
    s.tail = pseries(1.0 / 3.14159, 2, 16, +1, 1.0, 1.2860);
    s.oracle = [](long n) { return exact_term(cat(n) * H(2 * n) * inv_pow(16, n) * binom2(n)); };
    out.push_back(make_entry(std::move(s)));
  }
  {
    // 512 n(n+1)/(3 (2n-1)^2 (2n+1)^2 (2n+3)^2) <= (8/3)/n^4 asymptotically; 3.02 leaves slack
    Spec s;
    s.id = "THM26";
    s.eqs = {"T2.6"};
    s.lhs = stream("", 1,
                   {comp(0, {{1, 0, 1}, {1, 1, 1}, {2, -1, -2}, {2, 1, -2}, {2, 3, -2}}, HarmonicKind::None,
                         make_rational(512, 3))});
    s.rhs = zeta2();
    s.tail = pseries(3.02, 4, 16, +1);
    s.notes = "right side is the constant zeta(2), itself checked against pi^2/6";
    s.oracle = [](long n) {
      BigRational t = BigRational(1024 * n) /
                      BigRational(3 * (2 * n - 1) * (2 * n - 1) * (2 * n + 1) * (2 * n + 3) * (2 * n + 3));
      return exact_term(t * binom2(n) / binom2(n + 1));
    };
    out.push_back(make_entry(std::move(s)));
  }
  {
    // c_n^2 n^2/((2n-1)^2 (2n+1)) <= n^3/(pi n^2 (2n-1)^2 (2n+1)) <= 0.0424/n^2 for n >= 16
    Spec s;
    s.id = "THM27";
    s.eqs = {"T2.7"};
    s.lhs = stream("", 1, {comp(2, {{1, 0, 2}, {2, -1, -2}, {2, 1, -1}})});
    s.rhs = catalan() / (lit(4) * pi()) + lit(1) / (lit(8) * pi());
    s.tail = pseries(0.0424, 2, 16, +1);
    s.oracle = [](long n) {
      BigRational b = binom2(n);
      return exact_term(BigRational(n * n) * b * b * inv_pow(16, n) /
                        BigRational((2 * n - 1) * (2 * n - 1) * (2 * n + 1)));
    };
    out.push_back(make_entry(std::move(s)));
  }
  return out;
}

int ref_order(const std::string& ref) {
  if (!ref.empty() && ref[0] == 'T') return 1000;
  return std::stoi(ref);
}

}  // namespace

std::string_view to_string(Status s) {
  switch (s) {
    case Status::AS_PRINTED_OK: return "AS_PRINTED_OK";
    case Status::AS_PRINTED_DISCREPANT: return "AS_PRINTED_DISCREPANT";
    case Status::CORRECTED: return "CORRECTED";
    case Status::PRIOR_WORK: return "PRIOR_WORK";
  }
  return "?";
}

Status parse_status(std::string_view text) {
  for (Status s : kAllStatuses) {
    if (to_string(s) == text) return s;
  }
  throw UsageError("unknown status: " + std::string(text));
}

std::string_view to_string(Family f) {
  switch (f) {
    case Family::FIB: return "FIB";
    case Family::LUCAS: return "LUCAS";
    case Family::HD_LUCAS: return "HD_LUCAS";
    case Family::HD_FIB: return "HD_FIB";
    case Family::FIB_EVEN: return "FIB_EVEN";
    case Family::LUCAS_EVEN: return "LUCAS_EVEN";
  }
  return "?";
}

Family parse_family(std::string_view text) {
  for (Family f : kAllFamilies) {
    if (to_string(f) == text) return f;
  }
  throw UsageError("unknown family: " + std::string(text));
}

std::string family_equation(Family f) {
  switch (f) {
    case Family::FIB: return "5";
    case Family::LUCAS: return "10";
    case Family::HD_LUCAS: return "15";
    case Family::HD_FIB: return "16";
    case Family::FIB_EVEN: return "9";
    case Family::LUCAS_EVEN: return "14";
  }
  return "";
}

IdentityEntry instantiate_family(Family family, long r) {
  if (r < 1) throw UsageError("family parameter r must be >= 1");
  const FamilyData d = family_data(family, r);
  const SurdQ5 A = family_parameter(d.base, d.param);
  const SurdQ5 base = A.inverse();  // 4x

  IdentityEntry e;
  e.id = std::string(to_string(family)) + "_R" + std::to_string(r);
  e.equations = {family_equation(family)};
  e.lhs = stream(e.id, base, {comp(1, {}, d.hd ? HarmonicKind::D : HarmonicKind::H)});
  e.rhs = family_rhs(family, r, A);
  // ratio of consecutive terms tends to 4x = 1/A < 1
  e.tail = TailStrategy::geometric();
  e.status = Status::AS_PRINTED_OK;
  e.family = FamilyRef{family, r};
  e.domain = "r = " + std::to_string(r) + ", x = " + (SurdQ5(make_rational(1, 4)) * base).to_string();
  const bool hd = d.hd;
  e.oracle = [hd, A](long n) {
    const BigRational h = hd ? H(2 * n) - H(n) : H(n);
    const SurdQ5 denom = (SurdQ5(4) * A).pow(n);
    return exact_term(SurdQ5(binom2(n) * h) / denom);
  };
  return e;
}

IdentityEntry hd_display_fixture(const BigRational& x) {
  IdentityEntry e = hd_corrected_entry(x);
  e.id = "EQ17_AS_PRINTED";
  e.lhs.label = e.id;
  e.rhs = hd_form(lit(x), true);
  e.status = Status::AS_PRINTED_DISCREPANT;
  e.partner = "EQ17";
  e.notes = "logarithm argument (1 - sqrt(1-4x))/2 as displayed";
  return e;
}

IdentityEntry hd_corrected_entry(const BigRational& x) {
  IdentityEntry e = gf_entry("EQ17", "17", GFName::HD, x, hd_form(lit(x), false), Status::CORRECTED);
  e.partner = "EQ17_AS_PRINTED";
  e.notes = "logarithm argument (1 + sqrt(1-4x))/2";
  return e;
}

Registry::Registry() : entries_(build_catalog()) {
  std::set<std::string> ids;
  for (const auto& e : entries_) {
    if (!ids.insert(e.id).second) throw Error("duplicate identity id " + e.id);
  }
}

const Registry& Registry::instance() {
  static const Registry r;
  return r;
}

const IdentityEntry& Registry::get(std::string_view id) const {
  for (const auto& e : entries_) {
    if (e.id == id) return e;
  }
  throw UsageError("unknown identity id: " + std::string(id));
}

bool Registry::contains(std::string_view id) const {
  return std::any_of(entries_.begin(), entries_.end(), [&](const auto& e) { return e.id == id; });
}

EntrySummary summarize(const IdentityEntry& e) {
  EntrySummary s;
  s.id = e.id;
  s.equations = e.equations;
  s.status = e.status;
  s.family = e.family;
  s.domain = e.domain;
  s.tail = e.tail.kind;
  s.lhs = e.lhs.describe();
  s.rhs = e.rhs.to_string();
  s.notes = e.notes;
  return s;
}

std::vector<EntrySummary> list_identities(const ListFilter& filter) {
  std::vector<const IdentityEntry*> picked;
  for (const auto& e : Registry::instance().entries()) {
    if (filter.status && e.status != *filter.status) continue;
    if (filter.family && (!e.family || e.family->family != *filter.family)) continue;
    picked.push_back(&e);
  }
  std::stable_sort(picked.begin(), picked.end(), [](const IdentityEntry* a, const IdentityEntry* b) {
    const int ka = ref_order(a->equations.front()), kb = ref_order(b->equations.front());
    if (ka != kb) return ka < kb;
    if (a->equations.front() != b->equations.front()) return a->equations.front() < b->equations.front();
    return a->id < b->id;
  });
  std::vector<EntrySummary> out;
  for (const auto* e : picked) out.push_back(summarize(*e));
  return out;
}

std::vector<std::string> required_equations() {
  std::vector<std::string> r;
  for (int i = 1; i <= 40; ++i) r.push_back(std::to_string(i));
  for (const char* t : {"T2.4", "T2.5a", "T2.5b", "T2.6", "T2.7"}) r.emplace_back(t);
  return r;
}

std::vector<std::string> covered_equations() {
  std::set<std::string> s;
  for (const auto& e : Registry::instance().entries()) {
    s.insert(e.equations.begin(), e.equations.end());
    if (e.family) s.insert(family_equation(e.family->family));
  }
  std::vector<std::string> out(s.begin(), s.end());
  std::sort(out.begin(), out.end(), [](const std::string& a, const std::string& b) {
    const int ka = ref_order(a), kb = ref_order(b);
    return ka != kb ? ka < kb : a < b;
  });
  return out;
}

}  // namespace cbv
