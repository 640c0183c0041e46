#include <doctest.h>

#include "cbv/error.hpp"
#include "cbv/registry.hpp"
#include "cbv/series.hpp"
#include "oracle.hpp"

using namespace cbv;

namespace {

Component weight(std::vector<LinearFactor> f, int s = 1, HarmonicKind h = HarmonicKind::None, BigRational coeff = 1) {
  Component c;
  c.coeff = coeff;
  c.s = s;
  c.w.factors = std::move(f);
  c.h = h;
  return c;
}

StreamSpec spec(long first, SurdQ5 base, std::vector<Component> comps, SignPattern sign = {}) {
  StreamSpec s;
  s.first_index = first;
  s.base = std::move(base);
  s.components = std::move(comps);
  s.sign = sign;
  return s;
}

BigRational binom2(long n) { return BigRational(central_binomial(n)); }

BigRational pow4(long n) {
  BigRational r = 1;
  for (long i = 0; i < n; ++i) r *= 4;
  return r;
}

// sum_{n>=0} c_n y^n = (1 - y)^(-1/2)
StreamSpec binomial_series(const BigRational& y) { return spec(0, SurdQ5(y), {weight({})}); }

// sum_{n>=1} 1/n^4 = pi^4 / 90
StreamSpec quartic_zeta() { return spec(1, SurdQ5(1), {weight({{1, 0, -4}}, 0)}); }

// sum_{n>=0} (-1)^n / (2n+1)^2 = G
StreamSpec catalan_series() { return spec(0, SurdQ5(1), {weight({{2, 1, -2}}, 0)}, SignPattern{1, 0}); }

// sum_{n>=0} c_n / (n+1) = 2
StreamSpec catalan_number_series() { return spec(0, SurdQ5(1), {weight({{1, 1, -1}})}); }

const IdentityEntry& entry(std::string_view id) { return Registry::instance().get(id); }

}  // namespace

TEST_SUITE("series_engine") {
  TEST_CASE("stream terms equal from-scratch values") {
    // t_n = c_n H_n (1/5)^n
    const StreamSpec s = spec(1, SurdQ5(make_rational(1, 5)), {weight({}, 1, HarmonicKind::H)});
    TermStream balls(s, 256);
    ExactTermStream exact(s);
    BigRational p5 = 1;
    for (long n = 1; n <= 50; ++n) {
      p5 *= 5;
      const BigRational ref = binom2(n) / pow4(n) * harmonic(n) / p5;
      const SurdQ5 e = exact.next();
      REQUIRE(e == SurdQ5(ref));
      REQUIRE(overlaps(balls.next(), Ball(ref, 256)));
    }
  }

  TEST_CASE("harmonic kinds follow their definitions") {
    for (long n = 1; n <= 40; ++n) {
      const BigRational h = harmonic(n), h2 = harmonic(2 * n);
      REQUIRE(harmonic_value(HarmonicKind::H, n) == h);
      REQUIRE(harmonic_value(HarmonicKind::H2N, n) == h2);
      REQUIRE(harmonic_value(HarmonicKind::D, n) == h2 - h);
      REQUIRE(harmonic_value(HarmonicKind::E, n) == h2 - h / 2);
      REQUIRE(harmonic_value(HarmonicKind::F, n) == harmonic(2 * n - 1) - h);
    }
  }

  TEST_CASE("streams are deterministic") {
    const StreamSpec s = entry("THM25A").lhs;
    TermStream a(s, 200), b(s, 200);
    for (int i = 0; i < 200; ++i) {
      const Ball x = a.next(), y = b.next();
      REQUIRE(mpfr_equal_p(x.mid(), y.mid()));
      REQUIRE(mpfr_equal_p(x.rad(), y.rad()));
    }
  }

  TEST_CASE("partial sum examples") {
    const StreamSpec eq36 = entry("EQ36").lhs;
    // n^2 C(2n,n) / (4^n (2n-1)^2 (2n+1)) at n = 1 is 1*2/(4*1*3)
    CHECK(exact_partial_sum(eq36, 1) == SurdQ5(make_rational(1, 6)));
    CHECK(overlaps(partial_sum(eq36, 1, 128), Ball(make_rational(1, 6), 128)));

    const StreamSpec zero = spec(1, SurdQ5(1), {weight({}, 1, HarmonicKind::None, 0)});
    const Ball z = partial_sum(zero, 25, 128);
    CHECK(overlaps(z, Ball(0, 128)));
    CHECK(z.rad_double() == 0.0);

    const StreamSpec thm26 = entry("THM26").lhs;
    CHECK(exact_partial_sum(thm26, 3) == SurdQ5(make_rational(161792, 99225)));
    const Ball p3 = partial_sum(thm26, 3, 128);
    CHECK(overlaps(p3, Ball::from_decimal("1.63055", "0.000007", 128)));
    CHECK(exact_partial_sum(thm26, 5) == SurdQ5(make_rational(9987533824L, 6087156075L)));
  }

  TEST_CASE("exact partial sums reject transcendental factors") {
    CHECK_THROWS_AS(exact_partial_sum(entry("THM24").lhs, 3), UsageError);
  }

  TEST_CASE("geometric sums reach their targets") {
    const SumResult r = sum_to_precision(binomial_series(make_rational(1, 2)), TailStrategy::geometric(), 40);
    CHECK(r.reached());
    CHECK(overlaps(r.value, sqrt(Ball(2, 300))));
    CHECK(accurate_digits(r.value) >= 40);

    const SumResult eq11 = sum_to_precision(entry("EQ11").lhs, entry("EQ11").tail, 30);
    CHECK(eq11.reached());
    CHECK(eq11.terms_used >= 100);
    CHECK(eq11.terms_used < 1000);
  }

  TEST_CASE("p-series sums reach their targets") {
    PSeriesBound b;
    b.C = 1;
    b.p = 4;
    b.n0 = 1;
    b.tail_sign = +1;
    const SumResult r = sum_to_precision(quartic_zeta(), TailStrategy::p_series(b), 10);
    CHECK(r.reached());
    const Precision p = 200;
    const Ball pi = constant(ConstantName::Pi, p);
    CHECK(overlaps(r.value, pow_int(pi, 4) / Ball(90, p)));
    CHECK(r.terms_used < 2000);

    const SumResult t26 = sum_to_precision(entry("THM26").lhs, entry("THM26").tail, 8);
    CHECK(t26.reached());
    CHECK(t26.terms_used <= 10000);
    CHECK(overlaps(t26.value, constant(ConstantName::Zeta2, 128)));
  }

  TEST_CASE("alternating sums reach their targets") {
    const SumResult r = sum_to_precision(catalan_series(), TailStrategy::alternating(0), 8);
    CHECK(r.reached());
    CHECK(overlaps(r.value, constant(ConstantName::CatalanG, 128)));
  }

  TEST_CASE("telescoping tails on a slowly converging series") {
    const SumResult r = sum_to_precision(catalan_number_series(), TailStrategy::telescoping(), 15);
    CHECK(r.reached());
    CHECK(overlaps(r.value, Ball(2, 128)));
    CHECK(r.terms_used < 10000);
  }

  TEST_CASE("running out of terms is an outcome") {
    PSeriesBound b;
    b.C = 1;
    b.p = 4;
    b.n0 = 1;
    const SumResult r = sum_to_precision(quartic_zeta(), TailStrategy::p_series(b), 30, 100);
    CHECK(r.outcome == SumOutcome::MaxTerms);
    CHECK(r.terms_used == 100);
    CHECK(overlaps(r.value, pow_int(constant(ConstantName::Pi, 128), 4) / Ball(90, 128)));
    CHECK(to_string(SumOutcome::MaxTerms) == "PrecisionNotReached");
  }

  TEST_CASE("higher targets refine lower ones") {
    for (const char* id : {"EQ11", "EQ31", "EQ36", "THM26"}) {
      const IdentityEntry& e = entry(id);
      const SumResult lo = sum_to_precision(e.lhs, e.tail, 6);
      const SumResult hi = sum_to_precision(e.lhs, e.tail, 12);
      REQUIRE(lo.reached());
      REQUIRE(hi.reached());
      REQUIRE(overlaps(lo.value, hi.value));
      REQUIRE(hi.value.rad_double() <= lo.value.rad_double());
    }
  }

  TEST_CASE("partial sums with tails agree across N") {
    for (const char* id : {"EQ34", "THM26", "EQ12", "EQ39"}) {
      const IdentityEntry& e = entry(id);
      const Precision p = 160;
      TermStream s(e.lhs, p);
      TailEvaluator tail(e.lhs, e.tail, p);
      std::vector<Ball> closed;
      Ball acc(0, p);
      for (long n = e.lhs.first_index; n <= 400; ++n) {
        acc += s.next();
        if (n == 20 || n == 50 || n == 150 || n == 400) {
          const auto t = tail.at(s);
          REQUIRE(t.has_value());
          closed.push_back(acc + *t);
        }
      }
      for (std::size_t i = 0; i < closed.size(); ++i) {
        for (std::size_t j = i + 1; j < closed.size(); ++j) REQUIRE(overlaps(closed[i], closed[j]));
      }
    }
  }

  TEST_CASE("empirical tail check examples") {
    const IdentityEntry& eq11 = entry("EQ11");
    CHECK(empirical_tail_check(eq11.lhs, eq11.tail, {10, 20, 40}).passed);
    const IdentityEntry& thm24 = entry("THM24");
    CHECK(empirical_tail_check(thm24.lhs, thm24.tail, {50, 100}).passed);
  }

  TEST_CASE("wrong p-series parameters are caught") {
    const IdentityEntry& e = entry("THM27");
    PSeriesBound b = e.tail.pseries;
    b.p = 3;  // true decay is n^-2
    const TailCheckReport r = empirical_tail_check(e.lhs, TailStrategy::p_series(b), {32, 128});
    CHECK_FALSE(r.passed);
    b = e.tail.pseries;
    b.C /= 100;
    CHECK_FALSE(empirical_tail_check(e.lhs, TailStrategy::p_series(b), {32, 128}).passed);
    CHECK(empirical_tail_check(e.lhs, e.tail, {32, 128}).passed);
  }

  TEST_CASE("log-power tail bound") {
    Real C(64), out(64);
    mpfr_set_d(C.get(), 1.0, MPFR_RNDN);
    // sum_{n>N} n^-2 <= 1/N
    log_power_tail(out.get(), C.get(), 0, 1, 2, 100);
    CHECK(mpfr_get_d(out.get(), MPFR_RNDN) == doctest::Approx(0.01).epsilon(1e-6));
    log_power_tail(out.get(), C.get(), 0, 1, 1, 100);
    CHECK(mpfr_inf_p(out.get()) != 0);
  }

  TEST_CASE("every registered stream matches its oracle for n <= 50") {
    for (const IdentityEntry& e : Registry::instance().entries()) {
      if (e.lhs.is_exact()) {
        ExactTermStream s(e.lhs);
        for (long n = e.lhs.first_index; n <= 50; ++n) {
          const OracleTerm o = e.oracle(n);
          REQUIRE_MESSAGE(o.times_pi.is_zero(), e.id);
          REQUIRE_MESSAGE(s.next() == o.exact, e.id << " n = " << n);
        }
      } else {
        TermStream s(e.lhs, 256);
        const Ball pi = constant(ConstantName::Pi, 256);
        for (long n = e.lhs.first_index; n <= 50; ++n) {
          const OracleTerm o = e.oracle(n);
          REQUIRE_MESSAGE(overlaps(s.next(), from_surd(o.exact, 256) + from_surd(o.times_pi, 256) * pi),
                          e.id << " n = " << n);
        }
      }
    }
  }
}
