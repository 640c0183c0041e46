#include <doctest.h>

#include <cmath>

#include "cbv/ball.hpp"
#include "cbv/error.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace cbv;
using cbv::testing::mpfr_oracle;
using cbv::testing::mpfr_rational;

TEST_SUITE("ball_arith") {
  TEST_CASE("working precision for a digit target") {
    CHECK(precision_for_digits(1) == 68);
    CHECK(precision_for_digits(30) == 164);
    CHECK(precision_for_digits(100) == 397);
  }

  TEST_CASE("arithmetic examples") {
    const Ball s = Ball(1, 64) + Ball(2, 64);
    CHECK(overlaps(s, Ball(3, 64)));
    CHECK(s.rad_double() <= 1e-18);

    const Ball z = Ball::from_decimal("0", "0.25", 64) * Ball(7, 64);
    CHECK(z.contains_zero());

    const Ball third = Ball(1, 64) / Ball(3, 64);
    CHECK(overlaps(third, mpfr_rational(make_rational(1, 3))));
    CHECK(third.rad_double() < 1e-19);
    CHECK_THROWS_AS(Ball(1, 64) / Ball::from_decimal("0", "0.5", 64), DomainError);
  }

  TEST_CASE("arithmetic encloses exact rational results") {
    testing::Gen g(5);
    const ArithOp ops[] = {ArithOp::Add, ArithOp::Sub, ArithOp::Mul, ArithOp::Div, ArithOp::Neg, ArithOp::Abs};
    for (int i = 0; i < 400; ++i) {
      const BigRational a = g.rational(1000, 997), b = g.rational(1000, 991);
      const Precision p = 40 + static_cast<Precision>(g.range(0, 200));
      const Ball x(a, p), y(b, p);
      for (ArithOp op : ops) {
        if (op == ArithOp::Div && sgn(b) == 0) continue;
        BigRational exact;
        switch (op) {
          case ArithOp::Add: exact = a + b; break;
          case ArithOp::Sub: exact = a - b; break;
          case ArithOp::Mul: exact = a * b; break;
          case ArithOp::Div: exact = a / b; break;
          case ArithOp::Neg: exact = -a; break;
          case ArithOp::Abs: exact = abs(a); break;
        }
        REQUIRE(overlaps(ball_arith(op, x, y), mpfr_rational(exact)));
      }
    }
  }

  TEST_CASE("radii propagate through wide inputs") {
    const Ball x = Ball::from_decimal("2", "0.1", 128);
    const Ball y = Ball::from_decimal("-3", "0.2", 128);
    const Ball prod = x * y;
    CHECK(prod.rad_double() >= 0.7);  // 2*0.2 + 3*0.1 + 0.02
    CHECK(overlaps(prod, Ball(make_rational(-672, 100), 128)));  // 2.1 * -3.2
    CHECK(overlaps(prod, Ball(make_rational(-532, 100), 128)));  // 1.9 * -2.8
    const Ball q = x / y;
    CHECK(overlaps(q, Ball(make_rational(-21, 28), 128)));  // 2.1 / -2.8
    CHECK(overlaps(q, Ball(make_rational(-19, 32), 128)));  // 1.9 / -3.2
  }

  TEST_CASE("elementary examples") {
    CHECK(overlaps(sqrt(Ball(4, 64)), Ball(2, 64)));
    CHECK(sqrt(Ball(4, 64)).rad_double() < 1e-18);
    CHECK(overlaps(log(Ball(1, 64)), Ball(0, 64)));
    CHECK(log(Ball(1, 64)).rad_double() < 1e-18);
    Ball half_pi = constant(ConstantName::Pi, 64);
    half_pi.div_si(2);
    CHECK(overlaps(asin(Ball(1, 64)), half_pi));
    CHECK(overlaps(pow_int(Ball(3, 64), 5), Ball(243, 64)));
    CHECK(overlaps(pow_int(Ball(2, 64), -3), Ball(make_rational(1, 8), 64)));
  }

  TEST_CASE("elementary domain errors name the function") {
    auto message = [](auto&& f) -> std::string {
      try {
        f();
      } catch (const DomainError& e) {
        return e.what();
      }
      return "";
    };
    CHECK(message([] { sqrt(Ball(-1, 64)); }).find("sqrt") != std::string::npos);
    CHECK(message([] { log(Ball::from_decimal("0", "0.1", 64)); }).find("ln") != std::string::npos);
    CHECK(message([] { asin(Ball::from_decimal("1", "0.01", 64)); }).find("arcsin") != std::string::npos);
    CHECK(message([] { ball_elementary(ElementaryFn::Ln, Ball(-2, 64)); }).find("ln") != std::string::npos);
  }

  TEST_CASE("elementary functions enclose MPFR references") {
    testing::Gen g(11);
    for (int i = 0; i < 200; ++i) {
      const BigRational pos = make_rational(g.range(1, 5000), g.range(1, 3000));
      const BigRational unit = make_rational(g.range(-999, 999), 1000);
      const Precision p = 64 + static_cast<Precision>(g.range(0, 300));
      REQUIRE(overlaps(sqrt(Ball(pos, p)), mpfr_oracle([&](mpfr_ptr v) {
                         mpfr_set_q(v, pos.get_mpq_t(), MPFR_RNDN);
                         mpfr_sqrt(v, v, MPFR_RNDN);
                       })));
      REQUIRE(overlaps(log(Ball(pos, p)), mpfr_oracle([&](mpfr_ptr v) {
                         mpfr_set_q(v, pos.get_mpq_t(), MPFR_RNDN);
                         mpfr_log(v, v, MPFR_RNDN);
                       })));
      REQUIRE(overlaps(asin(Ball(unit, p)), mpfr_oracle([&](mpfr_ptr v) {
                         mpfr_set_q(v, unit.get_mpq_t(), MPFR_RNDN);
                         mpfr_asin(v, v, MPFR_RNDN);
                       })));
      const long k = g.range(-12, 12);
      if (sgn(unit) != 0) {
        REQUIRE(overlaps(pow_int(Ball(unit, p), k), mpfr_oracle([&](mpfr_ptr v) {
                           mpfr_set_q(v, unit.get_mpq_t(), MPFR_RNDN);
                           mpfr_pow_si(v, v, k, MPFR_RNDN);
                         })));
      }
    }
  }

  TEST_CASE("ln of a product overlaps the sum of logs") {
    testing::Gen g(23);
    for (int i = 0; i < 200; ++i) {
      const Ball x = Ball::from_decimal(std::to_string(g.range(1, 900)) + "." + std::to_string(g.range(0, 99)),
                                        "1e-" + std::to_string(g.range(5, 40)), 160);
      const Ball y(make_rational(g.range(1, 1000), g.range(1, 1000)), 160);
      REQUIRE(overlaps(log(x * y), log(x) + log(y)));
    }
  }

  TEST_CASE("arcsin of one half is pi over six") {
    for (Precision p : {64, 128, 333, 1000}) {
      Ball pi6 = constant(ConstantName::Pi, p);
      pi6.div_si(6);
      REQUIRE(overlaps(asin(Ball(make_rational(1, 2), p)), pi6));
    }
  }

  TEST_CASE("constant examples") {
    CHECK(overlaps(constant(ConstantName::Pi, 128), Ball::from_decimal("3.14159265358979323846", "1e-20", 128)));
    CHECK(overlaps(constant(ConstantName::CatalanG, 64), Ball::from_decimal("0.9159655941", "1e-10", 64)));
    CHECK(overlaps(constant(ConstantName::Zeta2, 64), Ball::from_decimal("1.6449340668", "1e-10", 64)));
    CHECK(overlaps(constant(ConstantName::Zeta3, 64), Ball::from_decimal("1.2020569031", "1e-10", 64)));
    CHECK(overlaps(constant(ConstantName::Ln2, 64), Ball::from_decimal("0.6931471805", "1e-10", 64)));
    CHECK(overlaps(constant(ConstantName::Alpha, 64), Ball::from_decimal("1.6180339887", "1e-10", 64)));
    CHECK(overlaps(constant(ConstantName::Sqrt5, 64), Ball::from_decimal("2.2360679774", "1e-10", 64)));
  }

  TEST_CASE("constants match MPFR and carry the promised radius") {
    for (Precision p : {32, 64, 100, 256, 1000}) {
      const Ball pi = constant(ConstantName::Pi, p);
      REQUIRE(overlaps(pi, mpfr_oracle([](mpfr_ptr v) { mpfr_const_pi(v, MPFR_RNDN); })));
      REQUIRE(overlaps(constant(ConstantName::Ln2, p), mpfr_oracle([](mpfr_ptr v) { mpfr_const_log2(v, MPFR_RNDN); })));
      REQUIRE(overlaps(constant(ConstantName::CatalanG, p),
                       mpfr_oracle([](mpfr_ptr v) { mpfr_const_catalan(v, MPFR_RNDN); })));
      REQUIRE(overlaps(constant(ConstantName::Zeta3, p), mpfr_oracle([](mpfr_ptr v) { mpfr_zeta_ui(v, 3, MPFR_RNDN); })));
      REQUIRE(overlaps(constant(ConstantName::Sqrt5, p), mpfr_oracle([](mpfr_ptr v) { mpfr_sqrt_ui(v, 5, MPFR_RNDN); })));
      REQUIRE(overlaps(constant(ConstantName::Zeta2, p), pi * pi / Ball(6, p)));
      for (ConstantName c : kAllConstants) {
        const Ball b = constant(c, p);
        // rad <= 2^(2-p) |mid|
        REQUIRE(b.rad_double() <= std::ldexp(std::fabs(b.mid_double()), 2 - static_cast<int>(p)));
      }
    }
  }

  TEST_CASE("catalan constant agrees with its defining alternating series") {
    const long K = 20000;
    const Precision p = 96;
    Ball s(0, p);
    for (long k = K - 1; k >= 0; --k) {
      Ball t(make_rational(k % 2 == 0 ? 1 : -1, (2 * k + 1) * (2 * k + 1)), p);
      s += t;
    }
    s.add_error(1.0 / static_cast<double>((2 * K + 1) * (2 * K + 1)));
    CHECK(overlaps(s, constant(ConstantName::CatalanG, 64)));
  }

  TEST_CASE("constants refine as precision grows") {
    for (ConstantName c : kAllConstants) {
      Ball prev = constant(c, 40);
      for (Precision p : {80, 160, 320, 640}) {
        const Ball next = constant(c, p);
        REQUIRE(overlaps(prev, next));
        REQUIRE(next.rad_double() <= prev.rad_double());
        prev = next;
      }
    }
  }

  TEST_CASE("surd embedding examples") {
    CHECK(overlaps(from_surd(SurdQ5::alpha(), 128), Ball::from_decimal("1.6180339887498948482", "1e-19", 128)));
    CHECK(overlaps(from_surd(SurdQ5(3), 64), Ball(3, 64)));
    CHECK(from_surd(SurdQ5(3), 64).rad_double() < 1e-18);
    CHECK(overlaps(from_surd(SurdQ5::beta(), 128), Ball::from_decimal("-0.6180339887498948482", "1e-19", 128)));
  }

  TEST_CASE("surd powers embed consistently") {
    const Ball a = from_surd(SurdQ5::alpha(), 200);
    for (long n = -30; n <= 30; ++n) REQUIRE(overlaps(from_surd(alpha_power(n), 200), pow_int(a, n)));
  }

  TEST_CASE("overlap and agreed digit examples") {
    CHECK(overlaps(Ball::from_decimal("1", "0.1", 64), Ball::from_decimal("1.05", "0.01", 64)));
    CHECK_FALSE(overlaps(Ball::from_decimal("1", "0.001", 64), Ball::from_decimal("2", "0.001", 64)));
    Ball pi = constant(ConstantName::Pi, 200).rounded_to(128);
    Ball tight = Ball::from_interval(pi.mid(), pi.mid(), 128);
    Real eps(kRadiusPrecision);
    mpfr_set_ui_2exp(eps.get(), 1, -100, MPFR_RNDU);
    tight.add_error(eps.get());
    CHECK(agreed_digits(tight, tight) >= 25);
    CHECK(agreed_digits(Ball(1, 64), Ball(2, 64)) == 0);
    CHECK(agreed_digits(Ball::from_decimal("1000", "0", 64), Ball::from_decimal("1000.001", "0", 64)) == 5);
  }

  TEST_CASE("decimal output reports only justified digits") {
    const std::string s = (Ball(1, 64) / Ball(3, 64)).to_string();
    CHECK(s.rfind("0.3333333333333333333", 0) == 0);
    CHECK(s.find("±") != std::string::npos);
    const std::string wide = Ball::from_decimal("2.5", "0.01", 64).to_string();
    CHECK(wide.rfind("2.5 ±", 0) == 0);
  }
}
