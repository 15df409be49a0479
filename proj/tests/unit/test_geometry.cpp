#include <cmath>
#include <random>

#include <doctest.h>

#include <mbeam/error.hpp>
#include <mbeam/geometry.hpp>

using namespace mbeam;

TEST_SUITE("geometry") {

TEST_CASE("built-in boundaries evaluate analytically") {
  const auto b1 = MovingBoundary::b1(1).eval(0.0);
  CHECK(b1.K == 64.0);
  CHECK(b1.Kp == std::ldexp(1.0, -7));
  CHECK(b1.Kpp == 0.0);

  const auto c = MovingBoundary::constant(64.0).eval(3.7);
  CHECK(c.K == 64.0);
  CHECK(c.Kp == 0.0);
  CHECK(c.Kpp == 0.0);

  const auto b2 = MovingBoundary::b2(1).eval(0.0);
  CHECK(b2.K == doctest::Approx(64.0).epsilon(1e-15));
  CHECK(b2.Kp == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(b2.Kpp == doctest::Approx(-2.0).epsilon(1e-15));

  const auto b1_2d = MovingBoundary::b1(2).eval(1.0);
  CHECK(b1_2d.K == 64.0 + std::ldexp(1.0, -17));
}

TEST_CASE("boundary derivatives agree with finite differences") {
  const auto b = MovingBoundary::b2(1);
  for (double t : {0.1, 0.5, 2.0}) {
    const double e = 1e-5;
    const double fd1 = (b.eval(t + e).K - b.eval(t - e).K) / (2 * e);
    const double fd2 = (b.eval(t + e).Kp - b.eval(t - e).Kp) / (2 * e);
    CHECK(b.eval(t).Kp == doctest::Approx(fd1).epsilon(1e-8));
    CHECK(b.eval(t).Kpp == doctest::Approx(fd2).epsilon(1e-8));
  }
}

TEST_CASE("boundary errors") {
  CHECK_THROWS_AS(MovingBoundary::b1(1).eval(-1.0), Error);
  const auto bad = MovingBoundary::custom([](double) { return NAN; }, [](double) { return 0.0; },
                                          [](double) { return 0.0; });
  try {
    bad.eval(0.0);
    FAIL("expected InvalidBoundary");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidBoundary);
  }
}

TEST_CASE("coefficients: stationary degeneration") {
  BeamParameters p;
  const double y[2] = {0.3, -0.7};
  const auto c = eval_coefficients(BoundaryState{64.0, 0.0, 0.0}, p, std::span<const double>(y, 2));
  for (int i = 0; i < 2; ++i) {
    CHECK(c.a1[i] == 0.03125);
    CHECK(c.a3[i] == 0.0);
    CHECK(c.a4[i] == 0.0);
    CHECK(c.a5[i] == 0.0);
    for (int j = 0; j < 2; ++j) CHECK(c.a2[i][j] == 0.0);
  }
}

TEST_CASE("coefficients: B1 values at t = 0") {
  BeamParameters p;
  const double y = 1.0;
  const auto c = eval_coefficients(MovingBoundary::b1(1), p, std::span<const double>(&y, 1), 0.0);
  CHECK(c.b2 == doctest::Approx(std::pow(64.0, -4)).epsilon(1e-15));
  CHECK(c.b2 == doctest::Approx(5.9605e-8).epsilon(1e-4));
  CHECK(c.b1 == doctest::Approx(1.1921e-7).epsilon(1e-4));
  CHECK(c.b1 == 2.0 * c.b2);
  CHECK(c.a4[0] == doctest::Approx(-std::ldexp(1.0, -12)).epsilon(1e-15));
}

TEST_CASE("coefficients: singular mapping") {
  BeamParameters p;
  const double y = 0.0;
  CHECK_THROWS_AS(eval_coefficients(BoundaryState{0.0, 1.0, 0.0}, p, std::span<const double>(&y, 1)), Error);
  CHECK_THROWS_AS(eval_coefficients(BoundaryState{-2.0, 1.0, 0.0}, p, std::span<const double>(&y, 1)), Error);
}

TEST_CASE("coefficients: identities over random draws") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  BeamParameters p;
  for (int draw = 0; draw < 10000; ++draw) {
    const BoundaryState s{64.0 + 8.0 * U(rng), 4.0 * U(rng), 2.0 * U(rng)};
    const double y[2] = {U(rng), U(rng)};
    const auto c = eval_coefficients(s, p, std::span<const double>(y, 2));
    for (int i = 0; i < 2; ++i) {
      REQUIRE(std::abs(c.a5[i] - c.a3[i] - 2.0 * (s.Kp / s.K) * c.a4[i]) < 1e-14);
      REQUIRE(c.a2[i][1 - i] == c.a2[1 - i][i]);
    }
    REQUIRE(c.b1 == p.zeta1 * c.b2);
  }
}

TEST_CASE("coefficients: divergence fields match finite differences") {
  BeamParameters p;
  const BoundaryState s{60.0, 1.5, -0.3};
  for (int n = 1; n <= 2; ++n) {
    double y[2] = {0.4, -0.25};
    const auto c = eval_coefficients(s, p, std::span<const double>(y, n));
    for (int i = 0; i < n; ++i) {
      const double e = 1e-6;
      double yp[2] = {y[0], y[1]}, ym[2] = {y[0], y[1]};
      yp[i] += e;
      ym[i] -= e;
      const auto cp = eval_coefficients(s, p, std::span<const double>(yp, n));
      const auto cm = eval_coefficients(s, p, std::span<const double>(ym, n));
      CHECK(c.div_a1[i] == doctest::Approx((cp.a1[i] - cm.a1[i]) / (2 * e)).epsilon(1e-7));
      double div2 = 0.0;
      for (int j = 0; j < n; ++j) {
        double qp[2] = {y[0], y[1]}, qm[2] = {y[0], y[1]};
        qp[j] += e;
        qm[j] -= e;
        div2 += (eval_coefficients(s, p, std::span<const double>(qp, n)).a2[i][j] -
                 eval_coefficients(s, p, std::span<const double>(qm, n)).a2[i][j]) / (2 * e);
      }
      CHECK(c.div_a2[i] == doctest::Approx(div2).epsilon(1e-7));
    }
  }
}

TEST_CASE("hypotheses") {
  BeamParameters p;
  const auto ok = validate_hypotheses(MovingBoundary::b1(1), p, 1.0);
  CHECK(ok.passed());

  const auto fast = validate_hypotheses(MovingBoundary::linear_drift(64.0, 10.0), p, 1.0);
  CHECK_FALSE(fast.passed());
  CHECK_FALSE(fast.acceptable(true));
  CHECK_FALSE(fast.checks[2].passed);

  const auto fixed = validate_hypotheses(MovingBoundary::constant(64.0), p, 1.0);
  CHECK_FALSE(fixed.passed());
  CHECK(fixed.acceptable(true));
  CHECK(fixed.checks[1].waivable);
  CHECK_FALSE(fixed.checks[1].offending_times.empty());

  BeamParameters linear = p;
  linear.zeta1 = 0.0;
  const auto lin = validate_hypotheses(MovingBoundary::b1(1), linear, 1.0);
  CHECK_FALSE(lin.passed());
  CHECK(lin.acceptable(true));
}

TEST_CASE("hypotheses: raising zeta0 never breaks the speed bound") {
  const auto b = MovingBoundary::linear_drift(64.0, 3.0);
  bool was_passing = false;
  for (double z0 = 1.0; z0 < 200.0; z0 *= 1.5) {
    BeamParameters p;
    p.zeta0 = z0;
    const bool passing = validate_hypotheses(b, p, 1.0).checks[2].passed;
    if (was_passing) CHECK(passing);
    was_passing = passing;
  }
  CHECK(was_passing);
}

TEST_CASE("map_point and map_back") {
  const double y = 0.5;
  CHECK(map_point(MovingBoundary::constant(64.0), 0.0, std::span<const double>(&y, 1))[0] == 32.0);
  const double one = 1.0;
  CHECK(map_point(MovingBoundary::b1(1), 1.0, std::span<const double>(&one, 1))[0] == 64.0078125);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (int k = 0; k < 100; ++k) {
    const double yy[2] = {U(rng), U(rng)};
    const auto x = map_point(MovingBoundary::b2(2), 0.7, std::span<const double>(yy, 2));
    const auto back = map_back(MovingBoundary::b2(2), 0.7, std::span<const double>(x.data(), 2));
    CHECK(std::abs(back[0] - yy[0]) <= 1e-15 * std::abs(yy[0]));
    CHECK(std::abs(back[1] - yy[1]) <= 1e-15 * std::abs(yy[1]));
  }
}

}  // TEST_SUITE
