#include <gtest/gtest.h>

#include <cmath>
#include <memory>
#include <numbers>
#include <random>

#include "nodal/random_wave.hpp"
#include "oracles.hpp"

using namespace nodal;

namespace {

constexpr double kPi = std::numbers::pi;

std::shared_ptr<const Shell> shell_of(std::int64_t m) {
  return std::make_shared<const Shell>(enumerate_shell(m));
}

WaveSample single_mode() {
  std::vector<std::complex<double>> reps(3);
  reps[2] = 1.0;  // (1, 0, 0) is the last point of E(1)
  return WaveSample(shell_of(1), reps);
}

}  // namespace

TEST(Sample, DeterministicAndConjugate) {
  const auto shell = shell_of(50);
  const auto a = sample_wave(shell, 99);
  const auto b = sample_wave(shell, 99);
  const auto c = sample_wave(shell, 99, 1);
  ASSERT_EQ(a.representatives().size(), shell->n() / 2);
  for (std::size_t i = 0; i < shell->n(); ++i) {
    EXPECT_EQ(a.coefficient(i), b.coefficient(i));
    EXPECT_EQ(a.coefficient(shell->antipode_index(i)), std::conj(a.coefficient(i)));
  }
  EXPECT_NE(a.coefficient(0), c.coefficient(0));
  EXPECT_THROW(sample_wave(shell_of(7), 1), std::invalid_argument);
}

TEST(Sample, Moments) {
  const auto shell = shell_of(3);
  const int draws = 100000;
  double sq = 0.0;
  std::complex<double> sum = 0.0;
  for (int k = 0; k < draws; ++k) {
    RandomStream rng(5, k);
    const auto reps = draw_representatives(*shell, rng);
    sq += std::norm(reps[0]);
    sum += reps[0];
  }
  EXPECT_NEAR(sq / draws, 1.0, 0.01);
  EXPECT_LT(std::abs(sum.real() / draws), 4.0 / std::sqrt(draws));
  EXPECT_LT(std::abs(sum.imag() / draws), 4.0 / std::sqrt(draws));
}

TEST(Evaluate, SingleMode) {
  const auto s = single_mode();
  const LineSegment line(Direction::rational(1, 0, 0), 1.0);
  for (double x : {0.0, 0.1, 0.37, 0.5, 0.99}) {
    EXPECT_NEAR(evaluate_F(s, {x, 0.3, 0.7}), 2.0 / std::sqrt(6.0) * std::cos(2 * kPi * x), 1e-14);
    EXPECT_NEAR(evaluate_f(s, line, x), 2.0 / std::sqrt(6.0) * std::cos(2 * kPi * x), 1e-14);
  }
}

TEST(Evaluate, OriginAndComplexPath) {
  const auto shell = shell_of(21);
  const auto s = sample_wave(shell, 3);
  double re_sum = 0.0;
  for (auto a : s.representatives()) re_sum += a.real();
  EXPECT_NEAR(evaluate_F(s, {0, 0, 0}), 2.0 / std::sqrt(static_cast<double>(shell->n())) * re_sum,
              1e-12);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const Vec3 x{u(rng), u(rng), u(rng)};
    const auto z = evaluate_F_complex(s, x);
    EXPECT_LT(std::abs(z.imag()), 1e-10);
    EXPECT_NEAR(z.real(), evaluate_F(s, x), 1e-10);
  }
}

TEST(Evaluate, LineRestrictionAndDerivative) {
  const auto shell = shell_of(50);
  const auto s = sample_wave(shell, 8);
  const LineSegment line(Direction::parse("irr:1,sqrt2,sqrt3"), 2.0);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  for (int i = 0; i < 100; ++i) {
    const double t = u(rng);
    EXPECT_NEAR(evaluate_f(s, line, t), evaluate_F(s, line.point(t)), 1e-12);
    const double h = 1e-6 * line.length;
    if (t < h || t > line.length - h) continue;
    const double fd = (evaluate_f(s, line, t + h) - evaluate_f(s, line, t - h)) / (2 * h);
    const double d = evaluate_f_prime(s, line, t);
    EXPECT_LE(std::abs(d - fd), 1e-6 * (1.0 + std::abs(d)));
  }
  EXPECT_THROW(evaluate_f(s, line, 2.5), std::domain_error);
  EXPECT_THROW(evaluate_f(s, line, -0.1), std::domain_error);
  EXPECT_THROW(LineSegment(Direction::rational(1, 0, 0), 0.0), std::invalid_argument);
}

TEST(Covariance, UnitShellClosedForm) {
  const auto shell = enumerate_shell(1);
  const auto d = Direction::rational(1, 0, 0);
  for (double tau : {0.0, 0.1, 0.25, 0.7, 1.3}) {
    const auto c = covariance(shell, d, tau + 0.2, 0.2);
    EXPECT_NEAR(c.r, (2.0 * std::cos(2 * kPi * tau) + 4.0) / 6.0, 1e-14);
  }
}

TEST(Covariance, DiagonalStationarityEvenness) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 3.0);
  for (std::int64_t m : {2, 3, 5, 6, 21, 50}) {
    const auto shell = enumerate_shell(m);
    for (const auto* text : {"rat:1,0,0", "rat:1,2,2", "irr:1,sqrt2,sqrt3", "halfrat:1,1,sqrt2"}) {
      const auto d = Direction::parse(text);
      const double t1 = u(rng);
      const double t2 = u(rng);
      const double delta = u(rng);
      const auto c = covariance(shell, d, t1, t2);
      const auto diag = covariance(shell, d, t1, t1);
      EXPECT_NEAR(diag.r, 1.0, 1e-12);
      EXPECT_NEAR(diag.r1, 0.0, 1e-12);
      EXPECT_NEAR(diag.r12, 4 * kPi * kPi * m / 3.0, 1e-10 * m);
      EXPECT_LE(std::abs(c.r), 1.0 + 1e-12);
      EXPECT_NEAR(covariance(shell, d, t1 + delta, t2 + delta).r, c.r, 1e-12);
      EXPECT_NEAR(covariance(shell, d, t2, t1).r, c.r, 1e-12);
      EXPECT_EQ(c.r1, -c.r2);
      EXPECT_NEAR(c.r, oracle::covariance_r(shell, d.unit(), t1 - t2), 1e-12);
      EXPECT_NEAR(c.r1, oracle::covariance_r1(shell, d.unit(), t1 - t2), 1e-10 * m);
    }
  }
}

TEST(Covariance, SecondMomentIsExactForEveryDirection) {
  std::mt19937_64 rng(6);
  std::normal_distribution<double> g;
  for (std::int64_t m : {1, 2, 3, 5, 6, 9, 11, 21, 50, 101, 506}) {
    const auto shell = enumerate_shell(m);
    for (int i = 0; i < 5; ++i) {
      const std::int64_t a = 1 + static_cast<std::int64_t>(std::abs(g(rng)) * 5);
      const auto d = Direction::irrational({a, 1}, {1, 2}, {-1, 3 + 2 * (i % 2)});
      EXPECT_NEAR(second_moment_ratio(shell, d), 1.0, 1e-12) << m;
    }
  }
}

TEST(Covariance, MatchesEmpiricalProducts) {
  const auto shell = shell_of(5);
  const LineSegment line(Direction::parse("irr:1,sqrt2,sqrt3"), 1.0);
  const int draws = 100000;
  const double pairs[5][2] = {{0.1, 0.2}, {0.0, 0.9}, {0.33, 0.34}, {0.5, 0.05}, {0.8, 0.25}};
  for (const auto& p : pairs) {
    double sum = 0.0;
    double sum_sq = 0.0;
    for (int k = 0; k < draws; ++k) {
      const auto s = sample_wave(shell, 123, k);
      const double prod = evaluate_f(s, line, p[0]) * evaluate_f(s, line, p[1]);
      sum += prod;
      sum_sq += prod * prod;
    }
    const double mean = sum / draws;
    const double se = std::sqrt((sum_sq / draws - mean * mean) / draws);
    EXPECT_NEAR(mean, covariance(*shell, line.direction, p[0], p[1]).r, 3.0 * se);
  }
}
