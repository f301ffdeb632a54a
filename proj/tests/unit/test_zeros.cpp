#include <gtest/gtest.h>

#include <cmath>
#include <memory>

#include "nodal/zeros.hpp"
#include "oracles.hpp"

using namespace nodal;

namespace {

std::shared_ptr<const Shell> shell_of(std::int64_t m) {
  return std::make_shared<const Shell>(enumerate_shell(m));
}

// (2/sqrt6) (c + cos(2 pi t)) along the first axis: rep 2 is (1,0,0), rep 1 is (0,1,0).
WaveSample cosine_plus(double c) {
  std::vector<std::complex<double>> reps(3);
  reps[2] = 1.0;
  reps[1] = c;
  return WaveSample(shell_of(1), reps);
}

}  // namespace

TEST(CountZeros, PureCosine) {
  const auto s = cosine_plus(0.0);
  const auto z = count_zeros(s, LineSegment(Direction::rational(1, 0, 0), 1.0));
  ASSERT_EQ(z.count, 2u);
  EXPECT_NEAR(z.roots[0], 0.25, 1e-12);
  EXPECT_NEAR(z.roots[1], 0.75, 1e-12);
  EXPECT_FALSE(z.flags.near_tangency);
  EXPECT_EQ(count_zeros(s, LineSegment(Direction::rational(1, 0, 0), 0.2)).count, 0u);
}

TEST(CountZeros, TouchCountsZero) {
  const auto s = cosine_plus(1.0);
  const auto z = count_zeros(s, LineSegment(Direction::rational(1, 0, 0), 0.9));
  EXPECT_EQ(z.count, 0u);
  EXPECT_TRUE(z.flags.near_tangency || z.flags.refinement_depth_hit);
  const auto on_grid = count_zeros(s, LineSegment(Direction::rational(1, 0, 0), 1.0));
  EXPECT_EQ(on_grid.count, 0u);
}

TEST(CountZeros, NarrowDipBetweenGridPoints) {
  // c slightly below 1: two roots 2*acos(c)/(2 pi) apart, much closer than the grid step.
  const double c = std::cos(0.02);
  const auto s = cosine_plus(c);
  const auto z = count_zeros(s, LineSegment(Direction::rational(1, 0, 0), 0.9));
  ASSERT_EQ(z.count, 2u);
  EXPECT_NEAR(z.roots[1] - z.roots[0], 0.04 / (2 * std::acos(-1.0)), 1e-10);
}

TEST(CountZeros, Errors) {
  const auto zero = WaveSample(shell_of(1), std::vector<std::complex<double>>(3));
  const LineSegment line(Direction::rational(1, 0, 0), 1.0);
  EXPECT_THROW(count_zeros(zero, line), DegenerateSample);
  EXPECT_THROW(count_zeros(cosine_plus(0.0), line, 3.0), std::invalid_argument);
}

TEST(CountZeros, RootsAreSortedAndAccurate) {
  const auto shell = shell_of(21);
  const LineSegment line(Direction::parse("irr:1,sqrt2,sqrt3"), 1.5);
  for (int k = 0; k < 20; ++k) {
    const auto s = sample_wave(shell, 77, k);
    const auto z = count_zeros(s, line);
    for (std::size_t i = 0; i < z.roots.size(); ++i) {
      if (i > 0) {
        EXPECT_GT(z.roots[i] - z.roots[i - 1], 1e-12);
      }
      const double r = z.roots[i];
      const double a = std::max(0.0, r - 1e-12);
      const double b = std::min(line.length, r + 1e-12);
      const double fa = evaluate_f(s, line, a);
      const double fb = evaluate_f(s, line, b);
      // Either the 2e-12 window brackets a sign change or f is at rounding level there.
      EXPECT_TRUE((fa >= 0) != (fb >= 0) || std::abs(evaluate_f(s, line, r)) < 1e-12);
    }
  }
}

TEST(CountZeros, MatchesDenseScanOnSmallShells) {
  for (std::int64_t m : {1, 2, 3, 5, 6}) {
    const auto shell = shell_of(m);
    for (const auto* text : {"rat:1,0,0", "irr:1,sqrt2,sqrt3"}) {
      const LineSegment line(Direction::parse(text), 1.0);
      for (int k = 0; k < 10; ++k) {
        const auto s = sample_wave(shell, 2024, k);
        const auto grid = oracle::zero_grid_points(*shell, line.direction.unit(), 1.0, 8.0);
        EXPECT_EQ(count_zeros(s, line).count,
                  oracle::dense_sign_changes(s, line, 100 * (grid - 1) + 1))
            << "m=" << m << " " << text << " k=" << k;
      }
    }
  }
}

TEST(MonteCarlo, ReportIsConsistentAndThreadIndependent) {
  const auto shell = enumerate_shell(5);
  const LineSegment line(Direction::parse("rat:1,0,0"), 1.0);
  MonteCarloOptions one;
  one.threads = 1;
  MonteCarloOptions four;
  four.threads = 4;
  const auto a = monte_carlo(shell, line, 300, 9, one);
  const auto b = monte_carlo(shell, line, 300, 9, four);
  EXPECT_EQ(a, b);
  std::int64_t total = 0;
  std::int64_t weighted = 0;
  double sq = 0.0;
  for (const auto& [z, n] : a.histogram) {
    total += n;
    weighted += z * n;
    sq += static_cast<double>(z) * z * n;
  }
  EXPECT_EQ(total, 300);
  EXPECT_EQ(a.mean, static_cast<double>(weighted) / 300.0);
  EXPECT_NEAR(a.variance, (sq - 300.0 * a.mean * a.mean) / 299.0, 1e-12);
  EXPECT_DOUBLE_EQ(a.std_err, std::sqrt(a.variance / 300.0));
  EXPECT_EQ(a.direction, "rat:1,0,0");
  EXPECT_THROW(monte_carlo(shell, line, 1, 9), std::invalid_argument);
}

TEST(MonteCarlo, TwoTrialsReproduce) {
  const auto shell = enumerate_shell(3);
  const LineSegment line(Direction::rational(1, 1, 0), 1.0);
  EXPECT_EQ(monte_carlo(shell, line, 2, 5), monte_carlo(shell, line, 2, 5));
}

TEST(MonteCarlo, ShiftInvariance) {
  const auto shell = enumerate_shell(6);
  const auto d = Direction::parse("irr:1,sqrt2,sqrt3");
  const auto origin = monte_carlo(shell, LineSegment(d, 1.0), 2000, 1);
  const auto shifted = monte_carlo(shell, LineSegment(d, 1.0, {0.31, 0.77, 0.12}), 2000, 2);
  const double joint = std::sqrt(origin.std_err * origin.std_err + shifted.std_err * shifted.std_err);
  EXPECT_LT(std::abs(origin.mean - shifted.mean), 3.0 * joint);
}
