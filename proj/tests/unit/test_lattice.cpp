#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "nodal/lattice.hpp"
#include "oracles.hpp"

using namespace nodal;

TEST(Lattice, UnitShell) {
  const auto s = enumerate_shell(1);
  ASSERT_EQ(s.n(), 6u);
  const std::set<LatticePoint> expected{{1, 0, 0}, {-1, 0, 0}, {0, 1, 0},
                                        {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
  EXPECT_EQ(std::set<LatticePoint>(s.points().begin(), s.points().end()), expected);
}

TEST(Lattice, SevenIsEmpty) {
  const auto s = enumerate_shell(7);
  EXPECT_TRUE(s.empty());
  EXPECT_FALSE(s.m_class().representable);
}

TEST(Lattice, FiveHasTwentyFour) {
  std::size_t brute = 0;
  for (int x = -2; x <= 2; ++x)
    for (int y = -2; y <= 2; ++y)
      for (int z = -2; z <= 2; ++z) brute += x * x + y * y + z * z == 5;
  EXPECT_EQ(brute, 24u);
  EXPECT_EQ(enumerate_shell(5).n(), brute);
}

TEST(Lattice, RejectsNonPositive) {
  EXPECT_THROW(enumerate_shell(0), std::invalid_argument);
  EXPECT_THROW(classify_m(-3), std::invalid_argument);
}

TEST(Lattice, LexicographicAndAntipodal) {
  for (std::int64_t m : {1, 2, 3, 9, 50, 101}) {
    const auto s = enumerate_shell(m);
    EXPECT_TRUE(std::is_sorted(s.points().begin(), s.points().end()));
    EXPECT_EQ(std::adjacent_find(s.points().begin(), s.points().end()), s.points().end());
    for (std::size_t i = 0; i < s.n(); ++i) {
      EXPECT_EQ(s.points()[s.antipode_index(i)], -s.points()[i]);
      EXPECT_EQ(s.points()[i].norm2(), m);
    }
  }
}

TEST(Lattice, ClassificationMatchesOracle) {
  const auto hist = oracle::r3_histogram(3000);
  for (std::int64_t m = 1; m <= 3000; ++m) {
    const auto c = classify_m(m);
    EXPECT_EQ(c.residue, m % 8);
    EXPECT_EQ(c.representable, !oracle::is_legendre_excluded(m)) << m;
    EXPECT_EQ(c.representable, hist[m] > 0) << m;
  }
}

TEST(Lattice, PrimitiveFlagMeansCoprimePoint) {
  for (std::int64_t m = 1; m <= 600; ++m) {
    const auto s = enumerate_shell(m);
    const bool has_primitive = std::any_of(s.points().begin(), s.points().end(), [](auto p) {
      return std::gcd(std::gcd(std::abs(p.x), std::abs(p.y)), std::abs(p.z)) == 1;
    });
    EXPECT_EQ(s.m_class().primitive, has_primitive) << m;
    if (s.m_class().primitive) {
      const auto b = isqrt(m);
      for (const auto& p : s.points()) {
        EXPECT_LE(std::max({std::abs(p.x), std::abs(p.y), std::abs(p.z)}), b);
      }
    }
  }
}

TEST(Lattice, Isqrt) {
  for (std::int64_t n = 0; n < 100000; ++n) {
    const auto r = isqrt(n);
    ASSERT_LE(r * r, n);
    ASSERT_GT((r + 1) * (r + 1), n);
  }
  const std::int64_t big = 3037000499;  // floor(sqrt(2^63 - 1))
  EXPECT_EQ(isqrt(big * big), big);
  EXPECT_EQ(isqrt(big * big - 1), big - 1);
}

TEST(Lattice, ScaleCheck) {
  for (std::int64_t m = 1; m <= 120; ++m) EXPECT_TRUE(scale_check(m)) << m;
}

TEST(Lattice, Projection) {
  const auto p = project_shell(enumerate_shell(21));
  for (const auto& u : p.unit_points()) EXPECT_NEAR(norm(u), 1.0, 1e-12);
  EXPECT_THROW(project_shell(enumerate_shell(7)), std::invalid_argument);
  EXPECT_THROW(ProjectedShell(1, {{1.0, 1e-5, 0.0}}), std::invalid_argument);
}
