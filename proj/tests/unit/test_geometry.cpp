#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "nodal/geometry.hpp"
#include "oracles.hpp"

using namespace nodal;

namespace {

constexpr double kPi = std::numbers::pi;

void expect_consistent(const CapSpec& c) {
  const double R = c.r_sphere;
  const double s2 = c.s * c.s;
  const double tol = 1e-9 * std::max(s2, 1e-12);
  EXPECT_NEAR(c.k * c.k + c.h * c.h, s2, tol);
  EXPECT_NEAR(2.0 * R * c.h, s2, tol);
  EXPECT_NEAR(2.0 * R * std::sin(c.theta / 4.0), c.s, 1e-9 * std::max(c.s, 1e-12));
}

std::size_t brute_kappa(const Shell& s) {
  const auto& p = s.points();
  std::size_t best = std::min<std::size_t>(p.size(), 3);
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      for (std::size_t k = j + 1; k < p.size(); ++k) {
        const Vec3 nrm = cross((p[j] - p[i]).as_vec(), (p[k] - p[i]).as_vec());
        std::size_t on = 0;
        for (const auto& q : p) on += std::abs(dot(nrm, (q - p[i]).as_vec())) < 0.5;
        best = std::max(best, on);
      }
  return best;
}

}  // namespace

TEST(Cap, FromEachParameter) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const double R = 0.1 + 40.0 * u(rng);
    expect_consistent(cap_from(R, CapParameter::ChordRadius, 2.0 * R * u(rng)));
    expect_consistent(cap_from(R, CapParameter::Height, 2.0 * R * u(rng)));
    expect_consistent(cap_from(R, CapParameter::BaseRadius, R * u(rng)));
    expect_consistent(cap_from(R, CapParameter::OpeningAngle, 2.0 * kPi * u(rng)));
  }
}

TEST(Cap, HemisphereAndDegenerate) {
  const double R = 3.0;
  const auto hemi = cap_from(R, CapParameter::Height, R);
  EXPECT_DOUBLE_EQ(hemi.k, R);
  EXPECT_NEAR(hemi.theta, kPi, 1e-15);
  EXPECT_DOUBLE_EQ(hemi.s, R * std::sqrt(2.0));
  EXPECT_TRUE(hemi.is_minor());
  const auto point = cap_from(R, CapParameter::ChordRadius, 0.0);
  EXPECT_EQ(point.h, 0.0);
  EXPECT_EQ(point.k, 0.0);
  EXPECT_EQ(point.theta, 0.0);
  const auto whole = cap_from(R, CapParameter::ChordRadius, 2.0 * R);
  EXPECT_EQ(whole.h, 2.0 * R);
  EXPECT_EQ(whole.k, 0.0);
  EXPECT_NEAR(whole.theta, 2.0 * kPi, 1e-15);
  EXPECT_FALSE(whole.is_minor());
  const auto base = cap_from(R, CapParameter::BaseRadius, R);
  EXPECT_DOUBLE_EQ(base.h, R);
}

TEST(Cap, BeyondHemisphere) {
  const auto c = cap_from(1.0, CapParameter::ChordRadius, 1.9);
  EXPECT_GT(c.h, 1.0);
  EXPECT_FALSE(c.is_minor());
  expect_consistent(c);
}

TEST(Cap, RangeErrors) {
  EXPECT_THROW(cap_from(1.0, CapParameter::ChordRadius, 2.1), std::domain_error);
  EXPECT_THROW(cap_from(1.0, CapParameter::Height, -0.1), std::domain_error);
  EXPECT_THROW(cap_from(1.0, CapParameter::BaseRadius, 1.5), std::domain_error);
  EXPECT_THROW(cap_from(1.0, CapParameter::OpeningAngle, 7.0), std::domain_error);
  EXPECT_THROW(cap_from(0.0, CapParameter::Height, 0.0), std::domain_error);
}

TEST(Segment, TwoParameterConstructors) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const double R = 1.0 + 10.0 * u(rng);
    const double lo = R * u(rng);
    const double hi = lo + (R - lo) * u(rng);
    const auto ref = segment_from_planes(R, {0, 0, 1}, lo, hi);
    for (const auto& shape : {SegmentShape{ref.h, ref.k, std::nullopt},
                              SegmentShape{std::nullopt, ref.k, ref.theta},
                              SegmentShape{ref.h, std::nullopt, ref.theta}}) {
      if (!shape.h && ref.k > R * (1.0 - 1e-9)) continue;  // k, theta ill-conditioned at the equator
      if (!shape.k && ref.theta < 1e-6) continue;
      const auto s = segment_from(R, {0, 0, 1}, shape, Hemisphere::Upper);
      EXPECT_NEAR(s.lower(), lo, 1e-6 * R);
      EXPECT_NEAR(s.upper(), hi, 1e-6 * R);
      const auto neg = segment_from(R, {0, 0, 1}, shape, Hemisphere::Lower);
      EXPECT_NEAR(neg.upper(), -lo, 1e-6 * R);
    }
  }
  EXPECT_THROW(segment_from(1.0, {0, 0, 1}, SegmentShape{0.1, std::nullopt, std::nullopt},
                            Hemisphere::Upper),
               std::invalid_argument);
  EXPECT_THROW(segment_from(1.0, {0, 0, 1}, SegmentShape{0.5, 0.1, std::nullopt}, Hemisphere::Upper),
               std::domain_error);
}

TEST(Segment, StraddleIsRejectedAndSplit) {
  EXPECT_THROW(segment_from_planes(2.0, {0, 0, 1}, -0.5, 0.5), std::domain_error);
  const auto [south, north] = split_at_equator(2.0, {0, 0, 1}, -0.5, 0.5);
  EXPECT_DOUBLE_EQ(south.upper(), 0.0);
  EXPECT_DOUBLE_EQ(north.lower(), 0.0);
  EXPECT_DOUBLE_EQ(north.k, 2.0);
}

TEST(Segment, KThetaAtMostEightH) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double R = 1.0 + 100.0 * u(rng);
    const double lo = R * u(rng);
    const double hi = lo + (R - lo) * u(rng);
    const auto s = segment_from_planes(R, {0, 0, 1}, lo, hi);
    EXPECT_LE(s.k * s.theta, 8.0 * s.h);
  }
}

TEST(Counting, CapOnUnitShell) {
  const auto shell = enumerate_shell(1);
  EXPECT_EQ(count_in_cap(shell, cap_from(1.0, CapParameter::ChordRadius, std::sqrt(2.0))).count, 5u);
  EXPECT_EQ(count_in_cap(shell, cap_from(1.0, CapParameter::ChordRadius, 0.0)).count, 1u);
  EXPECT_EQ(count_in_cap(shell, cap_from(1.0, CapParameter::ChordRadius, 2.0)).count, 6u);
  EXPECT_THROW(count_in_cap(shell, cap_from(2.0, CapParameter::ChordRadius, 1.0)),
               std::invalid_argument);
}

TEST(Counting, SegmentMatchesBrute) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> g;
  const auto shell = enumerate_shell(50);
  for (int i = 0; i < 200; ++i) {
    const Vec3 beta = normalized({g(rng), g(rng), g(rng)});
    const double R = shell.radius();
    const double lo = R * u(rng);
    const double hi = lo + (R - lo) * u(rng);
    const auto seg = segment_from_planes(R, beta, lo, hi);
    std::size_t brute = 0;
    for (const auto& p : shell.points()) {
      const double z = dot(p, beta);
      brute += z >= lo && z <= hi;
    }
    EXPECT_EQ(count_in_segment(shell, seg).count, brute);
  }
}

TEST(Kappa, SmallShells) {
  EXPECT_EQ(kappa(enumerate_shell(1)), 4u);
  EXPECT_EQ(kappa(enumerate_shell(2)), 6u);
  EXPECT_EQ(kappa(enumerate_shell(3)), 4u);
  for (std::int64_t m : {5, 6, 9, 11, 14}) {
    const auto s = enumerate_shell(m);
    EXPECT_EQ(kappa(s), brute_kappa(s)) << m;
  }
  EXPECT_THROW(kappa(enumerate_shell(7)), std::invalid_argument);
}

TEST(Chi, HatIsMonotoneAndBelowExact) {
  for (std::int64_t m : {2, 5, 9, 50}) {
    const auto s = enumerate_shell(m);
    std::size_t prev = 0;
    for (double x = 0.0; x <= 2.0 * s.radius(); x += 0.05) {
      const auto c = chi_hat(s, x);
      EXPECT_GE(c, prev);
      EXPECT_LE(c, oracle::chi_exact(s, x));
      prev = c;
    }
    EXPECT_EQ(chi_hat(s, 2.0 * s.radius()), s.n());
  }
}

TEST(Bounds, CoveringAndSlicingDominateCounts) {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (std::int64_t m : {2, 5, 9, 50}) {
    const auto s = enumerate_shell(m);
    const double R = s.radius();
    const auto kap = kappa(s);
    auto chi = [&s](double, double cap) { return oracle::chi_exact(s, std::min(cap, 2.0 * s.radius())); };
    const LatticePoint dirs[] = {{1, 0, 0}, {1, 1, 0}, {1, 2, 2}, {3, 1, 4}};
    for (int i = 0; i < 40; ++i) {
      const auto& b = dirs[i % 4];
      const Vec3 beta = normalized(b.as_vec());
      const double lo = R * u(rng);
      const double hi = lo + (R - lo) * (0.01 + 0.99 * u(rng));
      const auto seg = segment_from_planes(R, beta, lo, hi);
      const auto count = count_in_segment(s, seg).count;
      EXPECT_GE(slicing_bound(kap, R, b, seg.h), count);
      const double omega = R * (0.02 + 0.97 * u(rng));
      EXPECT_GE(covering_bound(R, seg.k, seg.theta, omega, chi), count);
    }
  }
  EXPECT_EQ(covering_bound(2.0, 1.0, 0.0, 1.0, [](double, double) { return std::size_t{7}; }), 0u);
  EXPECT_THROW(covering_bound(2.0, 1.0, 0.1, 2.0, [](double, double) { return std::size_t{1}; }),
               std::domain_error);
  EXPECT_THROW(slicing_bound(enumerate_shell(2), {0, 0, 0}, 0.1), std::invalid_argument);
}

TEST(Regions, ConeContainsEverySolution) {
  std::mt19937_64 rng(23);
  std::normal_distribution<double> g;
  const double R = 7.0;
  for (int trial = 0; trial < 12; ++trial) {
    const double c = 0.02 + 0.28 * (trial % 6) / 5.0;
    const Vec3 beta = normalized({g(rng), g(rng), g(rng)});
    Vec3 b = normalized({g(rng), g(rng), g(rng)});
    if (trial % 4 == 0) b = normalized(beta + b * (0.5 * c));  // near the pole branch
    b = b * R;
    const Region region = cone_region(R, b, beta, c);
    if (!region.clamped) {
      EXPECT_LE(region.total_opening_angle(), 8.0 * c * (1.0 + c * c) + 1e-12);
    }
    for (int i = 0; i < 100000; ++i) {
      const Vec3 p = normalized({g(rng), g(rng), g(rng)}) * R;
      const Vec3 d = b - p;
      if (std::abs(dot(d, beta)) <= c * norm(d)) {
        ASSERT_TRUE(region.contains(p)) << "c=" << c << " trial " << trial;
      }
    }
  }
}

TEST(Regions, SlabContainsEverySolution) {
  std::mt19937_64 rng(29);
  std::normal_distribution<double> g;
  const double R = 5.0;
  for (int trial = 0; trial < 12; ++trial) {
    const double c = 0.1 + 0.8 * trial;
    const Vec3 beta = normalized({g(rng), g(rng), g(rng)});
    const Vec3 b = normalized({g(rng), g(rng), g(rng)}) * R;
    const Region region = slab_region(R, b, beta, c);
    for (const auto& piece : region.pieces) {
      if (const auto* cap = std::get_if<CapSpec>(&piece)) {
        if (!region.clamped) {
          EXPECT_LE(cap->h, 2.0 * c + 1e-12);
        }
      } else {
        EXPECT_LE(std::get<SegmentSpec>(piece).h, 2.0 * c + 1e-12);
      }
    }
    for (int i = 0; i < 100000; ++i) {
      const Vec3 p = normalized({g(rng), g(rng), g(rng)}) * R;
      if (std::abs(dot(b - p, beta)) <= c) {
        ASSERT_TRUE(region.contains(p)) << "c=" << c;
      }
    }
  }
  EXPECT_TRUE(slab_region(1.0, {0, 0, 1}, {0, 0, 1}, 3.0).clamped);
  EXPECT_THROW(slab_region(1.0, {0, 0, 2}, {0, 0, 1}, 0.1), std::domain_error);
}
