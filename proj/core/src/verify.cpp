#include "nodal/verify.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <functional>
#include <memory>
#include <numbers>
#include <random>
#include <sstream>

#include "nodal/arithmetic.hpp"
#include "nodal/diophantine.hpp"
#include "nodal/geometry.hpp"
#include "nodal/lattice.hpp"
#include "nodal/random_wave.hpp"
#include "nodal/zeros.hpp"

namespace nodal {

namespace {

constexpr double kPi = std::numbers::pi;

struct Suite {
  std::vector<CheckResult> results;

  void run(const std::string& name, const std::function<std::string()>& body) {
    CheckResult r;
    r.name = name;
    try {
      r.detail = body();
      r.passed = r.detail.rfind("FAIL", 0) != 0;
    } catch (const std::exception& e) {
      r.detail = std::string("FAIL exception: ") + e.what();
    }
    results.push_back(std::move(r));
  }
};

std::string fail(const std::string& what) { return "FAIL " + what; }

std::vector<Direction> sample_directions() {
  return {Direction::rational(1, 0, 0), Direction::rational(1, 1, 1), Direction::rational(1, 2, 3),
          Direction::half_rational(1, 1, Surd{1, 2}), Direction::half_rational(2, 3, Surd{1, 5}),
          Direction::irrational({1, 1}, {1, 2}, {1, 3}), Direction::irrational({2, 1}, {-1, 3}, {1, 7})};
}

bool exact_within(double zeta, std::int64_t p, std::int64_t q, std::int64_t h) {
  using boost::multiprecision::cpp_rational;
  cpp_rational diff = cpp_rational(zeta) * q - p;
  if (diff < 0) diff = -diff;
  return diff * h < 1;
}

}  // namespace

std::vector<CheckResult> run_invariants(const VerifyOptions& options) {
  Suite suite;
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<std::shared_ptr<const Shell>> shells;
  for (auto m : options.m_list) {
    auto shell = std::make_shared<const Shell>(enumerate_shell(m));
    if (!shell->empty()) shells.push_back(std::move(shell));
  }

  suite.run("lattice.representable_iff_nonempty", [] {
    for (std::int64_t m = 1; m <= 2000; ++m) {
      const auto s = enumerate_shell(m);
      if (s.empty() == s.m_class().representable) return fail("m = " + std::to_string(m));
      if (s.m_class().primitive && s.empty()) return fail("admissible m empty: " + std::to_string(m));
    }
    return std::string("m <= 2000");
  });

  suite.run("lattice.antipodal_closure", [&] {
    for (const auto& s : shells) {
      for (std::size_t i = 0; i < s->n(); ++i) {
        if (s->points()[s->antipode_index(i)] != -s->points()[i]) {
          return fail("m = " + std::to_string(s->m()));
        }
      }
    }
    return std::to_string(shells.size()) + " shells";
  });

  suite.run("lattice.scale_check", [] {
    for (std::int64_t m = 1; m <= 200; ++m) {
      if (!scale_check(m)) return fail("m = " + std::to_string(m));
    }
    return std::string("m <= 200");
  });

  suite.run("geometry.cap_identities", [&] {
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const double R = 0.5 + 20.0 * unit(rng);
      const auto which = static_cast<CapParameter>(i % 4);
      double value = 0.0;
      switch (which) {
        case CapParameter::ChordRadius: value = 2.0 * R * unit(rng); break;
        case CapParameter::Height: value = 2.0 * R * unit(rng); break;
        case CapParameter::BaseRadius: value = R * unit(rng); break;
        case CapParameter::OpeningAngle: value = 2.0 * kPi * unit(rng); break;
      }
      const auto c = cap_from(R, which, value);
      const double s2 = c.s * c.s;
      const double scale = std::max(s2, 1e-300);
      worst = std::max({worst, std::abs(c.k * c.k + c.h * c.h - s2) / scale,
                        std::abs(2.0 * R * c.h - s2) / scale,
                        std::abs(2.0 * R * std::sin(c.theta / 4.0) - c.s) / std::max(c.s, 1e-300)});
    }
    std::ostringstream os;
    os << "max relative residual " << worst << " (tol 1e-9)";
    return worst <= 1e-9 ? os.str() : fail(os.str());
  });

  suite.run("geometry.k_theta_le_8h", [&] {
    for (int i = 0; i < 1000; ++i) {
      const double R = 1.0 + 30.0 * unit(rng);
      const double lo = R * unit(rng);
      const double hi = lo + (R - lo) * unit(rng);
      const auto seg = segment_from_planes(R, {0, 0, 1}, lo, hi);
      if (seg.k * seg.theta > 8.0 * seg.h) return fail("R=" + std::to_string(R));
    }
    return std::string("1000 hemisphere segments");
  });

  suite.run("geometry.slicing_bound", [&] {
    const LatticePoint dirs[] = {{1, 0, 0}, {1, 1, 0}, {1, 1, 1}, {1, 2, 3}, {2, 1, 5}};
    int cases = 0;
    for (const auto& s : shells) {
      const auto kap = kappa(*s);
      const double R = s->radius();
      for (const auto& b : dirs) {
        const Vec3 beta = normalized(b.as_vec());
        for (int i = 0; i < 4; ++i) {
          const double lo = R * unit(rng);
          const double hi = lo + (R - lo) * unit(rng);
          const auto seg = segment_from_planes(R, beta, lo, hi);
          const auto count = count_in_segment(*s, seg).count;
          if (slicing_bound(kap, R, b, seg.h) < count) return fail("m = " + std::to_string(s->m()));
          ++cases;
        }
      }
    }
    return std::to_string(cases) + " segments";
  });

  suite.run("diophantine.dirichlet_exact", [&] {
    for (int i = 0; i < 100; ++i) {
      const double z1 = 10.0 * unit(rng) - 5.0;
      const double z2 = 10.0 * unit(rng) - 5.0;
      const auto h = static_cast<std::int64_t>(1 + 50 * unit(rng));
      const auto d1 = dirichlet_1d(z1, h);
      if (d1.q < 1 || d1.q > h || !exact_within(z1, d1.p, d1.q, h)) return fail("1-D");
      const auto d2 = dirichlet_simultaneous(z1, z2, h);
      if (d2.q < 1 || d2.q > h * h || !exact_within(z1, d2.p1, d2.q, h) ||
          !exact_within(z2, d2.p2, d2.q, h)) {
        return fail("simultaneous");
      }
    }
    return std::string("100 cases, rational comparison");
  });

  suite.run("diophantine.approx_bounds", [] {
    int cases = 0;
    for (const auto& d : sample_directions()) {
      if (d.kind() == Direction::Kind::Rational) continue;
      for (std::int64_t h : {1, 2, 5, 10, 50}) {
        const auto a = approx_direction(d, h);
        const double an = a.a_norm();
        const double hd = static_cast<double>(h);
        bool ok = false;
        if (d.kind() == Direction::Kind::Irrational) {
          ok = an <= 3.0 * hd * hd && a.angle_err < 6.0 * std::sqrt(2.0) / (an * hd);
        } else {
          const double t2 = a.tau * a.tau;
          ok = an < std::sqrt(3.0) * t2 * hd && a.angle_err < 2.0 * std::sqrt(3.0) * t2 / (an * hd);
        }
        if (!ok) return fail(d.label() + " H=" + std::to_string(h));
        if (std::abs(2.0 * std::sin(a.phi / 2.0) - a.angle_err) > 1e-12) {
          return fail("chord identity " + d.label());
        }
        ++cases;
      }
    }
    return std::to_string(cases) + " approximations";
  });

  suite.run("diophantine.unit_difference", [&] {
    std::normal_distribution<double> g;
    for (int i = 0; i < 100000; ++i) {
      const Vec3 v{g(rng), g(rng), g(rng)};
      const Vec3 w{g(rng), g(rng), g(rng)};
      if (unit_difference_bound(v, w) > 2.0 * norm(v - w) / norm(w)) return fail("pair " + std::to_string(i));
    }
    return std::string("1e5 pairs");
  });

  suite.run("randomwave.covariance_identities", [&] {
    double worst = 0.0;
    for (const auto& s : shells) {
      for (const auto& d : sample_directions()) {
        const double t1 = 3.0 * unit(rng);
        const double t2 = 3.0 * unit(rng);
        const double shift = unit(rng);
        const auto c = covariance(*s, d, t1, t2);
        const auto c_shift = covariance(*s, d, t1 + shift, t2 + shift);
        const auto c_swap = covariance(*s, d, t2, t1);
        const auto c_diag = covariance(*s, d, t1, t1);
        worst = std::max({worst, std::abs(c_diag.r - 1.0), std::abs(c.r - c_shift.r),
                          std::abs(c.r - c_swap.r), std::abs(c.r1 + c.r2),
                          std::abs(c_diag.r1), std::max(0.0, std::abs(c.r) - 1.0)});
      }
    }
    std::ostringstream os;
    os << "max residual " << worst << " (tol 1e-12)";
    return worst <= 1e-12 ? os.str() : fail(os.str());
  });

  suite.run("randomwave.second_moment_ratio", [&] {
    double worst = 0.0;
    for (const auto& s : shells) {
      for (const auto& d : sample_directions()) {
        worst = std::max(worst, std::abs(second_moment_ratio(*s, d) - 1.0));
      }
    }
    std::ostringstream os;
    os << "max |3 sum <mu,alpha>^2 / (N m) - 1| = " << worst << " (tol 1e-12)";
    return worst <= 1e-12 ? os.str() : fail(os.str());
  });

  suite.run("randomwave.real_part", [&] {
    double worst = 0.0;
    for (const auto& s : shells) {
      const auto sample = sample_wave(s, options.seed);
      for (int i = 0; i < 10; ++i) {
        const Vec3 x{unit(rng), unit(rng), unit(rng)};
        const auto z = evaluate_F_complex(sample, x);
        worst = std::max({worst, std::abs(z.imag()), std::abs(z.real() - evaluate_F(sample, x))});
      }
    }
    std::ostringstream os;
    os << "max residual " << worst << " (tol 1e-10)";
    return worst <= 1e-10 ? os.str() : fail(os.str());
  });

  suite.run("nodal.single_mode", [] {
    auto shell = std::make_shared<const Shell>(enumerate_shell(1));
    std::vector<std::complex<double>> reps(3);
    reps[2] = 1.0;  // points()[5] = (1, 0, 0)
    const WaveSample sample(shell, reps);
    const LineSegment line(Direction::rational(1, 0, 0), 1.0);
    const auto z = count_zeros(sample, line);
    if (z.count != 2 || std::abs(z.roots[0] - 0.25) > 1e-12 || std::abs(z.roots[1] - 0.75) > 1e-12) {
      return fail("count " + std::to_string(z.count));
    }
    return std::string("roots 0.25, 0.75");
  });

  suite.run("arithmetic.min_bound", [&] {
    for (int i = 0; i < 100000; ++i) {
      const double beta = std::ldexp(unit(rng) - 0.5, static_cast<int>(20 * unit(rng)) - 10);
      const double L = 0.01 + 5.0 * unit(rng);
      if (beta == 0.0) continue;
      const double cap = std::min(L * L, 1.0 / (kPi * kPi * beta * beta));
      if (integral_sq(beta, L) > cap * (1.0 + 1e-12)) return fail("beta " + std::to_string(beta));
    }
    return std::string("1e5 samples");
  });

  suite.run("arithmetic.pair_sum_chain", [&] {
    int cases = 0;
    for (const auto& s : shells) {
      const auto kap = kappa(*s);
      for (const auto& d : sample_directions()) {
        const LineSegment line(d, 0.5 + unit(rng));
        BoundParams params;
        params.kappa = kap;
        params.threads = options.threads;
        const BoundMode mode = d.kind() == Direction::Kind::Rational    ? BoundMode::Rational
                               : d.kind() == Direction::Kind::Irrational ? BoundMode::Irrational
                                                                         : BoundMode::HalfRational;
        for (auto md : {mode, BoundMode::Conditional}) {
          const auto rep = variance_bound(*s, line, md, params);
          if (rep.s_zero < rep.n) return fail("s_zero < N");
          if (d.kind() == Direction::Kind::Rational && rep.s_zero > rep.n * rep.kappa) {
            return fail("s_zero > N kappa at m = " + std::to_string(s->m()));
          }
          if (rep.q_value > rep.intermediate * (1.0 + 1e-12)) {
            return fail("q > intermediate, " + to_string(md) + " m = " + std::to_string(s->m()));
          }
          if (rep.r2.r1r1 > rep.r2.rr || rep.r2.r12r12 > rep.r2.rr) return fail("derivative term > rr");
          ++cases;
        }
      }
    }
    return std::to_string(cases) + " reports";
  });

  return suite.results;
}

}  // namespace nodal
