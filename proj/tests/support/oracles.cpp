#include "oracles.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <numbers>

namespace oracle {

std::vector<std::int64_t> r3_histogram(std::int64_t max_m) {
  std::vector<std::int64_t> count(static_cast<std::size_t>(max_m) + 1, 0);
  std::int64_t b = 0;
  while ((b + 1) * (b + 1) <= max_m) ++b;
  for (std::int64_t x = -b; x <= b; ++x) {
    for (std::int64_t y = -b; y <= b; ++y) {
      for (std::int64_t z = -b; z <= b; ++z) {
        const std::int64_t s = x * x + y * y + z * z;
        if (s <= max_m) ++count[static_cast<std::size_t>(s)];
      }
    }
  }
  return count;
}

bool is_legendre_excluded(std::int64_t m) {
  while ((m & 3) == 0) m >>= 2;
  return (m & 7) == 7;
}

std::size_t chi_exact(const nodal::Shell& shell, double s) {
  using nodal::Vec3;
  const double R = shell.radius();
  std::vector<Vec3> pts;
  for (const auto& p : shell.points()) pts.push_back(p.as_vec());
  std::vector<Vec3> centres;
  for (const auto& p : pts) {
    centres.push_back(p);
    centres.push_back(-p);
  }
  // Centres X on the sphere with |X - P| = |X - Q| = s lie on <X, P> = <X, Q> = R^2 - s^2/2.
  const double c = R * R - 0.5 * s * s;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const Vec3& P = pts[i];
      const Vec3& Q = pts[j];
      const double pq = nodal::dot(P, Q);
      if (R * R + pq < 1e-12 * R * R) continue;  // antipodal pair
      const Vec3 mid = (P + Q) * (c / (R * R + pq));
      const Vec3 axis = nodal::cross(P, Q);
      const double rest = R * R - nodal::dot(mid, mid);
      if (rest < -1e-12 * R * R) continue;
      const double t = std::sqrt(std::max(0.0, rest) / nodal::dot(axis, axis));
      centres.push_back(mid + axis * t);
      centres.push_back(mid - axis * t);
    }
  }
  std::size_t best = 0;
  const double lim = s * (1.0 + 1e-9) + 1e-12;
  for (const auto& x : centres) {
    std::size_t n = 0;
    for (const auto& p : pts) {
      const Vec3 d = p - x;
      if (nodal::dot(d, d) <= lim * lim) ++n;
    }
    best = std::max(best, n);
  }
  return best;
}

std::size_t dense_sign_changes(const nodal::WaveSample& sample, const nodal::LineSegment& line,
                               std::size_t points) {
  std::size_t changes = 0;
  bool prev = false;
  for (std::size_t i = 0; i < points; ++i) {
    const double t = i + 1 == points ? line.length
                                     : line.length * static_cast<double>(i) /
                                           static_cast<double>(points - 1);
    const bool sign = nodal::evaluate_f(sample, line, t) >= 0.0;
    if (i > 0 && sign != prev) ++changes;
    prev = sign;
  }
  return changes;
}

std::size_t zero_grid_points(const nodal::Shell& shell, const nodal::Vec3& alpha, double length,
                             double grid_factor) {
  double fmax = 0.0;
  for (const auto& p : shell.points()) fmax = std::max(fmax, std::abs(nodal::dot(p, alpha)));
  const double cells = std::ceil(grid_factor * 2.0 * fmax * length);
  return static_cast<std::size_t>(std::max(2.0, cells + 1.0));
}

double covariance_r(const nodal::Shell& shell, const nodal::Vec3& alpha, double tau) {
  double sum = 0.0;
  for (const auto& p : shell.points()) {
    sum += std::cos(2.0 * std::numbers::pi * tau * nodal::dot(p, alpha));
  }
  return sum / static_cast<double>(shell.n());
}

double covariance_r1(const nodal::Shell& shell, const nodal::Vec3& alpha, double tau) {
  double sum = 0.0;
  for (const auto& p : shell.points()) {
    const double w = nodal::dot(p, alpha);
    sum -= 2.0 * std::numbers::pi * w * std::sin(2.0 * std::numbers::pi * tau * w);
  }
  return sum / static_cast<double>(shell.n());
}

bool dirichlet_holds(double zeta, std::int64_t p, std::int64_t q, std::int64_t h) {
  using boost::multiprecision::cpp_rational;
  cpp_rational d = cpp_rational(zeta) * q - p;
  if (d < 0) d = -d;
  return d * h < 1;
}

long double chord(const nodal::Vec3& alpha, const nodal::LatticePoint& a) {
  const long double n = std::sqrt(static_cast<long double>(a.norm2()));
  const long double dx = alpha.x - a.x / n;
  const long double dy = alpha.y - a.y / n;
  const long double dz = alpha.z - a.z / n;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

}  // namespace oracle
