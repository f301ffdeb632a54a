#include "nodal/lattice.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace nodal {

MClass classify_m(std::int64_t m) {
  if (m < 1) {
    throw std::invalid_argument("classify_m: m must be >= 1, got " + std::to_string(m));
  }
  MClass c;
  c.residue = static_cast<int>(m % 8);
  std::int64_t reduced = m;
  while (reduced % 4 == 0) {
    reduced /= 4;
  }
  c.representable = (reduced % 8) != 7;
  c.primitive = c.residue != 0 && c.residue != 4 && c.residue != 7;
  return c;
}

std::int64_t isqrt(std::int64_t n) {
  if (n < 0) {
    throw std::invalid_argument("isqrt: negative argument");
  }
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r > n / r) {
    --r;
  }
  while (r + 1 <= n / (r + 1)) {
    ++r;
  }
  return r;
}

Shell::Shell(std::int64_t m, std::vector<LatticePoint> points)
    : m_(m), points_(std::move(points)), m_class_(classify_m(m)) {}

double Shell::radius() const { return std::sqrt(static_cast<double>(m_)); }

Shell enumerate_shell(std::int64_t m) {
  if (m < 1) {
    throw std::invalid_argument("enumerate_shell: m must be >= 1, got " + std::to_string(m));
  }
  const std::int64_t bound = isqrt(m);
  std::vector<LatticePoint> points;
  for (std::int64_t x = -bound; x <= bound; ++x) {
    const std::int64_t rx = m - x * x;
    const std::int64_t by = isqrt(rx);
    for (std::int64_t y = -by; y <= by; ++y) {
      const std::int64_t rem = rx - y * y;
      const std::int64_t z = isqrt(rem);
      if (z * z != rem) {
        continue;
      }
      if (z == 0) {
        points.push_back({x, y, 0});
      } else {
        points.push_back({x, y, -z});
        points.push_back({x, y, z});
      }
    }
  }
  return Shell(m, std::move(points));
}

bool scale_check(std::int64_t m) {
  const Shell base = enumerate_shell(m);
  const Shell scaled = enumerate_shell(4 * m);
  if (base.n() != scaled.n()) {
    return false;
  }
  // Doubling preserves lexicographic order, so the sorted lists must match term by term.
  for (std::size_t i = 0; i < base.n(); ++i) {
    const auto& p = base.points()[i];
    if (scaled.points()[i] != LatticePoint{2 * p.x, 2 * p.y, 2 * p.z}) {
      return false;
    }
  }
  return true;
}

ProjectedShell::ProjectedShell(std::int64_t m, std::vector<Vec3> unit_points)
    : m_(m), unit_points_(std::move(unit_points)) {
  for (const auto& p : unit_points_) {
    if (std::abs(norm(p) - 1.0) > 1e-12) {
      throw std::invalid_argument("ProjectedShell: point is not on the unit sphere");
    }
  }
}

ProjectedShell project_shell(const Shell& shell) {
  if (shell.empty()) {
    throw std::invalid_argument("project_shell: no lattice points (m = " +
                                std::to_string(shell.m()) + ")");
  }
  const double r = shell.radius();
  std::vector<Vec3> unit;
  unit.reserve(shell.n());
  for (const auto& p : shell.points()) {
    unit.push_back(p.as_vec() / r);
  }
  return ProjectedShell(shell.m(), std::move(unit));
}

}  // namespace nodal
