#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include "nodal/vec3.hpp"

namespace nodal {

/// A point of Z^3.
struct LatticePoint {
  std::int64_t x = 0;
  std::int64_t y = 0;
  std::int64_t z = 0;

  constexpr std::int64_t norm2() const { return x * x + y * y + z * z; }
  constexpr LatticePoint operator-() const { return {-x, -y, -z}; }
  constexpr auto operator<=>(const LatticePoint&) const = default;

  Vec3 as_vec() const {
    return {static_cast<double>(x), static_cast<double>(y), static_cast<double>(z)};
  }
};

constexpr LatticePoint operator-(const LatticePoint& a, const LatticePoint& b) {
  return {a.x - b.x, a.y - b.y, a.z - b.z};
}

constexpr std::int64_t dot(const LatticePoint& a, const LatticePoint& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

inline double dot(const LatticePoint& a, const Vec3& b) {
  return static_cast<double>(a.x) * b.x + static_cast<double>(a.y) * b.y +
         static_cast<double>(a.z) * b.z;
}

/// Arithmetic classification of an energy m.
struct MClass {
  int residue = 0;             ///< m mod 8
  bool representable = false;  ///< m is a sum of three squares, i.e. m != 4^l (8k + 7)
  bool primitive = false;      ///< some representation has coprime components, i.e. m mod 8 not in {0,4,7}

  constexpr bool operator==(const MClass&) const = default;
};

MClass classify_m(std::int64_t m);

/// Largest r with r*r <= n, exact for all n >= 0 that fit in int64.
std::int64_t isqrt(std::int64_t n);

/// The lattice points on the sphere of radius sqrt(m), in lexicographic order.
///
/// Shells are immutable once built; the only way to obtain one is enumerate_shell.
/// Because negation reverses lexicographic order, the antipode of points()[i] is
/// points()[n() - 1 - i].
class Shell {
 public:
  std::int64_t m() const { return m_; }
  double radius() const;
  const std::vector<LatticePoint>& points() const { return points_; }
  std::size_t n() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const MClass& m_class() const { return m_class_; }

  std::size_t antipode_index(std::size_t i) const { return points_.size() - 1 - i; }

 private:
  friend Shell enumerate_shell(std::int64_t m);
  Shell(std::int64_t m, std::vector<LatticePoint> points);

  std::int64_t m_;
  std::vector<LatticePoint> points_;
  MClass m_class_;
};

/// All (x,y,z) with x^2 + y^2 + z^2 = m. Throws std::invalid_argument for m < 1.
Shell enumerate_shell(std::int64_t m);

/// True iff E(4m) equals {2 mu : mu in E(m)} as sets.
bool scale_check(std::int64_t m);

/// A shell pushed onto the unit sphere.
class ProjectedShell {
 public:
  /// Throws std::invalid_argument unless every point has norm 1 within 1e-12.
  ProjectedShell(std::int64_t m, std::vector<Vec3> unit_points);

  std::int64_t m() const { return m_; }
  const std::vector<Vec3>& unit_points() const { return unit_points_; }
  std::size_t n() const { return unit_points_.size(); }

 private:
  std::int64_t m_;
  std::vector<Vec3> unit_points_;
};

/// Divides every point by sqrt(m). Throws std::invalid_argument ("no lattice points") on an empty shell.
ProjectedShell project_shell(const Shell& shell);

}  // namespace nodal
