#include "nodal/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace nodal {

namespace {

constexpr double kPi = std::numbers::pi;

[[noreturn]] void range_error(const std::string& what) { throw std::domain_error(what); }

void require_radius(double r_sphere) {
  if (!(r_sphere > 0.0) || !std::isfinite(r_sphere)) {
    range_error("sphere radius must be positive and finite");
  }
}

Vec3 unit_direction(const Vec3& direction) {
  const double n = norm(direction);
  if (!(n > 0.0)) {
    throw std::invalid_argument("direction must be a nonzero vector");
  }
  return direction / n;
}

void require_shell_radius(const Shell& shell, double r_sphere) {
  if (std::abs(r_sphere - shell.radius()) > 1e-9 * std::max(1.0, shell.radius())) {
    throw std::invalid_argument("region radius " + std::to_string(r_sphere) +
                                " does not match shell radius sqrt(" +
                                std::to_string(shell.m()) + ")");
  }
}

// Polar angle (from +direction) of the plane <x, direction> = z on the sphere of radius R.
double polar_of_height(double r_sphere, double z) {
  return std::acos(std::clamp(z / r_sphere, -1.0, 1.0));
}

CapSpec cap_from_chord(double r_sphere, double s, const Vec3& direction) {
  CapSpec cap;
  cap.r_sphere = r_sphere;
  cap.direction = direction;
  cap.s = s;
  const double half = s / (2.0 * r_sphere);
  cap.h = s * half;
  cap.k = s * std::sqrt(std::max(0.0, 1.0 - half * half));
  cap.theta = 4.0 * std::asin(std::clamp(half, 0.0, 1.0));
  return cap;
}

CapSpec hemisphere_cap(double r_sphere, const Vec3& direction) {
  CapSpec cap;
  cap.r_sphere = r_sphere;
  cap.direction = direction;
  cap.s = std::sqrt(2.0) * r_sphere;
  cap.h = r_sphere;
  cap.k = r_sphere;
  cap.theta = kPi;
  return cap;
}

CapSpec polar_cap(double r_sphere, const Vec3& direction, double polar) {
  return cap_from_chord(r_sphere, 2.0 * r_sphere * std::sin(0.5 * polar), direction);
}

// Closed band of polar angles [lo, hi] around `beta`, as caps and hemisphere segments.
Region band_region(double r_sphere, const Vec3& beta, double lo, double hi) {
  Region region;
  lo = std::max(lo, 0.0);
  hi = std::min(hi, kPi);
  if (lo <= 0.0 && hi >= kPi) {
    region.pieces.emplace_back(cap_from_chord(r_sphere, 2.0 * r_sphere, beta));
    region.clamped = true;
    return region;
  }
  if (lo <= 0.0) {
    region.pieces.emplace_back(polar_cap(r_sphere, beta, hi));
    return region;
  }
  if (hi >= kPi) {
    region.pieces.emplace_back(polar_cap(r_sphere, -beta, kPi - lo));
    return region;
  }
  const double upper = r_sphere * std::cos(lo);
  const double lower = r_sphere * std::cos(hi);
  if (lower < 0.0 && upper > 0.0) {
    auto [south, north] = split_at_equator(r_sphere, beta, lower, upper);
    region.pieces.emplace_back(south);
    region.pieces.emplace_back(north);
  } else {
    region.pieces.emplace_back(segment_from_planes(r_sphere, beta, lower, upper));
  }
  return region;
}

void require_on_sphere(double r_sphere, const Vec3& point) {
  if (std::abs(norm(point) - r_sphere) > 1e-9 * std::max(1.0, r_sphere)) {
    range_error("point is not on the sphere of radius " + std::to_string(r_sphere));
  }
}

}  // namespace

bool CapSpec::contains(const Vec3& point, double tol) const {
  return dot(point, direction) >= r_sphere - h - tol * std::max(1.0, r_sphere);
}

CapSpec cap_from(double r_sphere, CapParameter which, double value, const Vec3& direction) {
  require_radius(r_sphere);
  const Vec3 dir = unit_direction(direction);
  const double two_r = 2.0 * r_sphere;
  switch (which) {
    case CapParameter::ChordRadius:
      if (!(value >= 0.0 && value <= two_r)) {
        range_error("cap radius s must lie in [0, 2R]");
      }
      return cap_from_chord(r_sphere, value, dir);
    case CapParameter::Height: {
      if (!(value >= 0.0 && value <= two_r)) {
        range_error("cap height h must lie in [0, 2R]");
      }
      if (value == r_sphere) return hemisphere_cap(r_sphere, dir);
      CapSpec cap = cap_from_chord(r_sphere, std::sqrt(two_r * value), dir);
      cap.h = value;
      return cap;
    }
    case CapParameter::BaseRadius: {
      if (!(value >= 0.0 && value <= r_sphere)) {
        range_error("cap base radius k must lie in [0, R]");
      }
      if (value == r_sphere) return hemisphere_cap(r_sphere, dir);
      const double h = value * value / (r_sphere + std::sqrt(r_sphere * r_sphere - value * value));
      CapSpec cap = cap_from_chord(r_sphere, std::sqrt(two_r * h), dir);
      cap.h = h;
      cap.k = value;
      return cap;
    }
    case CapParameter::OpeningAngle: {
      if (!(value >= 0.0 && value <= 2.0 * kPi)) {
        range_error("cap opening angle theta must lie in [0, 2 pi]");
      }
      if (value == kPi) return hemisphere_cap(r_sphere, dir);
      CapSpec cap = cap_from_chord(r_sphere, two_r * std::sin(0.25 * value), dir);
      cap.theta = value;
      return cap;
    }
  }
  throw std::invalid_argument("cap_from: unknown parameter");
}

bool SegmentSpec::contains(const Vec3& point, double tol) const {
  const double z = dot(point, direction);
  const double slack = tol * std::max(1.0, r_sphere);
  return z >= lower() - slack && z <= upper() + slack;
}

double segment_opening_angle(double r_sphere, double lower, double upper) {
  return 2.0 * std::abs(polar_of_height(r_sphere, lower) - polar_of_height(r_sphere, upper));
}

SegmentSpec segment_from_planes(double r_sphere, const Vec3& direction, double lower,
                                double upper) {
  require_radius(r_sphere);
  if (!(lower <= upper)) {
    range_error("segment planes must satisfy lower <= upper");
  }
  const double slack = 1e-12 * r_sphere;
  if (lower < -r_sphere - slack || upper > r_sphere + slack) {
    range_error("segment planes must lie within [-R, R]");
  }
  if (lower < 0.0 && upper > 0.0) {
    range_error(
        "segment straddles the equator; split it into two hemisphere segments "
        "(split_at_equator)");
  }
  lower = std::max(lower, -r_sphere);
  upper = std::min(upper, r_sphere);
  SegmentSpec seg;
  seg.r_sphere = r_sphere;
  seg.direction = unit_direction(direction);
  seg.offset = upper;
  seg.h = upper - lower;
  const double near = std::min(std::abs(lower), std::abs(upper));
  seg.k = std::sqrt(std::max(0.0, (r_sphere - near) * (r_sphere + near)));
  seg.theta = segment_opening_angle(r_sphere, lower, upper);
  return seg;
}

std::pair<SegmentSpec, SegmentSpec> split_at_equator(double r_sphere, const Vec3& direction,
                                                     double lower, double upper) {
  if (!(lower <= 0.0 && upper >= 0.0)) {
    range_error("split_at_equator: slab does not contain the centre plane");
  }
  return {segment_from_planes(r_sphere, direction, lower, 0.0),
          segment_from_planes(r_sphere, direction, 0.0, upper)};
}

SegmentSpec segment_from(double r_sphere, const Vec3& direction, const SegmentShape& shape,
                         Hemisphere side) {
  require_radius(r_sphere);
  const int given = static_cast<int>(shape.h.has_value()) +
                    static_cast<int>(shape.k.has_value()) +
                    static_cast<int>(shape.theta.has_value());
  if (given != 2) {
    throw std::invalid_argument("segment_from: exactly two of h, k, theta must be given");
  }
  const double R = r_sphere;
  const double tol = 1e-12 * R;

  // Distance of the larger base from the centre, and of the smaller one.
  double near = 0.0;
  double far = 0.0;
  if (shape.h && shape.k) {
    const double h = *shape.h;
    const double k = *shape.k;
    if (!(h >= 0.0 && h <= R)) range_error("segment height h must lie in [0, R]");
    if (!(k >= 0.0 && k <= R)) range_error("segment base radius k must lie in [0, R]");
    near = std::sqrt(std::max(0.0, (R - k) * (R + k)));
    far = near + h;
    if (far > R + tol) range_error("segment with this h and k leaves the hemisphere");
  } else if (shape.k && shape.theta) {
    const double k = *shape.k;
    const double theta = *shape.theta;
    if (!(k >= 0.0 && k <= R)) range_error("segment base radius k must lie in [0, R]");
    if (!(theta >= 0.0 && theta <= kPi)) range_error("segment opening angle must lie in [0, pi]");
    near = std::sqrt(std::max(0.0, (R - k) * (R + k)));
    const double polar_far = polar_of_height(R, near) - 0.5 * theta;
    if (polar_far < -1e-12) range_error("segment with this k and theta runs past the pole");
    far = R * std::cos(std::max(0.0, polar_far));
  } else {
    const double h = *shape.h;
    const double theta = *shape.theta;
    if (!(h >= 0.0 && h <= R)) range_error("segment height h must lie in [0, R]");
    if (!(theta >= 0.0 && theta <= kPi)) range_error("segment opening angle must lie in [0, pi]");
    // The opening angle of [d, d + h] increases with d on [0, R - h].
    auto angle = [&](double d) { return segment_opening_angle(R, d, std::min(R, d + h)); };
    double lo = 0.0;
    double hi = R - h;
    if (theta < angle(lo) - 1e-12 || theta > angle(hi) + 1e-12) {
      range_error("no hemisphere segment has this h and theta");
    }
    for (int it = 0; it < 200 && hi - lo > 1e-15 * R; ++it) {
      const double mid = 0.5 * (lo + hi);
      (angle(mid) < theta ? lo : hi) = mid;
    }
    near = 0.5 * (lo + hi);
    far = std::min(R, near + h);
  }

  far = std::min(far, R);
  SegmentSpec seg = side == Hemisphere::Upper
                        ? segment_from_planes(R, direction, near, far)
                        : segment_from_planes(R, direction, -far, -near);
  // Keep the caller's values where given so the stored triple is the requested one.
  if (shape.h) seg.h = *shape.h, seg.offset = side == Hemisphere::Upper ? near + *shape.h : -near;
  if (shape.k) seg.k = *shape.k;
  if (shape.theta) seg.theta = *shape.theta;
  return seg;
}

CountResult count_in_cap(const Shell& shell, const CapSpec& cap) {
  require_shell_radius(shell, cap.r_sphere);
  const Vec3 centre = cap.direction * cap.r_sphere;
  const double limit = cap.s + 1e-12 * std::max(1.0, cap.r_sphere);
  CountResult out;
  for (const auto& mu : shell.points()) {
    const Vec3 d = mu.as_vec() - centre;
    if (dot(d, d) <= limit * limit) {
      out.witnesses.push_back(mu);
    }
  }
  out.count = out.witnesses.size();
  return out;
}

CountResult count_in_slab(const Shell& shell, const Vec3& direction, double lower,
                          double upper) {
  const Vec3 dir = unit_direction(direction);
  const double slack = 1e-12 * std::max(1.0, shell.radius());
  CountResult out;
  for (const auto& mu : shell.points()) {
    const double z = dot(mu, dir);
    if (z >= lower - slack && z <= upper + slack) {
      out.witnesses.push_back(mu);
    }
  }
  out.count = out.witnesses.size();
  return out;
}

CountResult count_in_segment(const Shell& shell, const SegmentSpec& segment) {
  require_shell_radius(shell, segment.r_sphere);
  return count_in_slab(shell, segment.direction, segment.lower(), segment.upper());
}

std::size_t chi_hat(const Shell& shell, double s) {
  const double R = shell.radius();
  std::size_t best = 0;
  const double limit = s + 1e-12 * std::max(1.0, R);
  for (const auto& centre_point : shell.points()) {
    const Vec3 centre = centre_point.as_vec();  // already on the sphere
    std::size_t count = 0;
    for (const auto& mu : shell.points()) {
      const Vec3 d = mu.as_vec() - centre;
      if (dot(d, d) <= limit * limit) {
        ++count;
      }
    }
    best = std::max(best, count);
  }
  return best;
}

namespace {

LatticePoint cross(const LatticePoint& a, const LatticePoint& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

// Primitive representative of a nonzero integer normal with first nonzero entry positive.
LatticePoint canonical_normal(LatticePoint n) {
  const std::int64_t g = std::gcd(std::gcd(std::abs(n.x), std::abs(n.y)), std::abs(n.z));
  n.x /= g;
  n.y /= g;
  n.z /= g;
  if (n.x < 0 || (n.x == 0 && (n.y < 0 || (n.y == 0 && n.z < 0)))) {
    n = -n;
  }
  return n;
}

}  // namespace

std::size_t kappa(const Shell& shell) {
  if (shell.empty()) {
    throw std::invalid_argument("kappa: empty shell (m = " + std::to_string(shell.m()) + ")");
  }
  const auto& pts = shell.points();
  const std::size_t n = pts.size();
  if (n < 3) {
    return n;
  }
  // A line meets a sphere at most twice, so every triple spans a plane. For the plane
  // whose two lowest-indexed points are (i, j), all other points have index > j.
  std::size_t best = 3;
  std::vector<LatticePoint> normals;
  normals.reserve(n);
  for (std::size_t i = 0; i + 2 < n; ++i) {
    for (std::size_t j = i + 1; j + 1 < n; ++j) {
      const LatticePoint u = pts[j] - pts[i];
      normals.clear();
      for (std::size_t k = j + 1; k < n; ++k) {
        normals.push_back(canonical_normal(cross(u, pts[k] - pts[i])));
      }
      std::sort(normals.begin(), normals.end());
      std::size_t run = 1;
      for (std::size_t t = 1; t <= normals.size(); ++t) {
        if (t < normals.size() && normals[t] == normals[t - 1]) {
          ++run;
        } else {
          best = std::max(best, run + 2);
          run = 1;
        }
      }
    }
  }
  return best;
}

std::uint64_t covering_bound(double r_sphere, double k, double theta, double omega,
                             const ChiFunction& chi) {
  require_radius(r_sphere);
  if (!(omega > 0.0 && omega < r_sphere)) {
    range_error("covering_bound: Omega must lie in (0, R)");
  }
  if (k < 0.0 || theta < 0.0) {
    range_error("covering_bound: k and theta must be nonnegative");
  }
  const double cap_radius = (2.0 * kPi + 0.5) * omega;
  const auto caps_around = static_cast<std::uint64_t>(std::ceil(k / omega));
  const auto caps_across = static_cast<std::uint64_t>(std::ceil(r_sphere * theta / omega));
  return static_cast<std::uint64_t>(chi(r_sphere, cap_radius)) * caps_around * caps_across;
}

std::uint64_t slicing_bound(std::size_t kappa_value, double r_sphere, const LatticePoint& b,
                            double h) {
  if (b == LatticePoint{}) {
    throw std::invalid_argument("slicing_bound: b must be a nonzero integer vector");
  }
  if (!(h >= 0.0 && h <= r_sphere * (1.0 + 1e-12))) {
    range_error("slicing_bound: h must lie in [0, R]");
  }
  const double planes = 1.0 + std::sqrt(static_cast<double>(b.norm2())) * h;
  return static_cast<std::uint64_t>(std::floor(static_cast<double>(kappa_value) * planes));
}

std::uint64_t slicing_bound(const Shell& shell, const LatticePoint& b, double h) {
  return slicing_bound(kappa(shell), shell.radius(), b, h);
}

bool Region::contains(const Vec3& point, double tol) const {
  return std::any_of(pieces.begin(), pieces.end(), [&](const Piece& piece) {
    return std::visit([&](const auto& p) { return p.contains(point, tol); }, piece);
  });
}

double Region::total_opening_angle() const {
  double total = 0.0;
  for (const auto& piece : pieces) {
    total += std::visit([](const auto& p) { return p.theta; }, piece);
  }
  return total;
}

Region cone_region(double r_sphere, const Vec3& b_point, const Vec3& beta, double c) {
  require_radius(r_sphere);
  if (!(c > 0.0 && c < 1.0)) {
    range_error("cone_region: c must lie in (0, 1)");
  }
  require_on_sphere(r_sphere, b_point);
  const Vec3 dir = unit_direction(beta);
  const double polar = angle_between(b_point, dir);
  // In the plane through B, 0 and beta the admissible chords from B reach polar angles
  // within 2 asin(c) of B's (reflected) latitude; off-plane chords reach no further.
  const double reach = 2.0 * std::asin(c);
  const double cap_radius = kConeCapConstant * c * r_sphere;
  if (polar <= reach || polar >= kPi - reach) {
    Region region;
    const Vec3 pole = polar <= reach ? dir : -dir;
    if (cap_radius >= 2.0 * r_sphere) {
      region.pieces.emplace_back(cap_from_chord(r_sphere, 2.0 * r_sphere, pole));
      region.clamped = true;
    } else {
      region.pieces.emplace_back(cap_from_chord(r_sphere, cap_radius, pole));
    }
    return region;
  }
  const double half_width = 2.0 * c * (1.0 + c * c);
  return band_region(r_sphere, dir, polar - half_width, polar + half_width);
}

Region slab_region(double r_sphere, const Vec3& b_point, const Vec3& beta, double c) {
  require_radius(r_sphere);
  if (!(c > 0.0)) {
    range_error("slab_region: c must be positive");
  }
  require_on_sphere(r_sphere, b_point);
  const Vec3 dir = unit_direction(beta);
  const double z = dot(b_point, dir);
  const double lower = z - c;
  const double upper = z + c;
  return band_region(r_sphere, dir, upper >= r_sphere ? 0.0 : polar_of_height(r_sphere, upper),
                     lower <= -r_sphere ? kPi : polar_of_height(r_sphere, lower));
}

}  // namespace nodal
