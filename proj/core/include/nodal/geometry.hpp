#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "nodal/lattice.hpp"
#include "nodal/vec3.hpp"

namespace nodal {

/// A closed spherical cap on the sphere of radius r_sphere: the points P with
/// |P - r_sphere * direction| <= s. Chord radius s, height h, base radius k and
/// opening angle theta satisfy k^2 + h^2 = s^2 = 2 R h and s = 2 R sin(theta / 4).
///
/// Caps larger than a hemisphere (h > R) are representable; is_minor() tells them apart.
struct CapSpec {
  double r_sphere = 1.0;
  Vec3 direction{0.0, 0.0, 1.0};
  double s = 0.0;
  double h = 0.0;
  double k = 0.0;
  double theta = 0.0;

  bool is_minor() const { return h <= r_sphere; }
  /// Closed membership with absolute slack tol for points of the sphere.
  bool contains(const Vec3& point, double tol = 1e-12) const;
};

enum class CapParameter { ChordRadius, Height, BaseRadius, OpeningAngle };

/// Fills a cap from one of its four parameters. Legal ranges: s in [0, 2R], h in [0, 2R],
/// k in [0, R] (the minor cap is chosen), theta in [0, 2 pi]. Throws std::domain_error
/// naming the violated range.
CapSpec cap_from(double r_sphere, CapParameter which, double value,
                 const Vec3& direction = {0.0, 0.0, 1.0});

/// The part of the sphere between the planes <x, direction> = lower and = upper,
/// with lower = offset - h and upper = offset. Always contained in a closed hemisphere:
/// either upper <= 0 or lower >= 0. k is the radius of the larger base.
struct SegmentSpec {
  double r_sphere = 1.0;
  Vec3 direction{0.0, 0.0, 1.0};
  double h = 0.0;
  double k = 0.0;
  double theta = 0.0;
  double offset = 0.0;

  double lower() const { return offset - h; }
  double upper() const { return offset; }
  bool contains(const Vec3& point, double tol = 1e-12) const;
};

enum class Hemisphere { Upper, Lower };

/// Any two of (h, k, theta); a segment is determined by two of them and a hemisphere.
struct SegmentShape {
  std::optional<double> h;
  std::optional<double> k;
  std::optional<double> theta;
};

/// Builds the segment whose shape is fixed by exactly two entries of `shape`, lying in
/// the given hemisphere (Upper: 0 <= lower <= upper <= R). Throws std::invalid_argument
/// unless exactly two are set, std::domain_error when they admit no segment.
SegmentSpec segment_from(double r_sphere, const Vec3& direction, const SegmentShape& shape,
                         Hemisphere side);

/// Builds the segment between two plane positions. Throws std::domain_error if the slab
/// straddles the centre (use split_at_equator) or leaves [-R, R].
SegmentSpec segment_from_planes(double r_sphere, const Vec3& direction, double lower,
                                double upper);

/// Splits a slab through the centre into its lower and upper hemisphere segments,
/// which share the great circle at 0.
std::pair<SegmentSpec, SegmentSpec> split_at_equator(double r_sphere, const Vec3& direction,
                                                     double lower, double upper);

/// Opening angle of the slab [lower, upper] restricted to one hemisphere.
double segment_opening_angle(double r_sphere, double lower, double upper);

struct CountResult {
  std::size_t count = 0;
  std::vector<LatticePoint> witnesses;
};

/// Lattice points of the shell in the closed cap. Throws std::invalid_argument if the cap
/// is not on the sphere of radius sqrt(m) (tolerance 1e-9).
CountResult count_in_cap(const Shell& shell, const CapSpec& cap);

/// Lattice points with lower <= <mu, direction> <= upper (closed slab, no hemisphere
/// restriction).
CountResult count_in_slab(const Shell& shell, const Vec3& direction, double lower,
                          double upper);

/// count_in_slab over the segment's planes, after checking the radius matches.
CountResult count_in_segment(const Shell& shell, const SegmentSpec& segment);

/// Largest count_in_cap over caps of chord radius s centred at the lattice directions
/// mu / |mu|. This is a lower bound for the true cap maximum chi(sqrt(m), s).
std::size_t chi_hat(const Shell& shell, double s);

/// Exact maximum number of shell points on one plane. O(N^3 log N).
/// Throws std::invalid_argument on an empty shell.
std::size_t kappa(const Shell& shell);

using ChiFunction = std::function<std::size_t(double r_sphere, double cap_radius)>;

/// chi(R, (2 pi + 1/2) Omega) * ceil(k / Omega) * ceil(R theta / Omega), for 0 < Omega < R.
/// theta = 0 yields 0: pass a positive angle or use the slicing form for circles.
std::uint64_t covering_bound(double r_sphere, double k, double theta, double omega,
                             const ChiFunction& chi);

/// floor(kappa * (1 + |b| h)): the plane-slicing bound for a segment of height h whose
/// direction is the integer vector b. Throws on b = 0 or h outside [0, R].
std::uint64_t slicing_bound(const Shell& shell, const LatticePoint& b, double h);
/// Same, with kappa supplied by the caller.
std::uint64_t slicing_bound(std::size_t kappa_value, double r_sphere, const LatticePoint& b,
                            double h);

/// A closed region of the sphere made of caps and hemisphere segments.
struct Region {
  using Piece = std::variant<CapSpec, SegmentSpec>;
  std::vector<Piece> pieces;
  /// Set when the construction was truncated to the whole sphere.
  bool clamped = false;

  bool contains(const Vec3& point, double tol = 1e-9) const;
  /// Sum of the pieces' opening angles (caps count their own angle).
  double total_opening_angle() const;
};

/// Cap-radius constant j of cone_region's polar branch (cap of chord radius j c R).
inline constexpr double kConeCapConstant = 4.0;

/// A region containing every B' on the sphere with |<B - B', beta>| <= c |B - B'|.
/// Near the poles of beta the region is a cap of chord radius kConeCapConstant * c * R;
/// otherwise a band of opening angle 8 c (1 + c^2) around B's latitude, split at the
/// equator when needed. Requires 0 < c < 1 and B on the sphere (within 1e-9).
Region cone_region(double r_sphere, const Vec3& b_point, const Vec3& beta, double c);

/// A region containing every B' on the sphere with |<B - B', beta>| <= c: a band of
/// height 2c, or a cap of height at most 2c when the band runs past a pole.
/// Requires c > 0 and B on the sphere. When the band covers both poles the whole
/// sphere is returned with clamped = true.
Region slab_region(double r_sphere, const Vec3& b_point, const Vec3& beta, double c);

}  // namespace nodal
