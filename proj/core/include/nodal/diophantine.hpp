#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "nodal/lattice.hpp"
#include "nodal/vec3.hpp"

namespace nodal {

/// coeff * sqrt(radicand), kept with a squarefree radicand (radicand 1 means an integer).
struct Surd {
  std::int64_t coeff = 0;
  std::int64_t radicand = 1;

  /// Pulls square factors out of the radicand: 3*sqrt12 becomes 6*sqrt3.
  static Surd make(std::int64_t coeff, std::int64_t radicand);
  /// Accepts "5", "-2", "sqrt3", "-sqrt3", "4*sqrt7", "4sqrt7".
  static Surd parse(std::string_view text);

  long double value() const;
  bool is_integer() const { return radicand == 1 || coeff == 0; }
  std::string str() const;
  bool operator==(const Surd&) const = default;
};

/// A unit direction alpha with its rationality class. The class is declared by the
/// recipe used to build the direction, never inferred from floating-point values.
///
/// Rational: alpha is proportional to an integer triple (stored primitive).
/// HalfRational: alpha is proportional to (v, u, s) with integers u, v > 0 and an
///   irrational surd s, so alpha2/alpha1 = u/v is rational and alpha3/alpha1 is not.
/// Irrational: alpha is proportional to three nonzero surds, the second and third
///   having squarefree parts different from the first's, so neither ratio is rational.
///
/// Directions are canonicalised so that the first nonzero component is positive.
class Direction {
 public:
  enum class Kind { Rational, HalfRational, Irrational };

  static Direction rational(std::int64_t a, std::int64_t b, std::int64_t c);
  static Direction half_rational(std::int64_t u, std::int64_t v, Surd third);
  static Direction irrational(Surd first, Surd second, Surd third);
  /// "rat:a,b,c", "halfrat:u,v,surd" or "irr:s1,s2,s3". Throws std::invalid_argument.
  static Direction parse(std::string_view text);

  Kind kind() const { return kind_; }
  const Vec3& unit() const { return unit_; }
  /// Primitive integer triple of a Rational direction; throws std::logic_error otherwise.
  const LatticePoint& integer_triple() const;
  /// u and v of a HalfRational direction; throw std::logic_error otherwise.
  std::int64_t u() const;
  std::int64_t v() const;
  /// Canonical text form; Direction::parse(label()) reproduces the direction.
  std::string label() const;

  bool operator==(const Direction& o) const { return label() == o.label(); }

 private:
  Direction() = default;

  Kind kind_ = Kind::Rational;
  Vec3 unit_;
  LatticePoint triple_;
  std::int64_t u_ = 0;
  std::int64_t v_ = 0;
  Surd surds_[3];
};

std::string to_string(Direction::Kind kind);

struct Dirichlet1D {
  std::int64_t p = 0;
  std::int64_t q = 1;
};

/// Smallest q in [1, H] with |q zeta - p| H < 1 for the nearest integer p. The inequality
/// is confirmed in exact rational arithmetic on the binary value of zeta.
Dirichlet1D dirichlet_1d(double zeta, std::int64_t h_param);

struct DirichletSim {
  std::int64_t q = 1;
  std::int64_t p1 = 0;
  std::int64_t p2 = 0;
};

/// Smallest q in [1, H^2] approximating zeta1 and zeta2 simultaneously to within 1/(qH).
/// Throws std::logic_error("Dirichlet guarantee violated") if the scan fails.
DirichletSim dirichlet_simultaneous(double zeta1, double zeta2, std::int64_t h_param);

struct RationalApprox {
  LatticePoint a;
  std::int64_t h_param = 1;
  double angle_err = 0.0;  ///< |alpha - a/|a||
  double phi = 0.0;        ///< angle between alpha and a
  double tau = 0.0;        ///< tau_alpha for half-rational directions, 0 otherwise
  Direction::Kind kind = Direction::Kind::Irrational;

  double a_norm() const { return std::sqrt(static_cast<double>(a.norm2())); }
};

/// Integer vector a close in angle to alpha with |a| controlled by H.
/// Irrational: coordinates are permuted so |alpha1| is largest, then a = (q, p1, p2) from
///   simultaneous approximation of the two ratios; |a| <= 3H^2, error < 6 sqrt2 / (|a| H).
/// HalfRational: a = (qv, qu, pv) from 1-D approximation of alpha3/alpha1, with
///   tau = max(|u|, v, 1/|alpha1|) + 1; |a| < sqrt3 tau^2 H, error < 2 sqrt3 tau^2 / (|a| H).
/// Throws std::invalid_argument("use exact integer direction") for Rational directions.
RationalApprox approx_direction(const Direction& direction, std::int64_t h_param);

/// |v/|v| - w/|w||, which never exceeds 2|v - w| / |w|. Throws on a zero vector.
double unit_difference_bound(const Vec3& v, const Vec3& w);

/// Evaluation of the segment-count bound shapes for a non-rational direction.
struct PsiBound {
  double value = 0.0;        ///< kappa (1 + R theta^e), e = 1/3 or 1/2
  double claim_value = 0.0;  ///< kappa (1 + R |a| (theta + phi)) for the chosen a
  double exponent = 0.0;
  std::int64_t h_param = 1;
  std::size_t kappa = 0;
  LatticePoint a;
  double phi = 0.0;
};

/// H defaults to floor(sqrt2 / theta^{1/3}) (Irrational) or floor(1 / theta^{1/2})
/// (HalfRational), at least 1. Throws std::domain_error for theta <= 0.
PsiBound segment_psi_bound(const Shell& shell, double theta, const Direction& direction,
                           std::optional<std::int64_t> h_override = std::nullopt);
PsiBound segment_psi_bound(std::size_t kappa_value, double r_sphere, double theta,
                           const Direction& direction,
                           std::optional<std::int64_t> h_override = std::nullopt);

}  // namespace nodal
