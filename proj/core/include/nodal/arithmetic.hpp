#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nodal/diophantine.hpp"
#include "nodal/lattice.hpp"
#include "nodal/random_wave.hpp"

namespace nodal {

/// |int_0^L e^{2 pi i t beta} dt|^2 = sin^2(pi L beta) / (pi beta)^2, and L^2 when
/// |beta| <= 1e-14.
double integral_sq(double beta, double length);

/// (1/N^2) sum over ordered pairs (mu, mu') of integral_sq(<mu - mu', alpha>, L).
double q_sum(const Shell& shell, const LineSegment& line);

/// Pair sums of the second moments of r and its derivatives, with the derivative
/// weights normalised by sqrt(m): w = <mu, alpha> / sqrt(m).
///   rr     = (1/N^2) sum I(beta)                    (equals the double integral of r^2)
///   r1r1   = (1/N^2) sum w w' I(beta)               (r1 = d r / d t1, scaled by 2 pi sqrt m)
///   r2r2   = r1r1
///   r12r12 = (1/N^2) sum w^2 w'^2 I(beta)           (scaled by 4 pi^2 m)
/// Each weighted sum is at most rr because I_{mu mu'} >= 0 and |w| <= 1.
struct R2Terms {
  double rr = 0.0;
  double r1r1 = 0.0;
  double r2r2 = 0.0;
  double r12r12 = 0.0;

  bool operator==(const R2Terms&) const = default;

  /// rr + 4 pi^2 (r1r1 + r2r2) + 16 pi^4 r12r12
  double total() const;
};

R2Terms r2_terms(const Shell& shell, const LineSegment& line);

enum class SplitMode { Absolute, Relative };

struct PairSums {
  std::uint64_t s_zero = 0;   ///< ordered pairs with <mu - mu', alpha> = 0, diagonal included
  std::uint64_t s_small = 0;  ///< pairs with |beta| <= rho (Absolute) or <= rho |mu - mu'| (Relative)
  double inv_sq_sum = 0.0;    ///< sum of 1/beta^2 over the remaining pairs
  double inv_dist_sq_sum = 0.0;  ///< sum of 1/|mu - mu'|^2 over the remaining pairs
  std::uint64_t tolerance_hits = 0;  ///< non-rational pairs with 0 < |beta| <= 1e-10 treated as zero
};

/// Exact integer arithmetic for Rational directions; tolerance 1e-10 for the zero test
/// otherwise. Parallel over the outer index; the result does not depend on the thread count.
PairSums pair_sums(const Shell& shell, const Direction& direction, double rho, SplitMode mode,
                   unsigned threads = 0);

enum class BoundMode { Rational, Irrational, HalfRational, Conditional };

std::string to_string(BoundMode mode);
BoundMode parse_bound_mode(const std::string& text);

struct BoundParams {
  std::optional<double> rho;
  std::optional<double> omega;
  std::optional<std::int64_t> h_param;
  std::optional<std::size_t> kappa;  ///< reuse a precomputed kappa
  unsigned threads = 0;
};

struct BoundReport {
  std::int64_t m = 0;
  std::string direction;
  double length = 0.0;
  BoundMode mode = BoundMode::Rational;
  std::size_t n = 0;
  std::size_t kappa = 0;
  std::uint64_t s_zero = 0;
  std::uint64_t s_small = 0;
  double inv_sq_sum = 0.0;
  double inv_dist_sq_sum = 0.0;
  double q_value = 0.0;
  R2Terms r2;
  double rho = 0.0;
  double omega = 0.0;
  std::int64_t h_param = 0;
  /// Segment-count diagnostics: psi bound shape (Irrational, HalfRational) or the
  /// covering bound of an equatorial band of height 2 rho (Conditional, when Omega < R).
  double psi_value = 0.0;
  std::optional<double> covering_value;
  /// The exact pair-sum quantity the selected proof bounds; always >= q_value.
  double intermediate = 0.0;
  double envelope_eps_001 = 0.0;
  double envelope_eps_005 = 0.0;
  double bound_value = 0.0;  ///< envelope at eps = 0.01 (kappa / N in Rational mode)
  bool conjecture_assumed = false;
  std::vector<std::string> warnings;

  bool operator==(const BoundReport&) const = default;
};

/// Rational: intermediate = q_value, envelope kappa/N.
/// Irrational (rho = m^{-3/7}) and HalfRational (rho = m^{-2/5}), relative split:
///   intermediate = (L^2 s_small + inv_dist_sq_sum / (pi^2 rho^2)) / N^2,
///   envelopes m^{-(1/7 - eps)} and m^{-(1/5 - eps)}.
/// Conditional (rho = R^{3/8}), absolute split:
///   intermediate = (L^2 s_small + inv_sq_sum / pi^2) / N^2, envelope m^{-(1/4 - eps)}.
/// Throws std::invalid_argument when the mode does not match the direction's class
/// (Conditional accepts any direction) or the shell is empty.
BoundReport variance_bound(const Shell& shell, const LineSegment& line, BoundMode mode,
                           const BoundParams& params = {});

struct RieszResult {
  double sigma = 0.0;
  double energy = 0.0;
  std::size_t n = 0;
  double limit_i = 0.0;
  double normalized_gap = 0.0;

  bool operator==(const RieszResult&) const = default;
};

/// Riesz sigma-energy over distinct ordered pairs, with I(sigma) = 2^{1-sigma} / (2 - sigma)
/// and gap |E / N^2 - I|. Throws for N < 2 or sigma outside (0, 2).
RieszResult riesz_energy(const ProjectedShell& projected, double sigma, unsigned threads = 0);

}  // namespace nodal
