#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <vector>

#include "nodal/diophantine.hpp"
#include "nodal/lattice.hpp"
#include "nodal/vec3.hpp"

namespace nodal {

/// The segment gamma(t) = base + t * alpha, 0 <= t <= length.
struct LineSegment {
  Direction direction;
  double length = 1.0;
  Vec3 base{};

  /// Throws std::invalid_argument unless length > 0 and finite.
  LineSegment(Direction dir, double len, Vec3 base_point = {});

  Vec3 point(double t) const { return base + direction.unit() * t; }
};

/// A seedable generator with independent substreams: stream (seed, k) is seeded from
/// all four 32-bit halves of seed and k, so trial k of a run never depends on trial k-1.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream);

  /// Complex Gaussian with independent parts of variance 1/2.
  std::complex<double> complex_gaussian();
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, std::sqrt(0.5)};
};

/// One draw of the coefficients a_mu. Only one member of each antipodal pair is stored:
/// the representative of pair {i, n-1-i} is the index i >= n/2, and a_{-mu} = conj(a_mu)
/// holds by construction.
class WaveSample {
 public:
  /// representatives[j] is a_mu for mu = shell.points()[n/2 + j].
  WaveSample(std::shared_ptr<const Shell> shell, std::vector<std::complex<double>> representatives);

  const Shell& shell() const { return *shell_; }
  std::shared_ptr<const Shell> shell_ptr() const { return shell_; }
  std::span<const std::complex<double>> representatives() const { return reps_; }
  /// a_mu for mu = shell().points()[i].
  std::complex<double> coefficient(std::size_t i) const;

 private:
  std::shared_ptr<const Shell> shell_;
  std::vector<std::complex<double>> reps_;
};

/// Draws n/2 coefficients from the stream. Throws std::invalid_argument on an empty shell.
std::vector<std::complex<double>> draw_representatives(const Shell& shell, RandomStream& rng);

/// Sample with coefficients from RandomStream(seed, stream).
WaveSample sample_wave(std::shared_ptr<const Shell> shell, std::uint64_t seed,
                       std::uint64_t stream = 0);

/// F(x) through the cosine/sine form over representatives.
double evaluate_F(const WaveSample& sample, const Vec3& x);
/// F(x) as the full complex sum; the imaginary part is rounding noise.
std::complex<double> evaluate_F_complex(const WaveSample& sample, const Vec3& x);

/// f(t) = F(gamma(t)) and its derivative. Throw std::domain_error for t outside [0, L].
double evaluate_f(const WaveSample& sample, const LineSegment& line, double t);
double evaluate_f_prime(const WaveSample& sample, const LineSegment& line, double t);

struct CovarianceValues {
  double r = 0.0;
  double r1 = 0.0;   ///< d r / d t1
  double r2 = 0.0;   ///< d r / d t2
  double r12 = 0.0;  ///< d^2 r / d t1 d t2
};

/// Closed-form covariance of f at (t1, t2), summed over the whole shell.
CovarianceValues covariance(const Shell& shell, const Direction& direction, double t1, double t2);

/// (3 / (N m)) * sum over the shell of <mu, alpha>^2. Equal to 1 for every direction,
/// since the shell's second-moment matrix is (N m / 3) I.
double second_moment_ratio(const Shell& shell, const Direction& direction);

}  // namespace nodal
