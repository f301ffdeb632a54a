#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "nodal/random_wave.hpp"

namespace nodal {

/// f(t) = sum_k c_k cos(2 pi w_k t) + s_k sin(2 pi w_k t) with w_k >= 0: the restriction
/// of a wave to a line, with the 1/sqrt(N) factor and the base-point phases folded in and
/// equal frequencies merged.
class LineProcess {
 public:
  LineProcess(const Shell& shell, std::span<const std::complex<double>> representatives,
              const LineSegment& line);
  explicit LineProcess(const WaveSample& sample, const LineSegment& line)
      : LineProcess(sample.shell(), sample.representatives(), line) {}

  double value(double t) const;
  double derivative(double t) const;
  double length() const { return length_; }
  double max_frequency() const { return max_frequency_; }
  /// sqrt(sum c_k^2 + s_k^2): the magnitude scale of f.
  double scale() const { return scale_; }
  std::size_t terms() const { return freq_.size(); }

 private:
  std::vector<double> freq_;
  std::vector<double> cos_coeff_;
  std::vector<double> sin_coeff_;
  double length_ = 0.0;
  double max_frequency_ = 0.0;
  double scale_ = 0.0;
};

struct ZeroFlags {
  bool refinement_depth_hit = false;
  bool near_tangency = false;
};

struct ZeroCount {
  std::size_t count = 0;
  std::vector<double> roots;
  ZeroFlags flags;
};

/// Thrown when f vanishes at every grid point.
class DegenerateSample : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kDefaultGridFactor = 8.0;

/// Zeros of f on [0, L], counted by sign changes on a grid of
/// ceil(grid_factor * 2 * f_max * L) + 1 points. Each change is refined to 1e-12. Between
/// grid points of equal sign where f' changes sign toward zero, the extremum is located
/// and two roots are counted if f crosses there. Grid values below 1e-10 * scale trigger
/// an 8x local refinement. A touch without a crossing counts 0 and sets near_tangency.
/// Throws std::invalid_argument for grid_factor < 4, DegenerateSample if f vanishes on the grid.
ZeroCount count_zeros(const LineProcess& f, double grid_factor = kDefaultGridFactor);
ZeroCount count_zeros(const WaveSample& sample, const LineSegment& line,
                      double grid_factor = kDefaultGridFactor);

struct MonteCarloReport {
  std::int64_t m = 0;
  std::string direction;
  double length = 0.0;
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
  double mean = 0.0;
  double variance = 0.0;  ///< unbiased sample variance of Z
  double std_err = 0.0;   ///< sqrt(variance / trials)
  std::map<std::int64_t, std::int64_t> histogram;
  std::int64_t flagged_trials = 0;

  bool operator==(const MonteCarloReport&) const = default;
};

struct MonteCarloOptions {
  double grid_factor = kDefaultGridFactor;
  unsigned threads = 0;  ///< 0 = default_threads(); never changes the result
};

/// Trial k draws its coefficients from RandomStream(seed, k). The report is assembled
/// from integer counts in trial order, so it is bit-identical for every thread count.
/// Throws std::invalid_argument for trials < 2; a DegenerateSample names the trial.
MonteCarloReport monte_carlo(const Shell& shell, const LineSegment& line, std::int64_t trials,
                             std::uint64_t seed, const MonteCarloOptions& options = {});

}  // namespace nodal
