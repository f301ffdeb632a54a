#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace nodal {

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double value);
  double value() const { return sum_ + correction_; }

 private:
  double sum_ = 0.0;
  double correction_ = 0.0;
};

/// Sums in index order with compensation, so the result does not depend on how the
/// terms were produced.
double compensated_total(std::span<const double> terms);

/// Average ranks (1-based), ties share the mean of their positions.
std::vector<double> average_ranks(std::span<const double> values);

struct SpearmanResult {
  double rho = 0.0;
  /// One-sided p-value for a decreasing trend: P(rho_null <= rho).
  double p_decreasing = 1.0;
  /// One-sided p-value for an increasing trend: P(rho_null >= rho).
  double p_increasing = 1.0;
  bool exact = false;
};

/// Spearman rank correlation between x and y. For n <= 9 the null distribution is
/// enumerated over all permutations; above that a t approximation is used.
SpearmanResult spearman(std::span<const double> x, std::span<const double> y);

}  // namespace nodal
