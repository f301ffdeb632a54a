#include "nodal/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <boost/math/distributions/students_t.hpp>

namespace nodal {

void CompensatedSum::add(double value) {
  const double t = sum_ + value;
  if (std::abs(sum_) >= std::abs(value)) {
    correction_ += (sum_ - t) + value;
  } else {
    correction_ += (value - t) + sum_;
  }
  sum_ = t;
}

double compensated_total(std::span<const double> terms) {
  CompensatedSum acc;
  for (double t : terms) {
    acc.add(t);
  }
  return acc.value();
}

std::vector<double> average_ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) {
      ++j;
    }
    const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) {
      ranks[order[k]] = rank;
    }
    i = j + 1;
  }
  return ranks;
}

namespace {

double pearson(std::span<const double> a, std::span<const double> b) {
  const double n = static_cast<double>(a.size());
  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
  const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
  double sab = 0.0;
  double saa = 0.0;
  double sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  if (saa == 0.0 || sbb == 0.0) {
    return 0.0;
  }
  return sab / std::sqrt(saa * sbb);
}

}  // namespace

SpearmanResult spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("spearman: x and y differ in length");
  }
  if (x.size() < 3) {
    throw std::invalid_argument("spearman: need at least 3 observations");
  }
  const auto rx = average_ranks(x);
  auto ry = average_ranks(y);
  SpearmanResult out;
  out.rho = pearson(rx, ry);

  const std::size_t n = x.size();
  constexpr double slack = 1e-12;
  if (n <= 9) {
    std::sort(ry.begin(), ry.end());
    std::size_t total = 0;
    std::size_t low = 0;
    std::size_t high = 0;
    do {
      const double r = pearson(rx, ry);
      ++total;
      if (r <= out.rho + slack) {
        ++low;
      }
      if (r >= out.rho - slack) {
        ++high;
      }
    } while (std::next_permutation(ry.begin(), ry.end()));
    out.p_decreasing = static_cast<double>(low) / static_cast<double>(total);
    out.p_increasing = static_cast<double>(high) / static_cast<double>(total);
    out.exact = true;
    return out;
  }

  const double df = static_cast<double>(n) - 2.0;
  const double r = std::clamp(out.rho, -1.0 + 1e-15, 1.0 - 1e-15);
  const double t = r * std::sqrt(df / (1.0 - r * r));
  boost::math::students_t dist(df);
  out.p_decreasing = boost::math::cdf(dist, t);
  out.p_increasing = boost::math::cdf(boost::math::complement(dist, t));
  return out;
}

}  // namespace nodal
