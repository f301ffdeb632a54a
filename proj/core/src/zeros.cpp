#include "nodal/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "nodal/parallel.hpp"

namespace nodal {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kRootTol = 1e-12;
constexpr int kMaxRefineDepth = 4;
constexpr int kRefineSplit = 8;

double turn(double p) { return kTwoPi * (p - std::floor(p)); }

class ZeroFinder {
 public:
  ZeroFinder(const LineProcess& f, double threshold) : f_(f), threshold_(threshold) {}

  void interval(double a, double b, double fa, double fb, double da, double db, int depth) {
    const bool small_end = std::abs(fa) < threshold_ || std::abs(fb) < threshold_;
    if (small_end) {
      if (depth < kMaxRefineDepth) {
        refine(a, b, fa, fb, da, db, depth);
        return;
      }
      out.flags.refinement_depth_hit = true;
    }
    const bool sa = fa >= 0.0;
    const bool sb = fb >= 0.0;
    if (sa != sb) {
      out.roots.push_back(bracketed_root(a, b, fa));
      return;
    }
    // Same sign at both ends: look for an extremum that dips across zero.
    const bool heads_to_zero = sa ? (da < 0.0 && db > 0.0) : (da > 0.0 && db < 0.0);
    if (!heads_to_zero) return;
    const double c = critical_point(a, b, da);
    const double fc = f_.value(c);
    if ((fc >= 0.0) != sa) {
      out.roots.push_back(bracketed_root(a, c, fa));
      out.roots.push_back(bracketed_root(c, b, fc));
    } else if (std::abs(fc) < threshold_) {
      out.flags.near_tangency = true;
    }
  }

  ZeroCount out;

 private:
  void refine(double a, double b, double fa, double fb, double da, double db, int depth) {
    double prev_t = a;
    double prev_f = fa;
    double prev_d = da;
    for (int k = 1; k <= kRefineSplit; ++k) {
      const double t = k == kRefineSplit ? b : a + (b - a) * k / kRefineSplit;
      const double ft = k == kRefineSplit ? fb : f_.value(t);
      const double dt = k == kRefineSplit ? db : f_.derivative(t);
      interval(prev_t, t, prev_f, ft, prev_d, dt, depth + 1);
      prev_t = t;
      prev_f = ft;
      prev_d = dt;
    }
  }

  // Safeguarded Newton on a sign-change bracket; falls back to bisection whenever the
  // Newton step leaves the bracket.
  double bracketed_root(double lo, double hi, double flo) const {
    const bool slo = flo >= 0.0;
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
      const double fx = f_.value(x);
      if (fx == 0.0) return x;
      if ((fx >= 0.0) == slo) {
        lo = x;
      } else {
        hi = x;
      }
      if (hi - lo < kRootTol) break;
      const double dx = f_.derivative(x);
      const double step = dx != 0.0 ? fx / dx : 0.0;
      const double next = x - step;
      if (dx != 0.0 && next > lo && next < hi) {
        if (std::abs(step) < 0.1 * kRootTol) return next;
        x = next;
      } else {
        x = 0.5 * (lo + hi);
      }
    }
    return 0.5 * (lo + hi);
  }

  double critical_point(double lo, double hi, double dlo) const {
    const bool slo = dlo >= 0.0;
    while (hi - lo > 0.1 * kRootTol) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      ((f_.derivative(mid) >= 0.0) == slo ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  }

  const LineProcess& f_;
  double threshold_;
};

}  // namespace

LineProcess::LineProcess(const Shell& shell, std::span<const std::complex<double>> reps,
                         const LineSegment& line)
    : length_(line.length) {
  if (shell.empty()) {
    throw std::invalid_argument("line process on an empty shell");
  }
  const std::size_t half = shell.n() / 2;
  if (reps.size() != half) {
    throw std::invalid_argument("line process needs n/2 coefficients");
  }
  const double norm = 2.0 / std::sqrt(static_cast<double>(shell.n()));
  struct Term {
    double w;
    double c;
    double s;
  };
  std::vector<Term> terms;
  terms.reserve(half);
  const Vec3& alpha = line.direction.unit();
  for (std::size_t j = 0; j < half; ++j) {
    const auto& mu = shell.points()[half + j];
    double w = dot(mu, alpha);
    std::complex<double> b = reps[j] * std::polar(norm, turn(dot(mu, line.base)));
    if (w < 0.0) {
      w = -w;
      b = std::conj(b);
    }
    // Re(b e^{2 pi i w t}) = Re(b) cos - Im(b) sin
    terms.push_back({w, b.real(), -b.imag()});
  }
  std::sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) { return x.w < y.w; });
  for (const auto& t : terms) {
    if (!freq_.empty() && t.w - freq_.back() <= 1e-12 * std::max(1.0, t.w)) {
      cos_coeff_.back() += t.c;
      sin_coeff_.back() += t.s;
    } else {
      freq_.push_back(t.w);
      cos_coeff_.push_back(t.c);
      sin_coeff_.push_back(t.s);
    }
  }
  max_frequency_ = freq_.empty() ? 0.0 : freq_.back();
  double sq = 0.0;
  for (std::size_t k = 0; k < freq_.size(); ++k) {
    sq += cos_coeff_[k] * cos_coeff_[k] + sin_coeff_[k] * sin_coeff_[k];
  }
  scale_ = std::sqrt(sq);
}

double LineProcess::value(double t) const {
  double sum = 0.0;
  for (std::size_t k = 0; k < freq_.size(); ++k) {
    const double arg = turn(freq_[k] * t);
    sum += cos_coeff_[k] * std::cos(arg) + sin_coeff_[k] * std::sin(arg);
  }
  return sum;
}

double LineProcess::derivative(double t) const {
  double sum = 0.0;
  for (std::size_t k = 0; k < freq_.size(); ++k) {
    const double arg = turn(freq_[k] * t);
    sum += kTwoPi * freq_[k] * (sin_coeff_[k] * std::cos(arg) - cos_coeff_[k] * std::sin(arg));
  }
  return sum;
}

ZeroCount count_zeros(const LineProcess& f, double grid_factor) {
  if (!(grid_factor >= 4.0) || !std::isfinite(grid_factor)) {
    throw std::invalid_argument("grid_factor must be at least 4");
  }
  const double L = f.length();
  const double cells = std::ceil(grid_factor * 2.0 * f.max_frequency() * L);
  const auto n = static_cast<std::size_t>(std::max(2.0, cells + 1.0));
  std::vector<double> t(n);
  std::vector<double> v(n);
  std::vector<double> d(n);
  bool all_tiny = true;
  for (std::size_t i = 0; i < n; ++i) {
    t[i] = i + 1 == n ? L : L * static_cast<double>(i) / static_cast<double>(n - 1);
    v[i] = f.value(t[i]);
    d[i] = f.derivative(t[i]);
    all_tiny = all_tiny && std::abs(v[i]) < 1e-13;
  }
  if (all_tiny) {
    throw DegenerateSample("degenerate sample: f vanishes on the whole grid");
  }
  ZeroFinder finder(f, 1e-10 * f.scale());
  for (std::size_t i = 0; i + 1 < n; ++i) {
    finder.interval(t[i], t[i + 1], v[i], v[i + 1], d[i], d[i + 1], 0);
  }
  ZeroCount out = std::move(finder.out);
  std::sort(out.roots.begin(), out.roots.end());
  // Two crossings closer than the root tolerance are a touch: count neither.
  std::vector<double> kept;
  kept.reserve(out.roots.size());
  for (std::size_t i = 0; i < out.roots.size(); ++i) {
    if (i + 1 < out.roots.size() && out.roots[i + 1] - out.roots[i] <= 2.0 * kRootTol) {
      out.flags.near_tangency = true;
      ++i;
      continue;
    }
    kept.push_back(out.roots[i]);
  }
  out.roots = std::move(kept);
  out.count = out.roots.size();
  return out;
}

ZeroCount count_zeros(const WaveSample& sample, const LineSegment& line, double grid_factor) {
  return count_zeros(LineProcess(sample, line), grid_factor);
}

MonteCarloReport monte_carlo(const Shell& shell, const LineSegment& line, std::int64_t trials,
                             std::uint64_t seed, const MonteCarloOptions& options) {
  if (trials < 2) {
    throw std::invalid_argument("monte_carlo needs at least 2 trials");
  }
  if (shell.empty()) {
    throw std::invalid_argument("monte_carlo: empty shell m = " + std::to_string(shell.m()));
  }
  const auto count = static_cast<std::size_t>(trials);
  std::vector<std::int64_t> zeros(count);
  std::vector<char> flagged(count);
  parallel_for(
      count,
      [&](std::size_t k) {
        RandomStream rng(seed, k);
        const auto reps = draw_representatives(shell, rng);
        try {
          const auto z = count_zeros(LineProcess(shell, reps, line), options.grid_factor);
          zeros[k] = static_cast<std::int64_t>(z.count);
          flagged[k] = z.flags.near_tangency || z.flags.refinement_depth_hit;
        } catch (const DegenerateSample& e) {
          throw DegenerateSample("trial " + std::to_string(k) + ": " + e.what());
        }
      },
      options.threads);

  MonteCarloReport report;
  report.m = shell.m();
  report.direction = line.direction.label();
  report.length = line.length;
  report.trials = trials;
  report.seed = seed;
  long double sum = 0.0L;
  long double sum_sq = 0.0L;
  for (std::size_t k = 0; k < count; ++k) {
    sum += static_cast<long double>(zeros[k]);
    sum_sq += static_cast<long double>(zeros[k]) * static_cast<long double>(zeros[k]);
    ++report.histogram[zeros[k]];
    report.flagged_trials += flagged[k];
  }
  const long double n = static_cast<long double>(trials);
  report.mean = static_cast<double>(sum / n);
  report.variance = static_cast<double>((n * sum_sq - sum * sum) / (n * (n - 1.0L)));
  report.std_err = std::sqrt(report.variance / static_cast<double>(trials));
  return report;
}

}  // namespace nodal
