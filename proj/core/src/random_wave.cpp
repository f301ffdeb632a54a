#include "nodal/random_wave.hpp"

#include <numbers>
#include <stdexcept>
#include <string>

#include "nodal/stats.hpp"

namespace nodal {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// 2 pi times the fractional part of p, which keeps the argument of cos/sin small.
double turn(double p) { return kTwoPi * (p - std::floor(p)); }

void check_t(const LineSegment& line, double t) {
  const double slack = 1e-12 * std::max(1.0, line.length);
  if (!(t >= -slack && t <= line.length + slack)) {
    throw std::domain_error("t = " + std::to_string(t) + " outside [0, " +
                            std::to_string(line.length) + "]");
  }
}

}  // namespace

LineSegment::LineSegment(Direction dir, double len, Vec3 base_point)
    : direction(std::move(dir)), length(len), base(base_point) {
  if (!(len > 0.0) || !std::isfinite(len)) {
    throw std::invalid_argument("segment length must be positive and finite");
  }
}

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  engine_.seed(seq);
}

std::complex<double> RandomStream::complex_gaussian() {
  const double re = normal_(engine_);
  const double im = normal_(engine_);
  return {re, im};
}

WaveSample::WaveSample(std::shared_ptr<const Shell> shell,
                       std::vector<std::complex<double>> representatives)
    : shell_(std::move(shell)), reps_(std::move(representatives)) {
  if (!shell_ || shell_->empty()) {
    throw std::invalid_argument("wave sample needs a nonempty shell");
  }
  if (reps_.size() != shell_->n() / 2) {
    throw std::invalid_argument("wave sample needs n/2 = " + std::to_string(shell_->n() / 2) +
                                " coefficients, got " + std::to_string(reps_.size()));
  }
}

std::complex<double> WaveSample::coefficient(std::size_t i) const {
  const std::size_t half = shell_->n() / 2;
  return i >= half ? reps_[i - half] : std::conj(reps_[shell_->antipode_index(i) - half]);
}

std::vector<std::complex<double>> draw_representatives(const Shell& shell, RandomStream& rng) {
  if (shell.empty()) {
    throw std::invalid_argument("cannot sample a wave on the empty shell m = " +
                                std::to_string(shell.m()));
  }
  std::vector<std::complex<double>> reps(shell.n() / 2);
  for (auto& a : reps) {
    a = rng.complex_gaussian();
  }
  return reps;
}

WaveSample sample_wave(std::shared_ptr<const Shell> shell, std::uint64_t seed,
                       std::uint64_t stream) {
  if (!shell) throw std::invalid_argument("sample_wave: null shell");
  RandomStream rng(seed, stream);
  auto reps = draw_representatives(*shell, rng);
  return WaveSample(std::move(shell), std::move(reps));
}

double evaluate_F(const WaveSample& sample, const Vec3& x) {
  const auto& pts = sample.shell().points();
  const std::size_t half = pts.size() / 2;
  const auto reps = sample.representatives();
  CompensatedSum sum;
  for (std::size_t j = 0; j < reps.size(); ++j) {
    const double arg = turn(dot(pts[half + j], x));
    sum.add(reps[j].real() * std::cos(arg) - reps[j].imag() * std::sin(arg));
  }
  return 2.0 * sum.value() / std::sqrt(static_cast<double>(pts.size()));
}

std::complex<double> evaluate_F_complex(const WaveSample& sample, const Vec3& x) {
  const auto& pts = sample.shell().points();
  CompensatedSum re;
  CompensatedSum im;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto term = sample.coefficient(i) * std::polar(1.0, turn(dot(pts[i], x)));
    re.add(term.real());
    im.add(term.imag());
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(pts.size()));
  return {re.value() * scale, im.value() * scale};
}

double evaluate_f(const WaveSample& sample, const LineSegment& line, double t) {
  check_t(line, t);
  return evaluate_F(sample, line.point(t));
}

double evaluate_f_prime(const WaveSample& sample, const LineSegment& line, double t) {
  check_t(line, t);
  const auto& pts = sample.shell().points();
  const std::size_t half = pts.size() / 2;
  const auto reps = sample.representatives();
  const Vec3 x = line.point(t);
  const Vec3& alpha = line.direction.unit();
  CompensatedSum sum;
  for (std::size_t j = 0; j < reps.size(); ++j) {
    const double arg = turn(dot(pts[half + j], x));
    const double w = dot(pts[half + j], alpha);
    sum.add(-kTwoPi * w * (reps[j].real() * std::sin(arg) + reps[j].imag() * std::cos(arg)));
  }
  return 2.0 * sum.value() / std::sqrt(static_cast<double>(pts.size()));
}

CovarianceValues covariance(const Shell& shell, const Direction& direction, double t1,
                            double t2) {
  if (shell.empty()) {
    throw std::invalid_argument("covariance: empty shell m = " + std::to_string(shell.m()));
  }
  const double tau = t1 - t2;
  const Vec3& alpha = direction.unit();
  CompensatedSum r;
  CompensatedSum r1;
  CompensatedSum r12;
  for (const auto& mu : shell.points()) {
    const double w = dot(mu, alpha);
    const double arg = kTwoPi * tau * w;
    const double c = std::cos(arg);
    r.add(c);
    r1.add(-kTwoPi * w * std::sin(arg));
    r12.add(kTwoPi * kTwoPi * w * w * c);
  }
  const double n = static_cast<double>(shell.n());
  CovarianceValues out;
  out.r = r.value() / n;
  out.r1 = r1.value() / n;
  out.r2 = -out.r1;
  out.r12 = r12.value() / n;
  return out;
}

double second_moment_ratio(const Shell& shell, const Direction& direction) {
  if (shell.empty()) {
    throw std::invalid_argument("second_moment_ratio: empty shell");
  }
  CompensatedSum sum;
  for (const auto& mu : shell.points()) {
    const double w = dot(mu, direction.unit());
    sum.add(w * w);
  }
  return 3.0 * sum.value() / (static_cast<double>(shell.n()) * static_cast<double>(shell.m()));
}

}  // namespace nodal
