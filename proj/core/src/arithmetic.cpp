#include "nodal/arithmetic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nodal/geometry.hpp"
#include "nodal/parallel.hpp"
#include "nodal/stats.hpp"

namespace nodal {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kZeroTol = 1e-10;

void require_nonempty(const Shell& shell, const char* what) {
  if (shell.empty()) {
    throw std::invalid_argument(std::string(what) + ": empty shell m = " +
                                std::to_string(shell.m()));
  }
}

// <mu, alpha> for every shell point, from the integer triple when there is one so that
// equal integer projections give equal doubles.
std::vector<double> projections(const Shell& shell, const Direction& direction) {
  std::vector<double> w(shell.n());
  if (direction.kind() == Direction::Kind::Rational) {
    const auto& t = direction.integer_triple();
    const double len = std::sqrt(static_cast<double>(t.norm2()));
    for (std::size_t i = 0; i < w.size(); ++i) {
      w[i] = static_cast<double>(dot(shell.points()[i], t)) / len;
    }
  } else {
    for (std::size_t i = 0; i < w.size(); ++i) {
      w[i] = dot(shell.points()[i], direction.unit());
    }
  }
  return w;
}

// Row-wise sums reduced in index order.
template <class Row>
std::vector<double> row_totals(std::size_t rows, std::size_t width, unsigned threads, Row row) {
  std::vector<double> partial(rows * width);
  parallel_for(
      rows, [&](std::size_t i) { row(i, std::span<double>(partial.data() + i * width, width)); },
      threads);
  std::vector<double> out(width);
  for (std::size_t k = 0; k < width; ++k) {
    CompensatedSum s;
    for (std::size_t i = 0; i < rows; ++i) s.add(partial[i * width + k]);
    out[k] = s.value();
  }
  return out;
}

}  // namespace

double integral_sq(double beta, double length) {
  if (!(length > 0.0)) throw std::invalid_argument("integral_sq: length must be positive");
  if (std::abs(beta) <= 1e-14) return length * length;
  const double s = std::sin(kPi * length * beta);
  const double d = kPi * beta;
  return s * s / (d * d);
}

double q_sum(const Shell& shell, const LineSegment& line) {
  return r2_terms(shell, line).rr;
}

double R2Terms::total() const {
  return rr + 4.0 * kPi * kPi * (r1r1 + r2r2) + 16.0 * kPi * kPi * kPi * kPi * r12r12;
}

R2Terms r2_terms(const Shell& shell, const LineSegment& line) {
  require_nonempty(shell, "r2_terms");
  const auto w = projections(shell, line.direction);
  const double root_m = shell.radius();
  const std::size_t n = w.size();
  const auto totals = row_totals(n, 3, 0, [&](std::size_t i, std::span<double> out) {
    CompensatedSum rr;
    CompensatedSum r1;
    CompensatedSum r12;
    const double wi = w[i] / root_m;
    for (std::size_t j = 0; j < n; ++j) {
      const double wj = w[j] / root_m;
      const double ij = integral_sq(w[i] - w[j], line.length);
      rr.add(ij);
      r1.add(wi * wj * ij);
      r12.add(wi * wi * wj * wj * ij);
    }
    out[0] = rr.value();
    out[1] = r1.value();
    out[2] = r12.value();
  });
  const double n2 = static_cast<double>(n) * static_cast<double>(n);
  R2Terms t;
  t.rr = totals[0] / n2;
  t.r1r1 = totals[1] / n2;
  t.r2r2 = t.r1r1;
  t.r12r12 = totals[2] / n2;
  return t;
}

PairSums pair_sums(const Shell& shell, const Direction& direction, double rho, SplitMode mode,
                   unsigned threads) {
  require_nonempty(shell, "pair_sums");
  if (!(rho >= 0.0)) throw std::invalid_argument("pair_sums: rho must be nonnegative");
  const auto& pts = shell.points();
  const std::size_t n = pts.size();
  const bool rational = direction.kind() == Direction::Kind::Rational;
  std::vector<std::int64_t> exact(n);
  double triple_len = 1.0;
  if (rational) {
    const auto& t = direction.integer_triple();
    triple_len = std::sqrt(static_cast<double>(t.norm2()));
    for (std::size_t i = 0; i < n; ++i) exact[i] = dot(pts[i], t);
  }
  const auto w = projections(shell, direction);

  // Columns: s_zero, s_small, inv_sq_sum, inv_dist_sq_sum, tolerance_hits.
  const auto totals = row_totals(n, 5, threads, [&](std::size_t i, std::span<double> out) {
    std::uint64_t zero = 0;
    std::uint64_t small = 0;
    std::uint64_t hits = 0;
    CompensatedSum inv_sq;
    CompensatedSum inv_dist;
    for (std::size_t j = 0; j < n; ++j) {
      const LatticePoint d = pts[i] - pts[j];
      const double dist_sq = static_cast<double>(d.norm2());
      bool is_zero = false;
      double beta = 0.0;
      if (rational) {
        const std::int64_t b = exact[i] - exact[j];
        is_zero = b == 0;
        beta = static_cast<double>(b) / triple_len;
      } else {
        beta = w[i] - w[j];
        is_zero = std::abs(beta) <= kZeroTol;
        if (is_zero && i != j) ++hits;
      }
      if (is_zero) ++zero;
      const double ab = is_zero ? 0.0 : std::abs(beta);
      const bool is_small =
          mode == SplitMode::Absolute ? ab <= rho : ab * ab <= rho * rho * dist_sq;
      if (is_small) {
        ++small;
      } else {
        inv_sq.add(1.0 / (beta * beta));
        inv_dist.add(1.0 / dist_sq);
      }
    }
    out[0] = static_cast<double>(zero);
    out[1] = static_cast<double>(small);
    out[2] = inv_sq.value();
    out[3] = inv_dist.value();
    out[4] = static_cast<double>(hits);
  });
  PairSums s;
  s.s_zero = static_cast<std::uint64_t>(totals[0]);
  s.s_small = static_cast<std::uint64_t>(totals[1]);
  s.inv_sq_sum = totals[2];
  s.inv_dist_sq_sum = totals[3];
  s.tolerance_hits = static_cast<std::uint64_t>(totals[4]);
  return s;
}

std::string to_string(BoundMode mode) {
  switch (mode) {
    case BoundMode::Rational:
      return "rational";
    case BoundMode::Irrational:
      return "irrational";
    case BoundMode::HalfRational:
      return "halfrational";
    case BoundMode::Conditional:
      return "conditional";
  }
  return "unknown";
}

BoundMode parse_bound_mode(const std::string& text) {
  for (auto mode : {BoundMode::Rational, BoundMode::Irrational, BoundMode::HalfRational,
                    BoundMode::Conditional}) {
    if (text == to_string(mode)) return mode;
  }
  throw std::invalid_argument("unknown bound mode '" + text +
                              "' (rational, irrational, halfrational, conditional)");
}

BoundReport variance_bound(const Shell& shell, const LineSegment& line, BoundMode mode,
                           const BoundParams& params) {
  require_nonempty(shell, "variance_bound");
  const Direction& dir = line.direction;
  const auto kind = dir.kind();
  const bool matches = mode == BoundMode::Conditional ||
                       (mode == BoundMode::Rational && kind == Direction::Kind::Rational) ||
                       (mode == BoundMode::Irrational && kind == Direction::Kind::Irrational) ||
                       (mode == BoundMode::HalfRational && kind == Direction::Kind::HalfRational);
  if (!matches) {
    throw std::invalid_argument("bound mode " + to_string(mode) + " does not apply to the " +
                                to_string(kind) + " direction " + dir.label());
  }

  BoundReport rep;
  rep.m = shell.m();
  rep.direction = dir.label();
  rep.length = line.length;
  rep.mode = mode;
  rep.n = shell.n();
  rep.kappa = params.kappa ? *params.kappa : kappa(shell);
  rep.r2 = r2_terms(shell, line);
  rep.q_value = rep.r2.rr;
  rep.conjecture_assumed = mode == BoundMode::Conditional;

  const double m = static_cast<double>(shell.m());
  const double R = shell.radius();
  const double L2 = line.length * line.length;
  const double n2 = static_cast<double>(rep.n) * static_cast<double>(rep.n);
  auto envelope = [&](double exponent, double eps) { return std::pow(m, -(exponent - eps)); };

  PairSums sums;
  switch (mode) {
    case BoundMode::Rational:
      rep.rho = params.rho.value_or(0.0);
      sums = pair_sums(shell, dir, rep.rho, SplitMode::Absolute, params.threads);
      rep.intermediate = rep.q_value;
      rep.envelope_eps_001 = rep.envelope_eps_005 =
          static_cast<double>(rep.kappa) / static_cast<double>(rep.n);
      break;
    case BoundMode::Irrational:
    case BoundMode::HalfRational: {
      const bool irr = mode == BoundMode::Irrational;
      rep.rho = params.rho.value_or(std::pow(m, irr ? -3.0 / 7.0 : -2.0 / 5.0));
      if (!(rep.rho > 0.0)) throw std::invalid_argument("rho must be positive");
      sums = pair_sums(shell, dir, rep.rho, SplitMode::Relative, params.threads);
      rep.intermediate =
          (L2 * static_cast<double>(sums.s_small) +
           sums.inv_dist_sq_sum / (kPi * kPi * rep.rho * rep.rho)) /
          n2;
      const double exponent = irr ? 1.0 / 7.0 : 1.0 / 5.0;
      rep.envelope_eps_001 = envelope(exponent, 0.01);
      rep.envelope_eps_005 = envelope(exponent, 0.05);
      const double theta = 8.0 * rep.rho * (1.0 + rep.rho * rep.rho);
      const auto psi = segment_psi_bound(rep.kappa, R, theta, dir, params.h_param);
      rep.h_param = psi.h_param;
      rep.psi_value = psi.value;
      break;
    }
    case BoundMode::Conditional: {
      rep.rho = params.rho.value_or(std::pow(R, 3.0 / 8.0));
      if (!(rep.rho > 0.0)) throw std::invalid_argument("rho must be positive");
      sums = pair_sums(shell, dir, rep.rho, SplitMode::Absolute, params.threads);
      rep.intermediate =
          (L2 * static_cast<double>(sums.s_small) + sums.inv_sq_sum / (kPi * kPi)) / n2;
      rep.envelope_eps_001 = envelope(0.25, 0.01);
      rep.envelope_eps_005 = envelope(0.25, 0.05);
      rep.psi_value = std::sqrt(R) + 2.0 * rep.rho;
      rep.omega = params.omega.value_or(std::sqrt(R));
      if (rep.omega > 0.0 && rep.omega < R) {
        const double height = std::min(2.0 * rep.rho, R);
        const double theta = segment_opening_angle(R, 0.0, height);
        auto chi = [&shell](double, double s) { return chi_hat(shell, std::min(s, 2.0 * shell.radius())); };
        rep.covering_value = static_cast<double>(covering_bound(R, R, theta, rep.omega, chi));
      } else {
        rep.warnings.push_back("omega outside (0, R); covering diagnostic skipped");
      }
      break;
    }
  }
  rep.s_zero = sums.s_zero;
  rep.s_small = sums.s_small;
  rep.inv_sq_sum = sums.inv_sq_sum;
  rep.inv_dist_sq_sum = sums.inv_dist_sq_sum;
  if (sums.tolerance_hits > 0) {
    rep.warnings.push_back(std::to_string(sums.tolerance_hits) +
                           " non-rational pairs hit the 1e-10 zero tolerance");
  }
  rep.bound_value = rep.envelope_eps_001;
  return rep;
}

RieszResult riesz_energy(const ProjectedShell& projected, double sigma, unsigned threads) {
  if (!(sigma > 0.0 && sigma < 2.0)) {
    throw std::invalid_argument("riesz_energy: sigma must lie in (0, 2)");
  }
  const auto& p = projected.unit_points();
  const std::size_t n = p.size();
  if (n < 2) throw std::invalid_argument("riesz_energy: needs at least two points");
  const auto totals = row_totals(n, 1, threads, [&](std::size_t i, std::span<double> out) {
    CompensatedSum s;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      s.add(std::pow(norm(p[i] - p[j]), -sigma));
    }
    out[0] = s.value();
  });
  RieszResult r;
  r.sigma = sigma;
  r.energy = totals[0];
  r.n = n;
  r.limit_i = std::pow(2.0, 1.0 - sigma) / (2.0 - sigma);
  const double nd = static_cast<double>(n);
  r.normalized_gap = std::abs(r.energy / (nd * nd) - r.limit_i);
  return r;
}

}  // namespace nodal
