#include "nodal/diophantine.hpp"

#include <algorithm>
#include <array>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <numbers>
#include <numeric>
#include <regex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "nodal/geometry.hpp"

namespace nodal {

namespace {

using boost::multiprecision::cpp_rational;

std::int64_t parse_int(const std::string& text, std::string_view context) {
  std::size_t used = 0;
  std::int64_t value = 0;
  try {
    value = std::stoll(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw std::invalid_argument("bad integer '" + text + "' in " + std::string(context));
  }
  return value;
}

std::vector<std::string> split_commas(std::string_view text) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : text) {
    if (ch == ',') {
      parts.push_back(cur);
      cur.clear();
    } else if (ch != ' ') {
      cur.push_back(ch);
    }
  }
  parts.push_back(cur);
  return parts;
}

Vec3 unit_from(long double a, long double b, long double c) {
  const long double n = std::sqrt(a * a + b * b + c * c);
  return {static_cast<double>(a / n), static_cast<double>(b / n), static_cast<double>(c / n)};
}

// |q zeta - p| * H < 1, exactly.
bool within(const cpp_rational& zeta, std::int64_t p, std::int64_t q, std::int64_t h) {
  cpp_rational diff = zeta * q - p;
  if (diff < 0) diff = -diff;
  return diff * h < 1;
}

std::int64_t nearest(double x) { return static_cast<std::int64_t>(std::llround(x)); }

}  // namespace

Surd Surd::make(std::int64_t coeff, std::int64_t radicand) {
  if (radicand < 1) {
    throw std::invalid_argument("surd radicand must be positive");
  }
  for (std::int64_t f = 2; f * f <= radicand; ++f) {
    while (radicand % (f * f) == 0) {
      radicand /= f * f;
      coeff *= f;
    }
  }
  if (coeff == 0) radicand = 1;
  return {coeff, radicand};
}

Surd Surd::parse(std::string_view text) {
  static const std::regex pattern(R"(^([+-]?)(\d*)\*?sqrt\(?(\d+)\)?$)");
  const std::string s(text);
  std::smatch match;
  if (std::regex_match(s, match, pattern)) {
    std::int64_t coeff = match[2].length() ? parse_int(match[2].str(), s) : 1;
    if (match[1].str() == "-") coeff = -coeff;
    return make(coeff, parse_int(match[3].str(), s));
  }
  return make(parse_int(s, "surd"), 1);
}

long double Surd::value() const {
  return static_cast<long double>(coeff) * std::sqrt(static_cast<long double>(radicand));
}

std::string Surd::str() const {
  if (is_integer()) return std::to_string(coeff);
  std::string out;
  if (coeff == -1) {
    out = "-";
  } else if (coeff != 1) {
    out = std::to_string(coeff) + "*";
  }
  return out + "sqrt" + std::to_string(radicand);
}

std::string to_string(Direction::Kind kind) {
  switch (kind) {
    case Direction::Kind::Rational:
      return "rational";
    case Direction::Kind::HalfRational:
      return "halfrational";
    case Direction::Kind::Irrational:
      return "irrational";
  }
  return "unknown";
}

Direction Direction::rational(std::int64_t a, std::int64_t b, std::int64_t c) {
  const std::int64_t g = std::gcd(std::gcd(std::abs(a), std::abs(b)), std::abs(c));
  if (g == 0) {
    throw std::invalid_argument("rational direction must be a nonzero triple");
  }
  LatticePoint t{a / g, b / g, c / g};
  if (t.x < 0 || (t.x == 0 && (t.y < 0 || (t.y == 0 && t.z < 0)))) t = -t;
  Direction d;
  d.kind_ = Kind::Rational;
  d.triple_ = t;
  d.unit_ = unit_from(t.x, t.y, t.z);
  d.surds_[0] = {t.x, 1};
  d.surds_[1] = {t.y, 1};
  d.surds_[2] = {t.z, 1};
  return d;
}

Direction Direction::half_rational(std::int64_t u, std::int64_t v, Surd third) {
  third = Surd::make(third.coeff, third.radicand);
  if (v == 0) {
    throw std::invalid_argument("half-rational direction needs v != 0");
  }
  if (third.is_integer()) {
    throw std::invalid_argument("half-rational direction needs an irrational third entry, got " +
                                third.str());
  }
  if (v < 0) {
    u = -u;
    v = -v;
    third.coeff = -third.coeff;
  }
  const std::int64_t g = std::gcd(std::abs(u), v);
  Direction d;
  d.kind_ = Kind::HalfRational;
  d.u_ = u / g;
  d.v_ = v / g;
  d.surds_[0] = {v, 1};
  d.surds_[1] = {u, 1};
  d.surds_[2] = third;
  d.unit_ = unit_from(v, u, third.value());
  return d;
}

Direction Direction::irrational(Surd first, Surd second, Surd third) {
  std::array<Surd, 3> s{Surd::make(first.coeff, first.radicand),
                        Surd::make(second.coeff, second.radicand),
                        Surd::make(third.coeff, third.radicand)};
  for (const auto& x : s) {
    if (x.coeff == 0) {
      throw std::invalid_argument("irrational direction needs nonzero entries");
    }
  }
  if (s[1].radicand == s[0].radicand || s[2].radicand == s[0].radicand) {
    throw std::invalid_argument("irrational direction: " + s[1].str() + " or " + s[2].str() +
                                " is a rational multiple of " + s[0].str());
  }
  if (s[0].coeff < 0) {
    for (auto& x : s) x.coeff = -x.coeff;
  }
  Direction d;
  d.kind_ = Kind::Irrational;
  std::copy(s.begin(), s.end(), d.surds_);
  d.unit_ = unit_from(s[0].value(), s[1].value(), s[2].value());
  return d;
}

Direction Direction::parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw std::invalid_argument("direction '" + std::string(text) +
                                "' must look like rat:a,b,c, halfrat:u,v,surd or irr:s1,s2,s3");
  }
  const std::string kind(text.substr(0, colon));
  const auto parts = split_commas(text.substr(colon + 1));
  if (parts.size() != 3) {
    throw std::invalid_argument("direction '" + std::string(text) + "' needs three entries");
  }
  if (kind == "rat") {
    return rational(parse_int(parts[0], text), parse_int(parts[1], text),
                    parse_int(parts[2], text));
  }
  if (kind == "halfrat") {
    return half_rational(parse_int(parts[0], text), parse_int(parts[1], text),
                         Surd::parse(parts[2]));
  }
  if (kind == "irr") {
    return irrational(Surd::parse(parts[0]), Surd::parse(parts[1]), Surd::parse(parts[2]));
  }
  throw std::invalid_argument("unknown direction kind '" + kind + "'");
}

const LatticePoint& Direction::integer_triple() const {
  if (kind_ != Kind::Rational) throw std::logic_error("direction is not rational");
  return triple_;
}

std::int64_t Direction::u() const {
  if (kind_ != Kind::HalfRational) throw std::logic_error("direction is not half-rational");
  return u_;
}

std::int64_t Direction::v() const {
  if (kind_ != Kind::HalfRational) throw std::logic_error("direction is not half-rational");
  return v_;
}

std::string Direction::label() const {
  switch (kind_) {
    case Kind::Rational:
      return "rat:" + std::to_string(triple_.x) + "," + std::to_string(triple_.y) + "," +
             std::to_string(triple_.z);
    case Kind::HalfRational:
      return "halfrat:" + std::to_string(surds_[1].coeff) + "," + std::to_string(surds_[0].coeff) +
             "," + surds_[2].str();
    case Kind::Irrational:
      return "irr:" + surds_[0].str() + "," + surds_[1].str() + "," + surds_[2].str();
  }
  return {};
}

Dirichlet1D dirichlet_1d(double zeta, std::int64_t h_param) {
  if (!std::isfinite(zeta)) throw std::invalid_argument("dirichlet_1d: zeta must be finite");
  if (h_param < 1) throw std::invalid_argument("dirichlet_1d: H must be at least 1");
  const cpp_rational exact(zeta);
  const double hd = static_cast<double>(h_param);
  for (std::int64_t q = 1; q <= h_param; ++q) {
    const double x = static_cast<double>(q) * zeta;
    const std::int64_t p = nearest(x);
    if (std::abs(x - static_cast<double>(p)) * hd > 1.0 + 1e-9) continue;
    if (within(exact, p, q, h_param)) return {p, q};
  }
  throw std::logic_error("Dirichlet guarantee violated");
}

DirichletSim dirichlet_simultaneous(double zeta1, double zeta2, std::int64_t h_param) {
  if (!std::isfinite(zeta1) || !std::isfinite(zeta2)) {
    throw std::invalid_argument("dirichlet_simultaneous: inputs must be finite");
  }
  if (h_param < 1) throw std::invalid_argument("dirichlet_simultaneous: H must be at least 1");
  const cpp_rational e1(zeta1);
  const cpp_rational e2(zeta2);
  const double hd = static_cast<double>(h_param);
  const std::int64_t q_max = h_param * h_param;
  for (std::int64_t q = 1; q <= q_max; ++q) {
    const double x1 = static_cast<double>(q) * zeta1;
    const double x2 = static_cast<double>(q) * zeta2;
    const std::int64_t p1 = nearest(x1);
    const std::int64_t p2 = nearest(x2);
    if (std::abs(x1 - static_cast<double>(p1)) * hd > 1.0 + 1e-9 ||
        std::abs(x2 - static_cast<double>(p2)) * hd > 1.0 + 1e-9) {
      continue;
    }
    if (within(e1, p1, q, h_param) && within(e2, p2, q, h_param)) return {q, p1, p2};
  }
  throw std::logic_error("Dirichlet guarantee violated");
}

RationalApprox approx_direction(const Direction& direction, std::int64_t h_param) {
  if (h_param < 1) throw std::invalid_argument("approx_direction: H must be at least 1");
  const Vec3& alpha = direction.unit();
  RationalApprox out;
  out.h_param = h_param;
  out.kind = direction.kind();
  switch (direction.kind()) {
    case Direction::Kind::Rational:
      throw std::invalid_argument("use exact integer direction");
    case Direction::Kind::Irrational: {
      std::array<double, 3> c{alpha.x, alpha.y, alpha.z};
      std::size_t lead = 0;
      for (std::size_t i = 1; i < 3; ++i) {
        if (std::abs(c[i]) > std::abs(c[lead])) lead = i;
      }
      const double sign = c[lead] < 0 ? -1.0 : 1.0;
      const std::size_t o1 = lead == 0 ? 1 : 0;
      const std::size_t o2 = lead == 2 ? 1 : 2;
      const auto d = dirichlet_simultaneous(c[o1] / c[lead], c[o2] / c[lead], h_param);
      std::array<std::int64_t, 3> a{};
      a[lead] = d.q;
      a[o1] = d.p1;
      a[o2] = d.p2;
      // a approximates the direction sign * alpha; flip back to alpha's orientation.
      if (sign < 0) {
        for (auto& x : a) x = -x;
      }
      out.a = {a[0], a[1], a[2]};
      break;
    }
    case Direction::Kind::HalfRational: {
      const std::int64_t u = direction.u();
      const std::int64_t v = direction.v();
      const auto d = dirichlet_1d(alpha.z / alpha.x, h_param);
      out.a = {d.q * v, d.q * u, d.p * v};
      out.tau = static_cast<double>(
                    std::max({static_cast<double>(std::abs(u)), static_cast<double>(v),
                              1.0 / std::abs(alpha.x)})) +
                1.0;
      break;
    }
  }
  const Vec3 av = out.a.as_vec();
  out.angle_err = norm(alpha - av / norm(av));
  out.phi = angle_between(alpha, av);
  return out;
}

double unit_difference_bound(const Vec3& v, const Vec3& w) {
  const double nv = norm(v);
  const double nw = norm(w);
  if (!(nv > 0.0) || !(nw > 0.0)) {
    throw std::invalid_argument("unit_difference_bound: zero vector");
  }
  return norm(v / nv - w / nw);
}

PsiBound segment_psi_bound(std::size_t kappa_value, double r_sphere, double theta,
                           const Direction& direction, std::optional<std::int64_t> h_override) {
  if (!(theta > 0.0)) throw std::domain_error("segment_psi_bound: theta must be positive");
  PsiBound out;
  out.kappa = kappa_value;
  std::int64_t h = 1;
  switch (direction.kind()) {
    case Direction::Kind::Rational:
      throw std::invalid_argument(
          "segment_psi_bound: rational directions use slicing_bound with the integer triple");
    case Direction::Kind::Irrational:
      out.exponent = 1.0 / 3.0;
      h = static_cast<std::int64_t>(std::floor(std::numbers::sqrt2 / std::cbrt(theta)));
      break;
    case Direction::Kind::HalfRational:
      out.exponent = 0.5;
      h = static_cast<std::int64_t>(std::floor(1.0 / std::sqrt(theta)));
      break;
  }
  out.h_param = h_override ? *h_override : std::max<std::int64_t>(1, h);
  const auto approx = approx_direction(direction, out.h_param);
  out.a = approx.a;
  out.phi = approx.phi;
  const double kd = static_cast<double>(kappa_value);
  out.value = kd * (1.0 + r_sphere * std::pow(theta, out.exponent));
  out.claim_value = kd * (1.0 + r_sphere * approx.a_norm() * (theta + approx.phi));
  return out;
}

PsiBound segment_psi_bound(const Shell& shell, double theta, const Direction& direction,
                           std::optional<std::int64_t> h_override) {
  return segment_psi_bound(kappa(shell), shell.radius(), theta, direction, h_override);
}

}  // namespace nodal
