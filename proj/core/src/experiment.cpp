#include "nodal/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <memory>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace nodal {

using nlohmann::json;

namespace {

constexpr std::size_t kWavePoints = 201;

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

template <class T>
json opt(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <class T>
std::optional<T> get_opt(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

double expected_zeros(double length, std::int64_t m) {
  return 2.0 / std::sqrt(3.0) * length * std::sqrt(static_cast<double>(m));
}

BoundMode default_mode(const Direction& d) {
  switch (d.kind()) {
    case Direction::Kind::Rational:
      return BoundMode::Rational;
    case Direction::Kind::HalfRational:
      return BoundMode::HalfRational;
    case Direction::Kind::Irrational:
      return BoundMode::Irrational;
  }
  return BoundMode::Rational;
}

json config_json(const ExperimentConfig& c) {
  return json{{"command", to_string(c.command)},
              {"m", c.m_list},
              {"dir", c.direction},
              {"len", c.length},
              {"trials", c.trials},
              {"seed", c.seed},
              {"rho", opt(c.rho)},
              {"omega", opt(c.omega)},
              {"bigh", opt(c.h_param)},
              {"mode", opt(c.mode)},
              {"grid_factor", c.grid_factor},
              {"sigma", c.sigma},
              {"out", c.out},
              {"format", to_string(c.format)},
              {"threads", c.threads}};
}

ExperimentConfig config_of(const json& j) {
  ExperimentConfig c;
  c.command = parse_command(j.at("command").get<std::string>());
  c.m_list = j.at("m").get<std::vector<std::int64_t>>();
  c.direction = j.at("dir").get<std::string>();
  c.length = j.at("len").get<double>();
  c.trials = j.at("trials").get<std::int64_t>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.rho = get_opt<double>(j, "rho");
  c.omega = get_opt<double>(j, "omega");
  c.h_param = get_opt<std::int64_t>(j, "bigh");
  c.mode = get_opt<std::string>(j, "mode");
  c.grid_factor = j.at("grid_factor").get<double>();
  c.sigma = j.at("sigma").get<double>();
  c.out = j.at("out").get<std::string>();
  c.format = parse_format(j.at("format").get<std::string>());
  c.threads = j.at("threads").get<unsigned>();
  return c;
}

json row_json(const ShellRow& r) {
  return {{"m", r.m}, {"n", r.n}, {"residue", r.residue}, {"representable", r.representable},
          {"primitive", r.primitive}};
}

json row_json(const WaveRow& r) {
  return {{"m", r.m}, {"index", r.index}, {"t", r.t}, {"f", r.f}, {"f_prime", r.f_prime}};
}

json row_json(const MonteCarloReport& r) {
  json hist = json::array();
  for (const auto& [z, count] : r.histogram) hist.push_back({z, count});
  return {{"m", r.m},
          {"direction", r.direction},
          {"length", r.length},
          {"trials", r.trials},
          {"seed", r.seed},
          {"mean", r.mean},
          {"variance", r.variance},
          {"stderr", r.std_err},
          {"expected", expected_zeros(r.length, r.m)},
          {"histogram", hist},
          {"flagged_trials", r.flagged_trials}};
}

json row_json(const BoundReport& r) {
  return {{"m", r.m},
          {"direction", r.direction},
          {"length", r.length},
          {"mode", to_string(r.mode)},
          {"n", r.n},
          {"kappa", r.kappa},
          {"s_zero", r.s_zero},
          {"s_small", r.s_small},
          {"inv_sq_sum", r.inv_sq_sum},
          {"inv_dist_sq_sum", r.inv_dist_sq_sum},
          {"q_value", r.q_value},
          {"r2", {{"rr", r.r2.rr}, {"r1r1", r.r2.r1r1}, {"r2r2", r.r2.r2r2}, {"r12r12", r.r2.r12r12}}},
          {"rho", r.rho},
          {"omega", r.omega},
          {"h_param", r.h_param},
          {"psi_value", r.psi_value},
          {"covering_value", opt(r.covering_value)},
          {"intermediate", r.intermediate},
          {"envelope_eps_0.01", r.envelope_eps_001},
          {"envelope_eps_0.05", r.envelope_eps_005},
          {"bound_value", r.bound_value},
          {"conjecture_assumed", r.conjecture_assumed},
          {"warnings", r.warnings}};
}

json row_json(const RieszRow& r) {
  return {{"m", r.m},
          {"n", r.result.n},
          {"sigma", r.result.sigma},
          {"energy", r.result.energy},
          {"limit_i", r.result.limit_i},
          {"normalized_gap", r.result.normalized_gap}};
}

json row_json(const CheckResult& r) {
  return {{"check", r.name}, {"passed", r.passed}, {"detail", r.detail}};
}

template <class Row>
json rows_json(const std::vector<Row>& rows) {
  json out = json::array();
  for (const auto& r : rows) out.push_back(row_json(r));
  return out;
}

void read_row(const json& j, ShellRow& r) {
  r.m = j.at("m");
  r.n = j.at("n");
  r.residue = j.at("residue");
  r.representable = j.at("representable");
  r.primitive = j.at("primitive");
}

void read_row(const json& j, WaveRow& r) {
  r.m = j.at("m");
  r.index = j.at("index");
  r.t = j.at("t");
  r.f = j.at("f");
  r.f_prime = j.at("f_prime");
}

void read_row(const json& j, MonteCarloReport& r) {
  r.m = j.at("m");
  r.direction = j.at("direction");
  r.length = j.at("length");
  r.trials = j.at("trials");
  r.seed = j.at("seed");
  r.mean = j.at("mean");
  r.variance = j.at("variance");
  r.std_err = j.at("stderr");
  for (const auto& entry : j.at("histogram")) {
    r.histogram[entry.at(0).get<std::int64_t>()] = entry.at(1).get<std::int64_t>();
  }
  r.flagged_trials = j.at("flagged_trials");
}

void read_row(const json& j, BoundReport& r) {
  r.m = j.at("m");
  r.direction = j.at("direction");
  r.length = j.at("length");
  r.mode = parse_bound_mode(j.at("mode"));
  r.n = j.at("n");
  r.kappa = j.at("kappa");
  r.s_zero = j.at("s_zero");
  r.s_small = j.at("s_small");
  r.inv_sq_sum = j.at("inv_sq_sum");
  r.inv_dist_sq_sum = j.at("inv_dist_sq_sum");
  r.q_value = j.at("q_value");
  const auto& r2 = j.at("r2");
  r.r2.rr = r2.at("rr");
  r.r2.r1r1 = r2.at("r1r1");
  r.r2.r2r2 = r2.at("r2r2");
  r.r2.r12r12 = r2.at("r12r12");
  r.rho = j.at("rho");
  r.omega = j.at("omega");
  r.h_param = j.at("h_param");
  r.psi_value = j.at("psi_value");
  r.covering_value = get_opt<double>(j, "covering_value");
  r.intermediate = j.at("intermediate");
  r.envelope_eps_001 = j.at("envelope_eps_0.01");
  r.envelope_eps_005 = j.at("envelope_eps_0.05");
  r.bound_value = j.at("bound_value");
  r.conjecture_assumed = j.at("conjecture_assumed");
  r.warnings = j.at("warnings").get<std::vector<std::string>>();
}

void read_row(const json& j, RieszRow& r) {
  r.m = j.at("m");
  r.result.n = j.at("n");
  r.result.sigma = j.at("sigma");
  r.result.energy = j.at("energy");
  r.result.limit_i = j.at("limit_i");
  r.result.normalized_gap = j.at("normalized_gap");
}

void read_row(const json& j, CheckResult& r) {
  r.name = j.at("check");
  r.passed = j.at("passed");
  r.detail = j.at("detail");
}

template <class Row>
std::vector<Row> read_rows(const json& rows) {
  std::vector<Row> out;
  for (const auto& j : rows) {
    Row r;
    read_row(j, r);
    out.push_back(std::move(r));
  }
  return out;
}

void skip(Report& report, std::int64_t m, const std::string& why) {
  report.warnings.push_back("m = " + std::to_string(m) + " skipped: " + why);
}

}  // namespace

std::string to_string(Command command) {
  switch (command) {
    case Command::Shell: return "shell";
    case Command::Wave: return "wave";
    case Command::Simulate: return "simulate";
    case Command::Bounds: return "bounds";
    case Command::Riesz: return "riesz";
    case Command::Verify: return "verify";
  }
  return "unknown";
}

Command parse_command(const std::string& text) {
  for (auto c : {Command::Shell, Command::Wave, Command::Simulate, Command::Bounds,
                 Command::Riesz, Command::Verify}) {
    if (to_string(c) == text) return c;
  }
  throw std::invalid_argument("command: unknown command '" + text + "'");
}

std::string to_string(Format format) { return format == Format::Csv ? "csv" : "json"; }

Format parse_format(const std::string& text) {
  if (text == "csv") return Format::Csv;
  if (text == "json") return Format::Json;
  throw std::invalid_argument("format: expected csv or json, got '" + text + "'");
}

void validate(const ExperimentConfig& c) {
  auto bad = [](const std::string& field, const std::string& why) {
    throw std::invalid_argument(field + ": " + why);
  };
  if (c.m_list.empty()) bad("m", "at least one m is required");
  for (auto m : c.m_list) {
    if (m < 1) bad("m", "every m must be >= 1, got " + std::to_string(m));
  }
  if (!(c.length > 0.0) || !std::isfinite(c.length)) bad("len", "must be positive");
  if (c.command == Command::Simulate && c.trials < 2) bad("trials", "simulate needs >= 2");
  if (!(c.grid_factor >= 4.0)) bad("grid_factor", "must be >= 4");
  if (!(c.sigma > 0.0 && c.sigma < 2.0)) bad("sigma", "must lie in (0, 2)");
  if (c.rho && !(*c.rho >= 0.0)) bad("rho", "must be nonnegative");
  if (c.omega && !(*c.omega > 0.0)) bad("omega", "must be positive");
  if (c.h_param && *c.h_param < 1) bad("bigh", "must be >= 1");
  try {
    Direction::parse(c.direction);
  } catch (const std::exception& e) {
    bad("dir", e.what());
  }
  if (c.mode) {
    try {
      parse_bound_mode(*c.mode);
    } catch (const std::exception& e) {
      bad("mode", e.what());
    }
  }
}

std::string config_to_json(const ExperimentConfig& config) { return config_json(config).dump(); }

ExperimentConfig config_from_json(const std::string& text) { return config_of(json::parse(text)); }

bool Report::failed() const {
  for (const auto& c : checks) {
    if (!c.passed) return true;
  }
  return false;
}

Report execute(const ExperimentConfig& input) {
  validate(input);
  Report report;
  report.config = input;
  report.config.out.clear();
  report.config.threads = 0;
  const ExperimentConfig& c = input;
  const Direction direction = Direction::parse(c.direction);

  if (c.command == Command::Verify) {
    VerifyOptions options;
    options.m_list = c.m_list;
    options.seed = c.seed;
    options.threads = c.threads;
    report.checks = run_invariants(options);
    return report;
  }

  for (auto m : c.m_list) {
    auto shell = std::make_shared<const Shell>(enumerate_shell(m));
    const MClass& cls = shell->m_class();
    switch (c.command) {
      case Command::Shell:
        report.shells.push_back({m, shell->n(), cls.residue, cls.representable, cls.primitive});
        break;
      case Command::Wave: {
        if (shell->empty()) {
          skip(report, m, "empty shell");
          break;
        }
        const LineSegment line(direction, c.length);
        const auto sample = sample_wave(shell, c.seed);
        for (std::size_t i = 0; i < kWavePoints; ++i) {
          const double t = c.length * static_cast<double>(i) / static_cast<double>(kWavePoints - 1);
          report.waves.push_back({m, i, t, evaluate_f(sample, line, t),
                                  evaluate_f_prime(sample, line, t)});
        }
        break;
      }
      case Command::Simulate: {
        if (shell->empty()) {
          skip(report, m, "empty shell");
          break;
        }
        MonteCarloOptions options;
        options.grid_factor = c.grid_factor;
        options.threads = c.threads;
        report.simulations.push_back(
            monte_carlo(*shell, LineSegment(direction, c.length), c.trials, c.seed, options));
        break;
      }
      case Command::Bounds: {
        const BoundMode mode = c.mode ? parse_bound_mode(*c.mode) : default_mode(direction);
        if (shell->empty()) {
          skip(report, m, "empty shell");
          break;
        }
        if (mode != BoundMode::Rational && !cls.primitive) {
          skip(report, m, "m = 0, 4, 7 (mod 8) is not admissible for " + to_string(mode));
          break;
        }
        BoundParams params;
        params.rho = c.rho;
        params.omega = c.omega;
        params.h_param = c.h_param;
        params.threads = c.threads;
        report.bounds.push_back(
            variance_bound(*shell, LineSegment(direction, c.length), mode, params));
        break;
      }
      case Command::Riesz:
        if (!cls.primitive) {
          skip(report, m, "m = 0, 4, 7 (mod 8) is not admissible");
          break;
        }
        report.riesz.push_back({m, riesz_energy(project_shell(*shell), c.sigma, c.threads)});
        break;
      case Command::Verify:
        break;
    }
  }
  return report;
}

std::string render_csv(const Report& r) {
  std::ostringstream os;
  switch (r.config.command) {
    case Command::Shell:
      os << "m,n,residue,representable,primitive\n";
      for (const auto& x : r.shells) {
        os << x.m << ',' << x.n << ',' << x.residue << ',' << x.representable << ','
           << x.primitive << '\n';
      }
      break;
    case Command::Wave:
      os << "m,index,t,f,f_prime\n";
      for (const auto& x : r.waves) {
        os << x.m << ',' << x.index << ',' << num(x.t) << ',' << num(x.f) << ','
           << num(x.f_prime) << '\n';
      }
      break;
    case Command::Simulate:
      os << "m,direction,length,trials,seed,mean,variance,stderr,expected,z_score,var_over_m,"
            "flagged_trials\n";
      for (const auto& x : r.simulations) {
        const double expected = expected_zeros(x.length, x.m);
        os << x.m << ',' << csv_quote(x.direction) << ',' << num(x.length) << ',' << x.trials << ','
           << x.seed << ',' << num(x.mean) << ',' << num(x.variance) << ',' << num(x.std_err)
           << ',' << num(expected) << ',' << num((x.mean - expected) / x.std_err) << ','
           << num(x.variance / static_cast<double>(x.m)) << ',' << x.flagged_trials << '\n';
      }
      break;
    case Command::Bounds:
      os << "m,direction,mode,length,n,kappa,s_zero,s_small,inv_sq_sum,inv_dist_sq_sum,q_value,"
            "rr,r1r1,r2r2,r12r12,r2_total,rho,omega,h_param,psi_value,covering_value,"
            "intermediate,envelope_eps_0.01,envelope_eps_0.05,bound_value,conjecture_assumed\n";
      for (const auto& x : r.bounds) {
        os << x.m << ',' << csv_quote(x.direction) << ',' << to_string(x.mode) << ',' << num(x.length) << ','
           << x.n << ',' << x.kappa << ',' << x.s_zero << ',' << x.s_small << ','
           << num(x.inv_sq_sum) << ',' << num(x.inv_dist_sq_sum) << ',' << num(x.q_value) << ','
           << num(x.r2.rr) << ',' << num(x.r2.r1r1) << ',' << num(x.r2.r2r2) << ','
           << num(x.r2.r12r12) << ',' << num(x.r2.total()) << ',' << num(x.rho) << ','
           << num(x.omega) << ',' << x.h_param << ',' << num(x.psi_value) << ','
           << (x.covering_value ? num(*x.covering_value) : std::string()) << ','
           << num(x.intermediate) << ',' << num(x.envelope_eps_001) << ','
           << num(x.envelope_eps_005) << ',' << num(x.bound_value) << ','
           << x.conjecture_assumed << '\n';
      }
      break;
    case Command::Riesz:
      os << "m,n,sigma,energy,limit_i,normalized_gap\n";
      for (const auto& x : r.riesz) {
        os << x.m << ',' << x.result.n << ',' << num(x.result.sigma) << ','
           << num(x.result.energy) << ',' << num(x.result.limit_i) << ','
           << num(x.result.normalized_gap) << '\n';
      }
      break;
    case Command::Verify:
      os << "check,passed,detail\n";
      for (const auto& x : r.checks) {
        os << x.name << ',' << x.passed << ',' << csv_quote(x.detail) << '\n';
      }
      break;
  }
  return os.str();
}

std::string render_json(const Report& r) {
  json j{{"schema_version", kSchemaVersion},
         {"command", to_string(r.config.command)},
         {"config", config_json(r.config)},
         {"warnings", r.warnings}};
  switch (r.config.command) {
    case Command::Shell: j["rows"] = rows_json(r.shells); break;
    case Command::Wave: j["rows"] = rows_json(r.waves); break;
    case Command::Simulate: j["rows"] = rows_json(r.simulations); break;
    case Command::Bounds: j["rows"] = rows_json(r.bounds); break;
    case Command::Riesz: j["rows"] = rows_json(r.riesz); break;
    case Command::Verify: j["rows"] = rows_json(r.checks); break;
  }
  return j.dump(2) + "\n";
}

Report parse_report_json(const std::string& text) {
  const json j = json::parse(text);
  const int version = j.at("schema_version").get<int>();
  if (version != kSchemaVersion) {
    throw std::invalid_argument("unsupported schema_version " + std::to_string(version));
  }
  Report r;
  r.config = config_of(j.at("config"));
  r.warnings = j.at("warnings").get<std::vector<std::string>>();
  const auto& rows = j.at("rows");
  switch (r.config.command) {
    case Command::Shell: r.shells = read_rows<ShellRow>(rows); break;
    case Command::Wave: r.waves = read_rows<WaveRow>(rows); break;
    case Command::Simulate: r.simulations = read_rows<MonteCarloReport>(rows); break;
    case Command::Bounds: r.bounds = read_rows<BoundReport>(rows); break;
    case Command::Riesz: r.riesz = read_rows<RieszRow>(rows); break;
    case Command::Verify: r.checks = read_rows<CheckResult>(rows); break;
  }
  return r;
}

int run(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  const Report report = execute(config);
  for (const auto& w : report.warnings) err << "warning: " << w << '\n';
  for (const auto& b : report.bounds) {
    for (const auto& w : b.warnings) err << "warning: m = " << b.m << ": " << w << '\n';
  }
  const std::string text =
      config.format == Format::Csv ? render_csv(report) : render_json(report);
  if (config.out.empty() || config.out == "-") {
    out << text;
  } else {
    std::ofstream file(config.out, std::ios::binary);
    if (!file) throw std::runtime_error("out: cannot open '" + config.out + "' for writing");
    file << text;
    if (!file) throw std::runtime_error("out: write to '" + config.out + "' failed");
  }
  return report.failed() ? 1 : 0;
}

}  // namespace nodal
