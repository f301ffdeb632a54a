#include "nodal_cli/args.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace nodal::cli {

namespace {

const std::vector<std::int64_t> kVerifyDefaultM{1, 2, 3, 5, 6, 9, 50};

struct Flags {
  std::vector<std::int64_t> m;
  std::string dir = "rat:1,0,0";
  double len = 1.0;
  std::int64_t trials = 2000;
  std::uint64_t seed = 42;
  double rho = 0.0;
  double omega = 0.0;
  std::int64_t bigh = 0;
  std::string mode;
  std::string out;
  std::string format = "csv";
  unsigned threads = 0;
  double grid_factor = kDefaultGridFactor;
  double sigma = 1.0;
};

void add_common(CLI::App& sub, Flags& f) {
  sub.add_option("--m", f.m, "Energies m, comma separated")->delimiter(',');
  sub.add_option("--dir", f.dir,
                 "Direction: rat:a,b,c | halfrat:u,v,surd | irr:s1,s2,s3 (surds like 2*sqrt3)")
      ->capture_default_str();
  sub.add_option("--len", f.len, "Segment length L")->capture_default_str();
  sub.add_option("--seed", f.seed, "Random seed")->capture_default_str();
  sub.add_option("--out", f.out, "Output file (default: standard output)");
  sub.add_option("--format", f.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  sub.add_option("--threads", f.threads, "Worker threads (env NODAL_LAB_THREADS)");
}

}  // namespace

ParsedArgs parse_args(const std::vector<std::string>& argv, const std::string& threads_env) {
  CLI::App app{"Nodal intersections of arithmetic random waves with line segments", "nodal_lab"};
  app.require_subcommand(1);
  Flags f;

  auto* shell = app.add_subcommand("shell", "Enumerate lattice shells and classify m");
  auto* wave = app.add_subcommand("wave", "Sample one wave and tabulate f, f' along the segment");
  auto* simulate = app.add_subcommand("simulate", "Monte-Carlo zero counts");
  auto* bounds = app.add_subcommand("bounds", "Pair sums and variance-bound quantities");
  auto* riesz = app.add_subcommand("riesz", "Riesz energy of projected shells");
  auto* verify = app.add_subcommand("verify", "Run the invariant suite");
  for (auto* sub : {shell, wave, simulate, bounds, riesz, verify}) add_common(*sub, f);

  simulate->add_option("--trials", f.trials, "Monte-Carlo trials")->capture_default_str();
  simulate->add_option("--grid-factor", f.grid_factor, "Zero-scan grid factor (>= 4)")
      ->capture_default_str();
  bounds->add_option("--mode", f.mode, "rational | irrational | halfrational | conditional");
  bounds->add_option("--rho", f.rho, "Split parameter rho");
  bounds->add_option("--omega", f.omega, "Covering parameter Omega");
  bounds->add_option("--bigh", f.bigh, "Dirichlet parameter H");
  riesz->add_option("--sigma", f.sigma, "Riesz exponent in (0, 2)")->capture_default_str();

  std::vector<std::string> args(argv.begin() + (argv.empty() ? 0 : 1), argv.end());
  std::reverse(args.begin(), args.end());
  ParsedArgs result;
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    std::ostringstream out;
    std::ostringstream err;
    result.exit_code = app.exit(e, out, err);
    result.message = out.str() + err.str();
    return result;
  }

  CLI::App* chosen = app.get_subcommands().front();
  ExperimentConfig& c = result.config;
  c.command = parse_command(chosen->get_name());
  c.m_list = f.m;
  if (c.m_list.empty() && c.command == Command::Verify) c.m_list = kVerifyDefaultM;
  c.direction = f.dir;
  c.length = f.len;
  c.trials = f.trials;
  c.seed = f.seed;
  if (chosen == bounds && bounds->count("--rho")) c.rho = f.rho;
  if (chosen == bounds && bounds->count("--omega")) c.omega = f.omega;
  if (chosen == bounds && bounds->count("--bigh")) c.h_param = f.bigh;
  if (chosen == bounds && bounds->count("--mode")) c.mode = f.mode;
  c.grid_factor = f.grid_factor;
  c.sigma = f.sigma;
  c.out = f.out;
  c.format = parse_format(f.format);
  if (chosen->count("--threads")) {
    c.threads = f.threads;
  } else if (!threads_env.empty()) {
    try {
      c.threads = static_cast<unsigned>(std::stoul(threads_env));
    } catch (const std::exception&) {
      result.exit_code = 2;
      result.message = "NODAL_LAB_THREADS: expected a nonnegative integer, got '" + threads_env + "'\n";
      return result;
    }
  }
  try {
    validate(c);
  } catch (const std::invalid_argument& e) {
    result.exit_code = 2;
    result.message = std::string("usage error: ") + e.what() + "\n" + chosen->help();
    return result;
  }
  result.should_run = true;
  return result;
}

}  // namespace nodal::cli
