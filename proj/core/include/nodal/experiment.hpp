#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nodal/arithmetic.hpp"
#include "nodal/verify.hpp"
#include "nodal/zeros.hpp"

namespace nodal {

enum class Command { Shell, Wave, Simulate, Bounds, Riesz, Verify };
enum class Format { Csv, Json };

std::string to_string(Command command);
Command parse_command(const std::string& text);
std::string to_string(Format format);
Format parse_format(const std::string& text);

inline constexpr int kSchemaVersion = 1;

struct ExperimentConfig {
  Command command = Command::Shell;
  std::vector<std::int64_t> m_list;
  std::string direction = "rat:1,0,0";
  double length = 1.0;
  std::int64_t trials = 2000;
  std::uint64_t seed = 42;
  std::optional<double> rho;
  std::optional<double> omega;
  std::optional<std::int64_t> h_param;
  std::optional<std::string> mode;  ///< bound mode; defaults to the direction's class
  double grid_factor = kDefaultGridFactor;
  double sigma = 1.0;
  std::string out;  ///< empty = standard output
  Format format = Format::Csv;
  unsigned threads = 0;

  bool operator==(const ExperimentConfig&) const = default;
};

/// Throws std::invalid_argument naming the offending field.
void validate(const ExperimentConfig& config);

std::string config_to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const std::string& text);

struct ShellRow {
  std::int64_t m = 0;
  std::size_t n = 0;
  int residue = 0;
  bool representable = false;
  bool primitive = false;

  bool operator==(const ShellRow&) const = default;
};

struct WaveRow {
  std::int64_t m = 0;
  std::size_t index = 0;
  double t = 0.0;
  double f = 0.0;
  double f_prime = 0.0;

  bool operator==(const WaveRow&) const = default;
};

struct RieszRow {
  std::int64_t m = 0;
  RieszResult result;

  bool operator==(const RieszRow&) const = default;
};

/// Everything one invocation produces. `config` has out and threads cleared, since
/// neither may influence the report.
struct Report {
  ExperimentConfig config;
  std::vector<ShellRow> shells;
  std::vector<WaveRow> waves;
  std::vector<MonteCarloReport> simulations;
  std::vector<BoundReport> bounds;
  std::vector<RieszRow> riesz;
  std::vector<CheckResult> checks;
  std::vector<std::string> warnings;

  bool failed() const;
  bool operator==(const Report&) const = default;
};

/// Runs the configured command. Skipped rows are recorded in warnings.
Report execute(const ExperimentConfig& config);

std::string render_csv(const Report& report);
std::string render_json(const Report& report);
Report parse_report_json(const std::string& text);

/// execute + render + write to config.out (or `out`). Warnings go to `err`.
/// Returns 0, or 1 when a verify check failed.
int run(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

}  // namespace nodal
