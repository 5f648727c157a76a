#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mdplab/experiment_spec.hpp"

namespace mdplab {

// Command-line overrides applied on top of a loaded spec.
struct CliOverrides {
  std::vector<std::string> policies;  // empty = keep spec's list
  std::optional<std::int64_t> horizon;
  std::optional<int> replications;
  std::optional<std::uint64_t> seed;
  std::string out_dir = ".";
  int threads = 0;
  bool log_x = false;
  bool paired = false;
  bool dump_spec = false;
};

void apply_overrides(ExperimentSpec& spec, const CliOverrides& overrides);

// Solves the spec's model with complete information and prints the gain,
// bias, optimal action sets, and per-action loss table.
int cmd_solve(const ExperimentSpec& spec, std::ostream& out);

// Runs every configured policy and writes <name>_regret.csv and
// <name>_regret.svg under out_dir.
int cmd_simulate(const ExperimentSpec& spec, const CliOverrides& overrides,
                 std::ostream& out);

// Same as cmd_simulate but with the rigged count prior preloaded; writes
// <name>_robustness.{csv,svg}. With paired = true, clean curves are written
// alongside the rigged ones.
int cmd_robustness(const ExperimentSpec& spec, const CliOverrides& overrides,
                   std::ostream& out);

// Full argument parsing and dispatch; returns the process exit code
// (0 ok, 1 validation failure, 2 runtime failure).
int run_cli(int argc, const char* const* argv);

}  // namespace mdplab
