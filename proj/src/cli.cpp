#include "mdplab/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <ostream>
#include <utility>

#include <CLI11.hpp>

#include "mdplab/errors.hpp"
#include "mdplab/svg_plot.hpp"

namespace mdplab {

namespace {

std::string state_label(int x) { return "x" + std::to_string(x + 1); }
std::string action_label(int a) { return "a" + std::to_string(a + 1); }

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write output file '" + path.string() + "'");
  }
  out << content;
  if (!out) {
    throw std::runtime_error("failed writing output file '" + path.string() + "'");
  }
}

struct LabeledCurves {
  std::string label;
  AggregateCurves curves;
};

std::string curves_to_csv(const std::vector<LabeledCurves>& all,
                          std::int64_t horizon) {
  std::string csv = "t,policy,mean_regret,variance,ci_low,ci_high\n";
  csv.reserve(static_cast<std::size_t>(horizon) * all.size() * 48 + 64);
  for (const auto& item : all) {
    for (std::int64_t t = 1; t <= horizon; ++t) {
      const std::size_t i = static_cast<std::size_t>(t - 1);
      const double mean = item.curves.mean[i];
      const double var = item.curves.variance[i];
      const double half = item.curves.ci_half[i];
      csv += std::to_string(t);
      csv += ',';
      csv += item.label;
      csv += ',';
      csv += num(mean);
      csv += ',';
      csv += num(var);
      csv += ',';
      csv += num(mean - half);
      csv += ',';
      csv += num(mean + half);
      csv += '\n';
    }
  }
  return csv;
}

std::vector<SvgSeries> curves_to_svg_series(
    const std::vector<LabeledCurves>& all) {
  std::vector<SvgSeries> series;
  series.reserve(all.size());
  for (const auto& item : all) {
    SvgSeries s;
    s.label = item.label;
    s.y = item.curves.mean;
    s.band_low.resize(s.y.size());
    s.band_high.resize(s.y.size());
    for (std::size_t i = 0; i < s.y.size(); ++i) {
      s.band_low[i] = s.y[i] - item.curves.ci_half[i];
      s.band_high[i] = s.y[i] + item.curves.ci_half[i];
    }
    series.push_back(std::move(s));
  }
  return series;
}

void write_outputs(const ExperimentSpec& spec, const CliOverrides& overrides,
                   const std::vector<LabeledCurves>& all,
                   const std::string& suffix, const std::string& title,
                   std::ostream& out) {
  const std::filesystem::path dir(overrides.out_dir);
  if (!dir.empty()) std::filesystem::create_directories(dir);

  const std::filesystem::path csv_path = dir / (spec.name + suffix + ".csv");
  write_file(csv_path, curves_to_csv(all, spec.horizon));
  out << "wrote " << csv_path.string() << "\n";

  SvgOptions options;
  options.title = title;
  options.y_label = "mean cumulative regret";
  options.log_x = overrides.log_x;
  const std::filesystem::path svg_path = dir / (spec.name + suffix + ".svg");
  write_file(svg_path, render_line_chart(curves_to_svg_series(all), options));
  out << "wrote " << svg_path.string() << "\n";
}

}  // namespace

void apply_overrides(ExperimentSpec& spec, const CliOverrides& overrides) {
  if (!overrides.policies.empty()) {
    spec.policies.clear();
    for (const auto& name : overrides.policies) {
      spec.policies.push_back(parse_policy_kind(name));
    }
  }
  if (overrides.horizon) spec.horizon = *overrides.horizon;
  if (overrides.replications) spec.replications = *overrides.replications;
  if (overrides.seed) spec.seed = *overrides.seed;
  for (PolicyKind kind : spec.policies) {
    spec.sim_config(kind).validate();
  }
}

int cmd_solve(const ExperimentSpec& spec, std::ostream& out) {
  const OptimalityReport report = analyze_model(spec.model);
  const int s = spec.model.num_states();

  out << "model: " << s << " states\n";
  out << "gain: " << num(report.solution.gain) << "\n";
  out << "bias:";
  for (int x = 0; x < s; ++x) {
    out << " " << state_label(x) << "=" << num(report.solution.bias[static_cast<std::size_t>(x)]);
  }
  out << "\n";
  for (int x = 0; x < s; ++x) {
    out << "state " << state_label(x) << ": optimal {";
    const auto& optimal = report.optimal_actions[static_cast<std::size_t>(x)];
    for (std::size_t i = 0; i < optimal.size(); ++i) {
      out << (i ? ", " : "") << action_label(optimal[i]);
    }
    out << "}";
    for (int a = 0; a < spec.model.num_actions(x); ++a) {
      out << "  L(" << action_label(a) << ")="
          << num(report.l_values[static_cast<std::size_t>(x)][static_cast<std::size_t>(a)]);
    }
    for (int a = 0; a < spec.model.num_actions(x); ++a) {
      out << "  delta(" << action_label(a) << ")="
          << num(report.deltas[static_cast<std::size_t>(x)][static_cast<std::size_t>(a)]);
    }
    out << "\n";
  }
  out << "optimal policy:";
  for (int x = 0; x < s; ++x) {
    out << " " << state_label(x) << "->"
        << action_label(report.optimal_actions[static_cast<std::size_t>(x)].front());
  }
  out << "\n";
  return 0;
}

int cmd_simulate(const ExperimentSpec& spec, const CliOverrides& overrides,
                 std::ostream& out) {
  std::vector<LabeledCurves> all;
  for (PolicyKind kind : spec.policies) {
    const SimConfig config = spec.sim_config(kind, false);
    all.push_back(LabeledCurves{policy_kind_name(kind),
                                run_experiment(config, overrides.threads)});
  }
  write_outputs(spec, overrides, all, "_regret", spec.name + ": mean regret",
                out);
  return 0;
}

int cmd_robustness(const ExperimentSpec& spec, const CliOverrides& overrides,
                   std::ostream& out) {
  if (!spec.rigged_prior) {
    throw ValidationError("robustness run needs a rigged_prior block in the spec");
  }
  std::vector<LabeledCurves> all;
  for (PolicyKind kind : spec.policies) {
    const SimConfig config = spec.sim_config(kind, true);
    const std::string label = policy_kind_name(kind);
    all.push_back(
        LabeledCurves{overrides.paired ? label + "_rigged" : label,
                      run_experiment(config, overrides.threads)});
    if (overrides.paired) {
      const SimConfig clean = spec.sim_config(kind, false);
      all.push_back(LabeledCurves{label + "_clean",
                                  run_experiment(clean, overrides.threads)});
    }
  }
  write_outputs(spec, overrides, all, "_robustness",
                spec.name + ": rigged-prior regret", out);
  return 0;
}

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Benchmark laboratory for adaptive control of average-reward "
               "MDPs with unknown transitions"};
  app.require_subcommand(1);

  std::string spec_arg;
  CliOverrides overrides;

  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("spec", spec_arg,
                    "Spec file path, or the built-in preset 'paper_example'")
        ->required();
    cmd->add_flag("--dump-spec", overrides.dump_spec,
                  "Print the effective spec as JSON and exit");
  };
  const auto add_run_options = [&](CLI::App* cmd) {
    cmd->add_option("--policy", overrides.policies,
                    "Policy name (repeatable): ucb, dmed, ps, oracle");
    cmd->add_option("--horizon", overrides.horizon, "Steps per episode");
    cmd->add_option("--reps", overrides.replications, "Replications");
    cmd->add_option("--seed", overrides.seed, "Base seed");
    cmd->add_option("--out-dir", overrides.out_dir, "Output directory");
    cmd->add_option("--threads", overrides.threads,
                    "Worker threads (0 = hardware)");
    cmd->add_flag("--log-x", overrides.log_x, "Logarithmic x axis in the SVG");
  };

  CLI::App* solve = app.add_subcommand("solve", "Solve with complete information");
  add_common(solve);

  CLI::App* simulate =
      app.add_subcommand("simulate", "Run the learning policies and plot regret");
  add_common(simulate);
  add_run_options(simulate);

  CLI::App* robustness = app.add_subcommand(
      "robustness", "Run with the rigged count prior preloaded");
  add_common(robustness);
  add_run_options(robustness);
  robustness->add_flag("--paired", overrides.paired,
                       "Also run and plot the clean counterpart");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    ExperimentSpec spec = ExperimentSpec::load(spec_arg);
    apply_overrides(spec, overrides);
    if (overrides.dump_spec) {
      std::cout << spec.to_json().dump(2) << "\n";
      return 0;
    }
    if (solve->parsed()) return cmd_solve(spec, std::cout);
    if (simulate->parsed()) return cmd_simulate(spec, overrides, std::cout);
    return cmd_robustness(spec, overrides, std::cout);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace mdplab
