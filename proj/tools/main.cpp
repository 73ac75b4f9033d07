#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "npg/harness.hpp"

namespace {

struct CliOptions {
  npg::RunConfig config;
  std::string sweep_text;
  std::string config_path;
};

void add_common_options(CLI::App* cmd, CliOptions& opts) {
  cmd->add_option("--config", opts.config_path, "flat key=value config file; flags override it");
  cmd->add_option("--scenario", opts.config.scenario, "scenario name");
  cmd->add_option("--d0", opts.config.d0, "demand at zero usage price");
  cmd->add_option("--d", opts.config.d, "demand sensitivity");
  cmd->add_option("--ps", opts.config.ps, "side-payment rate (signed)");
  cmd->add_option("--pa", opts.config.pa, "advertising rate");
  cmd->add_option("--gamma", opts.config.gamma, "class-choice price sensitivity");
  cmd->add_option("--dl", opts.config.dl, "low-class demand coefficient");
  cmd->add_option("--dh", opts.config.dh, "high-class demand coefficient");
  cmd->add_option("--d2", opts.config.d2, "content demand coefficient");
  cmd->add_option("--stickiness", opts.config.stickiness, "reciprocal|slackness");
  cmd->add_option("--leader", opts.config.leader, "isp|cp");
  cmd->add_option("--sweep", opts.sweep_text, "swept parameter as param:start:stop:step");
  cmd->add_option("--out", opts.config.out_path, "output file path");
  cmd->add_flag("--verify", opts.config.verify, "run the epsilon-Nash oracle on the outcome");
  cmd->add_option("--epsilon", opts.config.epsilon, "epsilon-Nash tolerance");
  cmd->add_option("--grid", opts.config.grid, "oracle grid points / field resolution");
}

// Config file entries apply only where no flag of the same name was given.
void load_config(CLI::App* cmd, CliOptions& opts) {
  if (opts.config_path.empty()) return;
  for (const auto& [key, value] : npg::read_config_file(opts.config_path)) {
    if (key == "sweep") {
      if (cmd->count("--sweep") == 0) opts.sweep_text = value;
      continue;
    }
    if (cmd->count("--" + key) > 0) continue;
    npg::apply_config_entry(opts.config, key, value);
  }
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw npg::IoError("cannot open output path '" + path + "'");
  return out;
}

int run_solve(CliOptions& opts, bool force_verify) {
  if (force_verify) opts.config.verify = true;
  const npg::ScenarioRun run = npg::run_scenario(opts.config);
  npg::write_summary(std::cout, run);
  if (!opts.config.out_path.empty()) {
    std::ofstream out = open_output(opts.config.out_path);
    npg::write_solve_json(out, run);
    if (!out) throw npg::IoError("failed writing '" + opts.config.out_path + "'");
  }
  for (const npg::NashCheck& check : run.checks)
    if (!check.pass) return 1;
  return 0;
}

int run_sweep(CliOptions& opts) {
  opts.config.sweep_spec = npg::parse_sweep(opts.sweep_text);
  const npg::SweepTable table = npg::sweep(opts.config);
  if (opts.config.out_path.empty()) {
    table.write_csv(std::cout);
  } else {
    std::ofstream out = open_output(opts.config.out_path);
    table.write_csv(out);
    if (!out) throw npg::IoError("failed writing '" + opts.config.out_path + "'");
    std::cout << "wrote " << table.rows.size() << " rows to " << opts.config.out_path << "\n";
  }
  return 0;
}

int run_field(CliOptions& opts) {
  const npg::FieldTable table = npg::field(opts.config);
  if (opts.config.out_path.empty()) {
    table.write_csv(std::cout);
  } else {
    std::ofstream out = open_output(opts.config.out_path);
    table.write_csv(out);
    if (!out) throw npg::IoError("failed writing '" + opts.config.out_path + "'");
    std::cout << "wrote " << table.samples.size() << " samples to " << opts.config.out_path
              << "\n";
  }
  return 0;
}

int run_report(CliOptions& opts) {
  const std::vector<npg::ReportEntry> entries = npg::report(opts.config);
  npg::write_report(std::cout, entries);
  if (!opts.config.out_path.empty()) {
    std::ofstream out = open_output(opts.config.out_path);
    npg::write_report_csv(out, entries);
    if (!out) throw npg::IoError("failed writing '" + opts.config.out_path + "'");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"equilibria of usage-priced ISP / content-provider market games"};
  app.require_subcommand(1);

  CliOptions solve_opts, sweep_opts, field_opts, verify_opts, report_opts;
  CLI::App* solve = app.add_subcommand("solve", "solve one scenario and print the equilibrium");
  add_common_options(solve, solve_opts);
  CLI::App* sweep = app.add_subcommand("sweep", "sweep a parameter and write CSV rows");
  add_common_options(sweep, sweep_opts);
  CLI::App* field = app.add_subcommand("field", "sample the coalition gradient field as CSV");
  add_common_options(field, field_opts);
  CLI::App* verify = app.add_subcommand("verify", "solve and run the epsilon-Nash oracle");
  add_common_options(verify, verify_opts);
  CLI::App* report = app.add_subcommand("report", "closed-form vs printed vs oracle table");
  add_common_options(report, report_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (solve->parsed()) {
      load_config(solve, solve_opts);
      return run_solve(solve_opts, false);
    }
    if (sweep->parsed()) {
      load_config(sweep, sweep_opts);
      return run_sweep(sweep_opts);
    }
    if (field->parsed()) {
      load_config(field, field_opts);
      return run_field(field_opts);
    }
    if (verify->parsed()) {
      load_config(verify, verify_opts);
      return run_solve(verify_opts, true);
    }
    if (report->parsed()) {
      load_config(report, report_opts);
      return run_report(report_opts);
    }
  } catch (const npg::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const npg::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const npg::OracleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
