#include "exadam/cli.hpp"

#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "exadam/config_file.hpp"
#include "exadam/errors.hpp"
#include "exadam/harness.hpp"
#include "exadam/selfcheck.hpp"
#include "exadam/trace.hpp"

namespace exadam {

namespace {

const char* kUsage =
    "usage: exadam <verb> [flags]\n"
    "  run             --config PATH [--out DIR] [--seed N] [--format csv|json|md]\n"
    "  compare         --config PATH [--out DIR] [--seed N] [--format csv|json|md]\n"
    "  check           run the invariant/conformance suite\n"
    "  export-goldens  [--out DIR] write reference stepping diagnostics\n"
    "  EXADAM_THREADS caps sweep parallelism.\n";

std::string trace_filename(const RunTrace& trace, const char* ext) {
  return trace.optimizer + "_" + trace.problem + ".trace." + ext;
}

void write_trace(const RunTrace& trace, const std::string& out_dir, const std::string& format) {
  const std::string base = out_dir + "/";
  if (format == "json") {
    write_file_atomic(base + trace_filename(trace, "json"), trace.to_json().dump(2) + "\n");
  } else {
    write_file_atomic(base + trace_filename(trace, "csv"), trace.to_csv());
  }
}

int do_run(const CliCommand& cmd) {
  ExperimentConfig cfg = experiment_from_config(parse_config_file(cmd.config_path));
  if (cmd.seed) cfg.seed = *cmd.seed;
  const RunTrace trace = run_experiment(cfg);
  if (cmd.format == "md") {
    const ComparisonReport report = compare_optimizers({cfg});
    write_file_atomic(cmd.out_dir + "/report.md", report.to_markdown());
  } else {
    write_trace(trace, cmd.out_dir, cmd.format);
  }
  std::cerr << "run: " << trace.optimizer << " on " << trace.problem << ", "
            << trace.epochs.size() << " epochs, final val loss "
            << format_double(trace.epochs.empty() ? 0.0 : trace.epochs.back().val_loss) << " ("
            << format_double(trace.wall_time_seconds) << " s)\n";
  return 0;
}

int do_compare(const CliCommand& cmd) {
  std::vector<ExperimentConfig> cfgs = sweep_from_config(parse_config_file(cmd.config_path));
  if (cmd.seed) {
    for (ExperimentConfig& c : cfgs) c.seed = *cmd.seed;
  }
  const ComparisonReport report = compare_optimizers(cfgs);
  for (const RunTrace& trace : report.traces) write_trace(trace, cmd.out_dir, "csv");
  if (cmd.format == "md") {
    write_file_atomic(cmd.out_dir + "/report.md", report.to_markdown());
  } else if (cmd.format == "json") {
    nlohmann::json j{{"problem", report.problem}, {"seed", report.seed}};
    for (const auto& s : report.summaries) {
      nlohmann::json row{{"optimizer", s.optimizer},
                         {"final_train_loss", s.final_train_loss},
                         {"final_val_loss", s.final_val_loss},
                         {"best_val_loss", s.best_val_loss},
                         {"diverged", s.diverged}};
      if (s.epochs_to_threshold) row["epochs_to_threshold"] = *s.epochs_to_threshold;
      j["summaries"].push_back(row);
    }
    write_file_atomic(cmd.out_dir + "/report.json", j.dump(2) + "\n");
  } else {
    std::ostringstream csv;
    csv << "optimizer,final_train_loss,final_val_loss,best_val_loss,epochs_to_threshold,"
           "diverged\n";
    for (const auto& s : report.summaries) {
      csv << s.optimizer << ',' << format_double(s.final_train_loss) << ','
          << format_double(s.final_val_loss) << ',' << format_double(s.best_val_loss) << ',';
      if (s.epochs_to_threshold) csv << *s.epochs_to_threshold;
      csv << ',' << (s.diverged ? "yes" : "no") << '\n';
    }
    write_file_atomic(cmd.out_dir + "/report.csv", csv.str());
  }
  std::cerr << "compare: " << report.summaries.size() << " optimizers on " << report.problem
            << "\n";
  return 0;
}

int do_check() {
  const std::vector<CheckResult> results = run_self_checks();
  bool all = true;
  for (const CheckResult& r : results) {
    std::cout << (r.passed ? "[PASS] " : "[FAIL] ") << r.name;
    if (!r.detail.empty()) std::cout << ": " << r.detail;
    std::cout << "\n";
    all = all && r.passed;
  }
  return all ? 0 : 1;
}

int do_export_goldens(const CliCommand& cmd) {
  write_file_atomic(cmd.out_dir + "/step_goldens.json", export_step_goldens().dump(2) + "\n");
  std::cerr << "export-goldens: wrote " << cmd.out_dir << "/step_goldens.json\n";
  return 0;
}

}  // namespace

CliCommand parse_args(int argc, const char* const* argv) {
  CliCommand cmd;
  CLI::App app{"optimizer benchmark"};
  app.require_subcommand(1);

  std::string format = "csv";
  std::uint64_t seed = 0;
  bool seed_set = false;

  auto add_common = [&](CLI::App* sub, bool needs_config) {
    if (needs_config) sub->add_option("--config", cmd.config_path, "config file")->required();
    sub->add_option("--out", cmd.out_dir, "output directory");
    sub->add_option("--seed", seed, "seed override")->each([&](const std::string&) {
      seed_set = true;
    });
    sub->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"csv", "json", "md"}));
  };

  CLI::App* run = app.add_subcommand("run", "run one experiment");
  add_common(run, true);
  CLI::App* compare = app.add_subcommand("compare", "run an optimizer sweep");
  add_common(compare, true);
  CLI::App* check = app.add_subcommand("check", "run the invariant suite");
  (void)check;
  CLI::App* exp = app.add_subcommand("export-goldens", "write reference stepping diagnostics");
  exp->add_option("--out", cmd.out_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  if (app.got_subcommand(run)) {
    cmd.verb = CliCommand::Verb::run;
  } else if (app.got_subcommand(compare)) {
    cmd.verb = CliCommand::Verb::compare;
  } else if (app.got_subcommand(check)) {
    cmd.verb = CliCommand::Verb::check;
  } else {
    cmd.verb = CliCommand::Verb::export_goldens;
  }
  cmd.format = format;
  if (seed_set) cmd.seed = seed;
  return cmd;
}

int execute(const CliCommand& cmd) {
  switch (cmd.verb) {
    case CliCommand::Verb::run:
      return do_run(cmd);
    case CliCommand::Verb::compare:
      return do_compare(cmd);
    case CliCommand::Verb::check:
      return do_check();
    case CliCommand::Verb::export_goldens:
      return do_export_goldens(cmd);
  }
  return 1;
}

int cli_main(int argc, const char* const* argv) {
  try {
    const CliCommand cmd = parse_args(argc, argv);
    return execute(cmd);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n" << kUsage;
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace exadam
