#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "exadam/optimizer.hpp"
#include "exadam/problems.hpp"
#include "exadam/scheduler.hpp"
#include "exadam/trace.hpp"

namespace exadam {

struct ProblemSpec {
  std::string name;  // quadratic | rosenbrock | logistic | mlp_spiral
  std::size_t dim = 20;
  double condition = 100.0;
  std::size_t n = 1000;  // dataset size
  std::size_t d = 20;    // logistic feature count
  double separation = 4.0;
  std::vector<std::size_t> layers{2, 16, 16, 2};
};

struct ExperimentConfig {
  ProblemSpec problem;
  std::string optimizer = "exadam";
  OptimizerConfig opt;
  std::size_t epochs = 100;
  std::size_t batch_size = 64;  // 0 = full batch
  std::uint64_t seed = 1234;
  SchedulerConfig scheduler;
  double val_loss_target = std::numeric_limits<double>::quiet_NaN();  // epochs-to-threshold
  bool record_step_loss = false;
};

std::unique_ptr<Problem> make_problem(const ProblemSpec& spec, std::uint64_t seed);

/// Runs one experiment: fresh problem and optimizer from the seed, one
/// optimizer step per mini-batch, full-split train/validation metrics per
/// epoch, plateau scheduling on the validation loss. Throws NonFinite when
/// the loss diverges (non-finite or above 1e12).
RunTrace run_experiment(const ExperimentConfig& cfg);

struct OptimizerSummary {
  std::string optimizer;
  double final_train_loss = 0.0;
  double final_train_accuracy = 0.0;
  double final_val_loss = 0.0;
  double final_val_accuracy = 0.0;
  double best_val_loss = 0.0;
  std::optional<std::size_t> epochs_to_threshold;  // first epoch below target
  bool diverged = false;
};

struct ComparisonReport {
  std::string problem;
  std::uint64_t seed = 0;
  double val_loss_target = std::numeric_limits<double>::quiet_NaN();
  std::vector<std::size_t> checkpoint_epochs;
  std::vector<RunTrace> traces;  // one per config, input order
  std::vector<OptimizerSummary> summaries;

  /// Per-optimizer loss/accuracy at the checkpoint epochs plus a summary
  /// table, as markdown.
  std::string to_markdown() const;
};

/// Runs every config (fanning out up to EXADAM_THREADS workers) and collates
/// the traces. All configs must share problem, seed, epochs and batch size;
/// throws ConfigError otherwise. A run that diverges is reported as such
/// rather than failing the sweep.
ComparisonReport compare_optimizers(const std::vector<ExperimentConfig>& cfgs);

/// First epoch whose val_loss < target, checking earlier epochs are not.
std::optional<std::size_t> epochs_to_threshold(const RunTrace& trace, double target);

}  // namespace exadam
