#include "exadam/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <sstream>
#include <thread>

#include "exadam/errors.hpp"

namespace exadam {

namespace {
constexpr double kDivergenceCeiling = 1e12;
}

std::unique_ptr<Problem> make_problem(const ProblemSpec& spec, std::uint64_t seed) {
  if (spec.name == "quadratic") return quadratic_problem(spec.dim, spec.condition, seed);
  if (spec.name == "rosenbrock") return rosenbrock_problem();
  if (spec.name == "logistic")
    return logistic_regression_problem(spec.n, spec.d, spec.separation, seed);
  if (spec.name == "mlp_spiral") return mlp_spiral_problem(spec.layers, spec.n, seed);
  throw InvalidArgument("unknown problem: " + spec.name);
}

RunTrace run_experiment(const ExperimentConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::unique_ptr<Problem> problem = make_problem(cfg.problem, cfg.seed);
  const std::unique_ptr<Optimizer> optimizer =
      make_optimizer(cfg.optimizer, cfg.opt, problem->dim());
  PlateauScheduler scheduler(cfg.scheduler);

  Vec theta = problem->initial_point();
  RunTrace trace;
  trace.optimizer = cfg.optimizer;
  trace.problem = problem->name();
  trace.seed = cfg.seed;
  trace.epochs.reserve(cfg.epochs);

  const bool has_acc = problem->has_accuracy();
  const double nan = std::numeric_limits<double>::quiet_NaN();

  for (std::size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
    const std::size_t batches = problem->num_batches(cfg.batch_size);
    for (std::size_t b = 0; b < batches; ++b) {
      const BatchRef batch{epoch, b, cfg.batch_size};
      if (cfg.record_step_loss) trace.step_loss.push_back(problem->eval(theta, batch));
      optimizer->step(theta, problem->grad(theta, batch));
    }

    EpochRecord rec;
    rec.epoch = epoch;
    rec.lr = optimizer->learning_rate();
    rec.train_loss = problem->loss(theta, Split::train);
    rec.val_loss = problem->loss(theta, Split::validation);
    rec.train_accuracy = has_acc ? problem->accuracy(theta, Split::train) : nan;
    rec.val_accuracy = has_acc ? problem->accuracy(theta, Split::validation) : nan;
    trace.epochs.push_back(rec);

    if (!std::isfinite(rec.train_loss) || !std::isfinite(rec.val_loss) ||
        rec.train_loss > kDivergenceCeiling || rec.val_loss > kDivergenceCeiling) {
      throw NonFinite("run_experiment: loss diverged at epoch " + std::to_string(epoch) +
                      " (optimizer " + cfg.optimizer + ")");
    }

    optimizer->set_learning_rate(scheduler.step(rec.val_loss, optimizer->learning_rate()));
  }

  trace.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return trace;
}

std::optional<std::size_t> epochs_to_threshold(const RunTrace& trace, double target) {
  if (!std::isfinite(target)) return std::nullopt;
  for (const EpochRecord& r : trace.epochs) {
    if (r.val_loss < target) return r.epoch;
  }
  return std::nullopt;
}

namespace {

std::size_t sweep_parallelism(std::size_t n_configs) {
  std::size_t cap = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("EXADAM_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) cap = static_cast<std::size_t>(v);
  }
  return std::min(cap, std::max<std::size_t>(1, n_configs));
}

std::vector<std::size_t> default_checkpoints(std::size_t epochs) {
  std::vector<std::size_t> out;
  for (std::size_t e : {std::size_t{1}, std::size_t{5}, std::size_t{10}, std::size_t{25},
                        std::size_t{50}, std::size_t{75}, std::size_t{100}}) {
    if (e <= epochs) out.push_back(e);
  }
  if (out.empty() || out.back() != epochs) out.push_back(epochs);
  return out;
}

}  // namespace

ComparisonReport compare_optimizers(const std::vector<ExperimentConfig>& cfgs) {
  if (cfgs.empty()) throw ConfigError("compare: no configurations");
  const ExperimentConfig& first = cfgs.front();
  for (const ExperimentConfig& c : cfgs) {
    if (c.problem.name != first.problem.name || c.seed != first.seed ||
        c.epochs != first.epochs || c.batch_size != first.batch_size) {
      throw ConfigError("compare: configurations must share problem, seed, epochs, batch_size");
    }
  }

  struct Slot {
    RunTrace trace;
    bool diverged = false;
    std::string error;
  };
  std::vector<Slot> slots(cfgs.size());

  const std::size_t workers = sweep_parallelism(cfgs.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cfgs.size()) return;
      try {
        slots[i].trace = run_experiment(cfgs[i]);
      } catch (const NonFinite& e) {
        slots[i].diverged = true;
        slots[i].error = e.what();
        slots[i].trace.optimizer = cfgs[i].optimizer;
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }

  ComparisonReport report;
  report.problem = first.problem.name;
  report.seed = first.seed;
  report.val_loss_target = first.val_loss_target;
  report.checkpoint_epochs = default_checkpoints(first.epochs);
  for (std::size_t i = 0; i < cfgs.size(); ++i) {
    const Slot& s = slots[i];
    report.traces.push_back(s.trace);
    OptimizerSummary sum;
    sum.optimizer = cfgs[i].optimizer;
    sum.diverged = s.diverged;
    if (!s.trace.epochs.empty()) {
      const EpochRecord& last = s.trace.epochs.back();
      sum.final_train_loss = last.train_loss;
      sum.final_train_accuracy = last.train_accuracy;
      sum.final_val_loss = last.val_loss;
      sum.final_val_accuracy = last.val_accuracy;
      sum.best_val_loss = last.val_loss;
      for (const EpochRecord& r : s.trace.epochs)
        sum.best_val_loss = std::min(sum.best_val_loss, r.val_loss);
      sum.epochs_to_threshold = epochs_to_threshold(s.trace, first.val_loss_target);
    }
    report.summaries.push_back(std::move(sum));
  }
  return report;
}

namespace {

std::string pct(double fraction) {
  if (std::isnan(fraction)) return "-";
  return format_double(fraction * 100.0);
}

std::string num(double x) {
  if (std::isnan(x)) return "-";
  return format_double(x);
}

}  // namespace

std::string ComparisonReport::to_markdown() const {
  std::ostringstream out;
  out << "# Optimizer comparison\n\n";
  out << "Problem: `" << problem << "`, seed " << seed << ".\n\n";
  out << "| Optimizer | Epoch | Training Loss | Training Accuracy (%) | Validation Loss | "
         "Validation Accuracy (%) |\n";
  out << "|---|---:|---:|---:|---:|---:|\n";
  for (const RunTrace& trace : traces) {
    for (std::size_t e : checkpoint_epochs) {
      if (e == 0 || e > trace.epochs.size()) continue;
      const EpochRecord& r = trace.epochs[e - 1];
      out << "| " << trace.optimizer << " | " << r.epoch << " | " << num(r.train_loss) << " | "
          << pct(r.train_accuracy) << " | " << num(r.val_loss) << " | " << pct(r.val_accuracy)
          << " |\n";
    }
  }
  out << "\n## Summary\n\n";
  out << "| Optimizer | Final Train Loss | Final Val Loss | Best Val Loss | Final Val Accuracy "
         "(%) | Epochs to target | Status |\n";
  out << "|---|---:|---:|---:|---:|---:|---|\n";
  for (const OptimizerSummary& s : summaries) {
    out << "| " << s.optimizer << " | " << num(s.final_train_loss) << " | "
        << num(s.final_val_loss) << " | " << num(s.best_val_loss) << " | "
        << pct(s.final_val_accuracy) << " | ";
    if (s.epochs_to_threshold) {
      out << *s.epochs_to_threshold;
    } else {
      out << "-";
    }
    out << " | " << (s.diverged ? "diverged" : "ok") << " |\n";
  }
  if (std::isfinite(val_loss_target)) {
    out << "\nEpochs to target = first epoch with validation loss below "
        << format_double(val_loss_target) << ".\n";
  }
  return out.str();
}

}  // namespace exadam
