#pragma once

#include <limits>

namespace exadam {

struct SchedulerConfig {
  bool enabled = true;
  double factor = 0.1;        // multiplicative reduction, in (0, 1)
  int patience = 5;           // epochs without improvement before reducing
  double min_lr = 0.0;        // floor
  double rel_threshold = 1e-4;  // relative improvement threshold
};

/// Reduce-on-plateau policy: a validation loss below best*(1 - rel_threshold)
/// counts as improvement and resets the bad-epoch counter; once the counter
/// exceeds `patience` the learning rate is multiplied by `factor` (clamped
/// to min_lr) and the counter restarts. The returned rate never increases.
class PlateauScheduler {
 public:
  explicit PlateauScheduler(const SchedulerConfig& cfg);

  /// Observes one epoch's validation loss; returns the rate to use next.
  /// Throws NonFinite for NaN/Inf losses.
  double step(double val_loss, double current_lr);

  double best_metric() const { return best_metric_; }
  int bad_epochs() const { return bad_epochs_; }

 private:
  SchedulerConfig cfg_;
  double best_metric_ = std::numeric_limits<double>::infinity();
  int bad_epochs_ = 0;
};

}  // namespace exadam
