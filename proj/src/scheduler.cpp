#include "exadam/scheduler.hpp"

#include <algorithm>
#include <cmath>

#include "exadam/errors.hpp"

namespace exadam {

PlateauScheduler::PlateauScheduler(const SchedulerConfig& cfg) : cfg_(cfg) {
  if (!(cfg.factor > 0.0 && cfg.factor < 1.0))
    throw InvalidArgument("scheduler: factor must be in (0, 1)");
  if (cfg.patience < 0) throw InvalidArgument("scheduler: patience must be >= 0");
  if (!(cfg.min_lr >= 0.0)) throw InvalidArgument("scheduler: min_lr must be >= 0");
  if (!(cfg.rel_threshold >= 0.0)) throw InvalidArgument("scheduler: rel_threshold must be >= 0");
}

double PlateauScheduler::step(double val_loss, double current_lr) {
  if (!std::isfinite(val_loss)) throw NonFinite("scheduler: non-finite validation loss");
  if (!cfg_.enabled) return current_lr;
  if (val_loss < best_metric_ * (1.0 - cfg_.rel_threshold)) {
    best_metric_ = val_loss;
    bad_epochs_ = 0;
    return current_lr;
  }
  ++bad_epochs_;
  if (bad_epochs_ > cfg_.patience) {
    bad_epochs_ = 0;
    return std::max(current_lr * cfg_.factor, cfg_.min_lr);
  }
  return current_lr;
}

}  // namespace exadam
