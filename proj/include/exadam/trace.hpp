#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

namespace exadam {

struct EpochRecord {
  std::size_t epoch = 0;  // 1-based
  double train_loss = 0.0;
  double train_accuracy = 0.0;  // NaN when the problem has no accuracy metric
  double val_loss = 0.0;
  double val_accuracy = 0.0;
  double lr = 0.0;  // rate in effect during the epoch
};

/// Per-epoch time series of one run. Serialisation covers only the
/// deterministic content; wall_time_seconds stays in memory so identical
/// configs produce identical bytes.
struct RunTrace {
  std::string optimizer;
  std::string problem;
  std::uint64_t seed = 0;
  std::vector<EpochRecord> epochs;
  std::vector<double> step_loss;  // optional per-step training-batch loss
  double wall_time_seconds = 0.0;

  /// Columns: epoch,train_loss,train_accuracy,val_loss,val_accuracy,lr
  /// (numbers with 17 significant digits).
  void write_csv(std::ostream& out) const;
  std::string to_csv() const;

  nlohmann::json to_json() const;
  static RunTrace from_json(const nlohmann::json& j);

  /// FNV-1a over the CSV serialisation; stable across runs for a fixed
  /// config.
  std::uint64_t content_hash() const;
};

/// 17-significant-digit formatting used for all CSV/markdown output, chosen
/// so parsing the text recovers the exact double.
std::string format_double(double x);

}  // namespace exadam
