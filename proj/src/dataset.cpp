#include "exadam/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "exadam/errors.hpp"
#include "exadam/rng.hpp"

namespace exadam {

namespace {
constexpr std::uint64_t kSplitStream = 0xD15C0DE5EEDull;  // distinct from epoch streams
}

Dataset::Dataset(Mat inputs, std::vector<int> labels, double train_fraction, std::uint64_t seed)
    : inputs_(std::move(inputs)), labels_(std::move(labels)), seed_(seed) {
  if (inputs_.rows != labels_.size()) throw LengthMismatch("dataset: inputs/labels mismatch");
  if (labels_.empty()) throw InvalidArgument("dataset: empty");
  if (!(train_fraction > 0.0 && train_fraction <= 1.0))
    throw InvalidArgument("dataset: train_fraction must be in (0, 1]");
  for (int c : labels_) {
    if (c < 0) throw InvalidArgument("dataset: negative label");
    num_classes_ = std::max(num_classes_, c + 1);
  }

  std::vector<std::size_t> order(labels_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  Rng rng = Rng::derive(seed_, kSplitStream);
  shuffle_indices(order, rng);
  const auto n_train = static_cast<std::size_t>(
      std::llround(train_fraction * static_cast<double>(order.size())));
  const std::size_t cut = std::clamp<std::size_t>(n_train, 1, order.size());
  train_.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(cut));
  val_.assign(order.begin() + static_cast<std::ptrdiff_t>(cut), order.end());
}

std::size_t Dataset::num_batches(std::size_t batch_size) const {
  if (batch_size == 0 || batch_size >= train_.size()) return 1;
  return (train_.size() + batch_size - 1) / batch_size;
}

std::vector<std::size_t> Dataset::batch(std::size_t epoch, std::size_t batch_index,
                                        std::size_t batch_size) const {
  if (batch_size == 0 || batch_size >= train_.size()) return train_;
  std::vector<std::size_t> perm = train_;
  Rng rng = Rng::derive(seed_, epoch + 1);
  shuffle_indices(perm, rng);
  const std::size_t begin = batch_index * batch_size;
  if (begin >= perm.size()) throw InvalidArgument("dataset: batch index out of range");
  const std::size_t end = std::min(begin + batch_size, perm.size());
  return {perm.begin() + static_cast<std::ptrdiff_t>(begin),
          perm.begin() + static_cast<std::ptrdiff_t>(end)};
}

void Dataset::write_csv(std::ostream& out) const {
  for (std::size_t j = 0; j < feature_dim(); ++j) out << 'f' << j << ',';
  out << "label\n";
  char buf[32];
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = 0; j < feature_dim(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", inputs_.at(i, j));
      out << buf << ',';
    }
    out << labels_[i] << '\n';
  }
}

Dataset Dataset::read_csv(std::istream& in, double train_fraction, std::uint64_t seed) {
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("dataset csv: missing header");
  std::size_t d = static_cast<std::size_t>(std::count(line.begin(), line.end(), ','));
  std::vector<double> values;
  std::vector<int> labels;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream row(line);
    std::string cell;
    std::size_t col = 0;
    while (std::getline(row, cell, ',')) {
      if (col < d) {
        values.push_back(std::stod(cell));
      } else {
        labels.push_back(std::stoi(cell));
      }
      ++col;
    }
    if (col != d + 1) throw ConfigError("dataset csv: ragged row");
  }
  Mat inputs(labels.size(), d);
  inputs.data = Vec(values.begin(), values.end());
  return Dataset(std::move(inputs), std::move(labels), train_fraction, seed);
}

Dataset spiral_dataset(std::size_t n, std::uint64_t seed, double angular_noise,
                       double train_fraction) {
  if (n < 2) throw InvalidArgument("spiral_dataset: n must be >= 2");
  Rng rng = Rng::derive(seed, 1);
  Mat inputs(n, 2);
  std::vector<int> labels(n);
  const std::size_t per_arm = n / 2;
  for (std::size_t i = 0; i < n; ++i) {
    const int c = i < per_arm ? 0 : 1;
    const std::size_t k = c == 0 ? i : i - per_arm;
    const std::size_t arm_n = c == 0 ? per_arm : n - per_arm;
    const double u = arm_n > 1 ? static_cast<double>(k) / static_cast<double>(arm_n - 1) : 0.0;
    const double r = 0.25 + 1.75 * u;
    const double phi =
        3.0 * r + std::numbers::pi * c + angular_noise * rng.next_gaussian();
    inputs.at(i, 0) = r * std::cos(phi);
    inputs.at(i, 1) = r * std::sin(phi);
    labels[i] = c;
  }
  return Dataset(std::move(inputs), std::move(labels), train_fraction, seed);
}

Dataset two_gaussians_dataset(std::size_t n, std::size_t d, double separation,
                              std::uint64_t seed, double train_fraction) {
  if (n < 2 || d < 1) throw InvalidArgument("two_gaussians_dataset: need n >= 2, d >= 1");
  if (separation < 0.0) throw InvalidArgument("two_gaussians_dataset: separation must be >= 0");
  Rng rng = Rng::derive(seed, 2);
  Mat inputs(n, d);
  std::vector<int> labels(n);
  const std::size_t half = n / 2;
  for (std::size_t i = 0; i < n; ++i) {
    const int c = i < half ? 0 : 1;
    const double mean0 = (c == 0 ? -0.5 : 0.5) * separation;  // along the first axis
    for (std::size_t j = 0; j < d; ++j) {
      inputs.at(i, j) = (j == 0 ? mean0 : 0.0) + rng.next_gaussian();
    }
    labels[i] = c;
  }
  return Dataset(std::move(inputs), std::move(labels), train_fraction, seed);
}

}  // namespace exadam
