#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "exadam/mat.hpp"

namespace exadam {

/// Labelled point set with a deterministic train/validation split and
/// deterministic per-epoch mini-batch shuffling, all derived from one seed.
class Dataset {
 public:
  /// Splits rows into train/validation by a seeded shuffle; the two index
  /// sets are disjoint and together cover every row exactly once.
  Dataset(Mat inputs, std::vector<int> labels, double train_fraction, std::uint64_t seed);

  std::size_t size() const { return labels_.size(); }
  std::size_t feature_dim() const { return inputs_.cols; }
  int num_classes() const { return num_classes_; }

  const Mat& inputs() const { return inputs_; }
  const std::vector<int>& labels() const { return labels_; }
  const std::vector<std::size_t>& train_indices() const { return train_; }
  const std::vector<std::size_t>& val_indices() const { return val_; }

  std::size_t num_batches(std::size_t batch_size) const;

  /// Rows of the given mini-batch, drawn from a fresh shuffle of the train
  /// split for that epoch. Pure function of (seed, epoch, index, size);
  /// batch_size 0 means the whole train split in stored order.
  std::vector<std::size_t> batch(std::size_t epoch, std::size_t batch_index,
                                 std::size_t batch_size) const;

  /// Header row "f0,...,f{d-1},label", one row per point.
  void write_csv(std::ostream& out) const;
  static Dataset read_csv(std::istream& in, double train_fraction, std::uint64_t seed);

 private:
  Mat inputs_;
  std::vector<int> labels_;
  int num_classes_ = 0;
  std::uint64_t seed_ = 0;
  std::vector<std::size_t> train_;
  std::vector<std::size_t> val_;
};

/// Two interleaved spiral arms (classes 0/1) with angular noise; n points
/// total in 2-D. The standard small nonconvex classification task.
Dataset spiral_dataset(std::size_t n, std::uint64_t seed, double angular_noise = 0.1,
                       double train_fraction = 0.9);

/// Two Gaussian clouds in d dimensions whose means are `separation` apart.
Dataset two_gaussians_dataset(std::size_t n, std::size_t d, double separation,
                              std::uint64_t seed, double train_fraction = 0.9);

}  // namespace exadam
