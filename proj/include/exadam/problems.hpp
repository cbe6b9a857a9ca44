#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "exadam/dataset.hpp"
#include "exadam/mat.hpp"
#include "exadam/vec.hpp"

namespace exadam {

/// Identifies a deterministic mini-batch of the training split; size 0 means
/// the full split (and is the only meaningful value for analytic problems).
struct BatchRef {
  std::size_t epoch = 0;
  std::size_t index = 0;
  std::size_t size = 0;
};

enum class Split { train, validation, all };

/// One evaluation contract for every objective: loss and analytic gradient
/// for a batch, full-split loss, and an optional accuracy metric. Instances
/// are immutable after construction; evaluation is pure and thread-safe.
class Problem {
 public:
  virtual ~Problem() = default;

  virtual std::size_t dim() const = 0;
  virtual const Vec& initial_point() const = 0;
  virtual std::string name() const = 0;

  virtual double eval(const Vec& theta, const BatchRef& batch) const = 0;
  virtual Vec grad(const Vec& theta, const BatchRef& batch) const = 0;

  virtual double loss(const Vec& theta, Split split) const;

  virtual bool has_accuracy() const { return false; }
  virtual double accuracy(const Vec& theta, Split split) const;

  virtual std::size_t num_batches(std::size_t /*batch_size*/) const { return 1; }
  virtual const Dataset* dataset() const { return nullptr; }
};

/// f(theta) = 1/2 theta^T A theta with A symmetric positive definite,
/// eigenvalues log-spaced in [1, condition_number] under a seeded random
/// orthogonal basis. Gradient A theta; minimum 0 at the origin.
std::unique_ptr<Problem> quadratic_problem(std::size_t dim, double condition_number,
                                           std::uint64_t seed);

/// f(x, y) = (1-x)^2 + 100 (y - x^2)^2, started from (-1.2, 1).
std::unique_ptr<Problem> rosenbrock_problem();

/// Mean binary cross-entropy with logits theta^T x + b on two Gaussian
/// clouds; parameters are [w_0..w_{d-1}, b]. Accuracy metric included.
std::unique_ptr<Problem> logistic_regression_problem(std::size_t n, std::size_t d,
                                                     double separation, std::uint64_t seed);

/// Fully connected tanh network with softmax cross-entropy loss and
/// hand-derived backpropagation; parameters flattened into one vector.
/// Throws InvalidArgument if layer sizes are inconsistent with the dataset.
std::unique_ptr<Problem> mlp_problem(std::vector<std::size_t> layers, Dataset dataset,
                                     std::uint64_t seed);

/// The default nonconvex classification task: layers on the spiral set.
std::unique_ptr<Problem> mlp_spiral_problem(std::vector<std::size_t> layers, std::size_t n,
                                            std::uint64_t seed);

/// Central-difference check of the analytic gradient. Returns
/// max_i |fd_i - grad_i| / max(||grad||_inf, 1e-8); the infinity-norm
/// denominator keeps the measure meaningful for coordinates whose true
/// gradient happens to cross zero.
double fd_gradient_check(const Problem& problem, const Vec& theta, const BatchRef& batch,
                         double h = 1e-6);

}  // namespace exadam
