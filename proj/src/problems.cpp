#include "exadam/problems.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "exadam/errors.hpp"
#include "exadam/rng.hpp"

namespace exadam {

double Problem::loss(const Vec& theta, Split) const { return eval(theta, BatchRef{}); }

double Problem::accuracy(const Vec&, Split) const {
  throw InvalidArgument(name() + ": no accuracy metric");
}

// ---------------------------------------------------------------------------
// quadratic
// ---------------------------------------------------------------------------

namespace {

// Random orthogonal matrix: modified Gram-Schmidt (two passes) on a seeded
// Gaussian matrix.
Mat random_orthogonal(std::size_t d, Rng& rng) {
  Mat q(d, d);
  for (double& x : q.data) x = rng.next_gaussian();
  for (std::size_t j = 0; j < d; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < j; ++k) {
        double proj = 0.0;
        for (std::size_t i = 0; i < d; ++i) proj += q.at(i, j) * q.at(i, k);
        for (std::size_t i = 0; i < d; ++i) q.at(i, j) -= proj * q.at(i, k);
      }
    }
    double norm = 0.0;
    for (std::size_t i = 0; i < d; ++i) norm += q.at(i, j) * q.at(i, j);
    norm = std::sqrt(norm);
    if (norm < 1e-12) throw NonFinite("random_orthogonal: degenerate column");
    for (std::size_t i = 0; i < d; ++i) q.at(i, j) /= norm;
  }
  return q;
}

class QuadraticProblem final : public Problem {
 public:
  QuadraticProblem(std::size_t dim, double condition_number, std::uint64_t seed) {
    if (dim < 1) throw InvalidArgument("quadratic: dim must be >= 1");
    if (!(condition_number >= 1.0))
      throw InvalidArgument("quadratic: condition_number must be >= 1");
    Vec eigenvalues(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      eigenvalues[i] = dim == 1 ? 1.0
                                : std::pow(condition_number,
                                           static_cast<double>(i) / static_cast<double>(dim - 1));
    }
    Rng rng = Rng::derive(seed, 3);
    const Mat q = random_orthogonal(dim, rng);
    // A = Q^T diag(lambda) Q, symmetrised against rounding.
    a_ = Mat(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = i; j < dim; ++j) {
        double s = 0.0;
        for (std::size_t k = 0; k < dim; ++k) s += q.at(k, i) * eigenvalues[k] * q.at(k, j);
        a_.at(i, j) = s;
        a_.at(j, i) = s;
      }
    }
    Rng init_rng = Rng::derive(seed, 4);
    init_ = gaussian(init_rng, dim, 0.0, 1.0);
  }

  std::size_t dim() const override { return a_.rows; }
  const Vec& initial_point() const override { return init_; }
  std::string name() const override { return "quadratic"; }

  double eval(const Vec& theta, const BatchRef&) const override {
    if (theta.size() != dim()) throw LengthMismatch("quadratic eval: dimension mismatch");
    return 0.5 * dot(theta, matvec(a_, theta));
  }

  Vec grad(const Vec& theta, const BatchRef&) const override {
    if (theta.size() != dim()) throw LengthMismatch("quadratic grad: dimension mismatch");
    return matvec(a_, theta);
  }

  const Mat& matrix() const { return a_; }

 private:
  Mat a_;
  Vec init_;
};

class RosenbrockProblem final : public Problem {
 public:
  RosenbrockProblem() : init_{-1.2, 1.0} {}

  std::size_t dim() const override { return 2; }
  const Vec& initial_point() const override { return init_; }
  std::string name() const override { return "rosenbrock"; }

  double eval(const Vec& theta, const BatchRef&) const override {
    if (theta.size() != 2) throw LengthMismatch("rosenbrock eval: dimension mismatch");
    const double x = theta[0], y = theta[1];
    const double t1 = 1.0 - x;
    const double t2 = y - x * x;
    return t1 * t1 + 100.0 * t2 * t2;
  }

  Vec grad(const Vec& theta, const BatchRef&) const override {
    if (theta.size() != 2) throw LengthMismatch("rosenbrock grad: dimension mismatch");
    const double x = theta[0], y = theta[1];
    const double t2 = y - x * x;
    return {-2.0 * (1.0 - x) - 400.0 * x * t2, 200.0 * t2};
  }

 private:
  Vec init_;
};

// ---------------------------------------------------------------------------
// dataset-backed problems
// ---------------------------------------------------------------------------

class DatasetProblem : public Problem {
 public:
  explicit DatasetProblem(Dataset data) : data_(std::move(data)) {}

  const Dataset* dataset() const override { return &data_; }
  std::size_t num_batches(std::size_t batch_size) const override {
    return data_.num_batches(batch_size);
  }
  bool has_accuracy() const override { return true; }

  double eval(const Vec& theta, const BatchRef& batch) const override {
    return eval_indices(theta, data_.batch(batch.epoch, batch.index, batch.size));
  }

  Vec grad(const Vec& theta, const BatchRef& batch) const override {
    return grad_indices(theta, data_.batch(batch.epoch, batch.index, batch.size));
  }

  double loss(const Vec& theta, Split split) const override {
    return eval_indices(theta, split_indices(split));
  }

  double accuracy(const Vec& theta, Split split) const override {
    const std::vector<std::size_t> idx = split_indices(split);
    std::size_t correct = 0;
    for (std::size_t i : idx) correct += predict(theta, i) == data_.labels()[i] ? 1 : 0;
    return static_cast<double>(correct) / static_cast<double>(idx.size());
  }

 protected:
  virtual double eval_indices(const Vec& theta, const std::vector<std::size_t>& idx) const = 0;
  virtual Vec grad_indices(const Vec& theta, const std::vector<std::size_t>& idx) const = 0;
  virtual int predict(const Vec& theta, std::size_t row) const = 0;

  std::vector<std::size_t> split_indices(Split split) const {
    switch (split) {
      case Split::train:
        return data_.train_indices();
      case Split::validation:
        if (data_.val_indices().empty())
          throw InvalidArgument(name() + ": empty validation split");
        return data_.val_indices();
      case Split::all: {
        std::vector<std::size_t> idx(data_.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        return idx;
      }
    }
    throw InvalidArgument("bad split");
  }

  Dataset data_;
};

double sigmoid(double s) {
  return s >= 0.0 ? 1.0 / (1.0 + std::exp(-s)) : std::exp(s) / (1.0 + std::exp(s));
}

class LogisticProblem final : public DatasetProblem {
 public:
  LogisticProblem(Dataset data)
      : DatasetProblem(std::move(data)), init_(data_.feature_dim() + 1, 0.0) {
    if (data_.num_classes() != 2) throw InvalidArgument("logistic: needs exactly two classes");
  }

  std::size_t dim() const override { return data_.feature_dim() + 1; }
  const Vec& initial_point() const override { return init_; }
  std::string name() const override { return "logistic"; }

 protected:
  double logit(const Vec& theta, std::size_t row) const {
    const std::size_t d = data_.feature_dim();
    double s = theta[d];  // bias
    for (std::size_t j = 0; j < d; ++j) s += theta[j] * data_.inputs().at(row, j);
    return s;
  }

  double eval_indices(const Vec& theta, const std::vector<std::size_t>& idx) const override {
    if (theta.size() != dim()) throw LengthMismatch("logistic eval: dimension mismatch");
    double total = 0.0;
    for (std::size_t i : idx) {
      const double s = logit(theta, i);
      const double y = data_.labels()[i];
      // max(s,0) - s*y + log(1 + exp(-|s|)): stable cross-entropy
      total += std::max(s, 0.0) - s * y + std::log1p(std::exp(-std::fabs(s)));
    }
    return total / static_cast<double>(idx.size());
  }

  Vec grad_indices(const Vec& theta, const std::vector<std::size_t>& idx) const override {
    if (theta.size() != dim()) throw LengthMismatch("logistic grad: dimension mismatch");
    const std::size_t d = data_.feature_dim();
    Vec g(dim(), 0.0);
    for (std::size_t i : idx) {
      const double r = sigmoid(logit(theta, i)) - data_.labels()[i];
      for (std::size_t j = 0; j < d; ++j) g[j] += r * data_.inputs().at(i, j);
      g[d] += r;
    }
    const double inv = 1.0 / static_cast<double>(idx.size());
    for (double& x : g) x *= inv;
    return g;
  }

  int predict(const Vec& theta, std::size_t row) const override {
    return logit(theta, row) > 0.0 ? 1 : 0;
  }

 private:
  Vec init_;
};

class MlpProblem final : public DatasetProblem {
 public:
  MlpProblem(std::vector<std::size_t> layers, Dataset data, std::uint64_t seed)
      : DatasetProblem(std::move(data)), layers_(std::move(layers)) {
    if (layers_.size() < 2) throw InvalidArgument("mlp: need at least input and output layers");
    if (layers_.front() != data_.feature_dim())
      throw InvalidArgument("mlp: input layer does not match feature dimension");
    if (layers_.back() != static_cast<std::size_t>(data_.num_classes()))
      throw InvalidArgument("mlp: output layer does not match class count");
    dim_ = 0;
    for (std::size_t l = 0; l + 1 < layers_.size(); ++l)
      dim_ += layers_[l] * layers_[l + 1] + layers_[l + 1];
    // Weights from a small seeded Gaussian, biases zero.
    Rng rng = Rng::derive(seed, 5);
    init_.assign(dim_, 0.0);
    std::size_t off = 0;
    for (std::size_t l = 0; l + 1 < layers_.size(); ++l) {
      for (std::size_t k = 0; k < layers_[l] * layers_[l + 1]; ++k)
        init_[off + k] = 0.1 * rng.next_gaussian();
      off += layers_[l] * layers_[l + 1] + layers_[l + 1];
    }
  }

  std::size_t dim() const override { return dim_; }
  const Vec& initial_point() const override { return init_; }
  std::string name() const override { return "mlp"; }

 protected:
  struct Forward {
    std::vector<Mat> activations;  // activations[0] = inputs, last = logits
    double loss = 0.0;
  };

  // Weight l is (layers[l] x layers[l+1]) row-major at weight_off(l); bias l
  // follows it.
  std::size_t weight_off(std::size_t l) const {
    std::size_t off = 0;
    for (std::size_t k = 0; k < l; ++k) off += layers_[k] * layers_[k + 1] + layers_[k + 1];
    return off;
  }

  Forward forward(const Vec& theta, const std::vector<std::size_t>& idx,
                  bool want_loss) const {
    const std::size_t batch = idx.size();
    Forward f;
    f.activations.reserve(layers_.size());
    Mat x(batch, layers_[0]);
    for (std::size_t r = 0; r < batch; ++r)
      for (std::size_t j = 0; j < layers_[0]; ++j) x.at(r, j) = data_.inputs().at(idx[r], j);
    f.activations.push_back(std::move(x));

    for (std::size_t l = 0; l + 1 < layers_.size(); ++l) {
      const Mat& h = f.activations.back();
      const std::size_t in = layers_[l], out = layers_[l + 1];
      const std::size_t woff = weight_off(l);
      Mat z(batch, out);
      for (std::size_t r = 0; r < batch; ++r) {
        for (std::size_t j = 0; j < out; ++j) z.at(r, j) = theta[woff + in * out + j];  // bias
        for (std::size_t k = 0; k < in; ++k) {
          const double hk = h.at(r, k);
          for (std::size_t j = 0; j < out; ++j) z.at(r, j) += hk * theta[woff + k * out + j];
        }
      }
      const bool last = l + 2 == layers_.size();
      if (!last) {
        for (double& e : z.data) e = std::tanh(e);
      }
      f.activations.push_back(std::move(z));
    }

    if (want_loss) {
      const Mat& logits = f.activations.back();
      const std::size_t classes = layers_.back();
      double total = 0.0;
      for (std::size_t r = 0; r < batch; ++r) {
        double mx = logits.at(r, 0);
        for (std::size_t j = 1; j < classes; ++j) mx = std::max(mx, logits.at(r, j));
        double sum = 0.0;
        for (std::size_t j = 0; j < classes; ++j) sum += std::exp(logits.at(r, j) - mx);
        total += mx + std::log(sum) - logits.at(r, static_cast<std::size_t>(data_.labels()[idx[r]]));
      }
      f.loss = total / static_cast<double>(batch);
    }
    return f;
  }

  double eval_indices(const Vec& theta, const std::vector<std::size_t>& idx) const override {
    if (theta.size() != dim_) throw LengthMismatch("mlp eval: dimension mismatch");
    return forward(theta, idx, true).loss;
  }

  Vec grad_indices(const Vec& theta, const std::vector<std::size_t>& idx) const override {
    if (theta.size() != dim_) throw LengthMismatch("mlp grad: dimension mismatch");
    const Forward f = forward(theta, idx, false);
    const std::size_t batch = idx.size();
    const std::size_t classes = layers_.back();

    Vec g(dim_, 0.0);
    // dL/dlogits = (softmax - onehot) / batch
    const Mat& logits = f.activations.back();
    Mat delta(batch, classes);
    for (std::size_t r = 0; r < batch; ++r) {
      double mx = logits.at(r, 0);
      for (std::size_t j = 1; j < classes; ++j) mx = std::max(mx, logits.at(r, j));
      double sum = 0.0;
      for (std::size_t j = 0; j < classes; ++j) sum += std::exp(logits.at(r, j) - mx);
      for (std::size_t j = 0; j < classes; ++j)
        delta.at(r, j) = std::exp(logits.at(r, j) - mx) / sum;
      delta.at(r, static_cast<std::size_t>(data_.labels()[idx[r]])) -= 1.0;
    }
    const double inv = 1.0 / static_cast<double>(batch);
    for (double& e : delta.data) e *= inv;

    for (std::size_t l = layers_.size() - 1; l-- > 0;) {
      const Mat& h = f.activations[l];  // input to layer l
      const std::size_t in = layers_[l], out = layers_[l + 1];
      const std::size_t woff = weight_off(l);
      // weight and bias gradients
      for (std::size_t r = 0; r < batch; ++r) {
        for (std::size_t k = 0; k < in; ++k) {
          const double hk = h.at(r, k);
          for (std::size_t j = 0; j < out; ++j) g[woff + k * out + j] += hk * delta.at(r, j);
        }
        for (std::size_t j = 0; j < out; ++j) g[woff + in * out + j] += delta.at(r, j);
      }
      if (l == 0) break;
      // propagate: delta_prev = (delta W^T) * (1 - h^2)
      Mat prev(batch, in);
      for (std::size_t r = 0; r < batch; ++r) {
        for (std::size_t k = 0; k < in; ++k) {
          double s = 0.0;
          for (std::size_t j = 0; j < out; ++j) s += delta.at(r, j) * theta[woff + k * out + j];
          const double hk = h.at(r, k);
          prev.at(r, k) = s * (1.0 - hk * hk);
        }
      }
      delta = std::move(prev);
    }
    return g;
  }

  int predict(const Vec& theta, std::size_t row) const override {
    const Forward f = forward(theta, {row}, false);
    const Mat& logits = f.activations.back();
    std::size_t best = 0;
    for (std::size_t j = 1; j < layers_.back(); ++j)
      if (logits.at(0, j) > logits.at(0, best)) best = j;
    return static_cast<int>(best);
  }

 private:
  std::vector<std::size_t> layers_;
  std::size_t dim_ = 0;
  Vec init_;
};

}  // namespace

std::unique_ptr<Problem> quadratic_problem(std::size_t dim, double condition_number,
                                           std::uint64_t seed) {
  return std::make_unique<QuadraticProblem>(dim, condition_number, seed);
}

std::unique_ptr<Problem> rosenbrock_problem() { return std::make_unique<RosenbrockProblem>(); }

std::unique_ptr<Problem> logistic_regression_problem(std::size_t n, std::size_t d,
                                                     double separation, std::uint64_t seed) {
  return std::make_unique<LogisticProblem>(two_gaussians_dataset(n, d, separation, seed));
}

std::unique_ptr<Problem> mlp_problem(std::vector<std::size_t> layers, Dataset dataset,
                                     std::uint64_t seed) {
  return std::make_unique<MlpProblem>(std::move(layers), std::move(dataset), seed);
}

std::unique_ptr<Problem> mlp_spiral_problem(std::vector<std::size_t> layers, std::size_t n,
                                            std::uint64_t seed) {
  return std::make_unique<MlpProblem>(std::move(layers), spiral_dataset(n, seed), seed);
}

double fd_gradient_check(const Problem& problem, const Vec& theta, const BatchRef& batch,
                         double h) {
  if (!(h > 0.0)) throw InvalidArgument("fd_gradient_check: h must be > 0");
  const Vec g = problem.grad(theta, batch);
  const double denom = std::max(max_abs(g), 1e-8);
  Vec probe = theta;
  double worst = 0.0;
  for (std::size_t i = 0; i < theta.size(); ++i) {
    probe[i] = theta[i] + h;
    const double fp = problem.eval(probe, batch);
    probe[i] = theta[i] - h;
    const double fm = problem.eval(probe, batch);
    probe[i] = theta[i];
    const double fd = (fp - fm) / (2.0 * h);
    worst = std::max(worst, std::fabs(fd - g[i]) / denom);
  }
  return worst;
}

}  // namespace exadam
