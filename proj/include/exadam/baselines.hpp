#pragma once

#include "exadam/optimizer.hpp"

namespace exadam {

// Reference baselines, each implemented standalone against its published
// update rule. Adam is kept fully independent of the ExAdam code path so the
// ablation-equivalence tests compare two separately written routes.

class Adam : public Optimizer {
 public:
  Adam(const OptimizerConfig& cfg, std::size_t dim);
  void step(Vec& theta, const Vec& grad) override;
  std::string_view name() const override { return "adam"; }
  nlohmann::json state_json() const override { return state_.to_json(); }
  const MomentState& state() const { return state_; }

 private:
  MomentState state_;
};

// Adam plus decoupled weight decay: theta <- theta - alpha*lambda*theta
// applied in addition to the Adam update.
class AdamW : public Optimizer {
 public:
  AdamW(const OptimizerConfig& cfg, std::size_t dim);
  void step(Vec& theta, const Vec& grad) override;
  std::string_view name() const override { return "adamw"; }
  nlohmann::json state_json() const override { return state_.to_json(); }

 private:
  MomentState state_;
};

class RmsProp : public Optimizer {
 public:
  RmsProp(const OptimizerConfig& cfg, std::size_t dim);
  void step(Vec& theta, const Vec& grad) override;
  std::string_view name() const override { return "rmsprop"; }
  nlohmann::json state_json() const override;

 private:
  Vec sq_avg_;
};

class SgdMomentum : public Optimizer {
 public:
  SgdMomentum(const OptimizerConfig& cfg, std::size_t dim);
  void step(Vec& theta, const Vec& grad) override;
  std::string_view name() const override { return "sgd_momentum"; }
  nlohmann::json state_json() const override;

 private:
  Vec velocity_;
};

// Zeiler's rule with a learning-rate multiplier so a harness-supplied alpha
// applies uniformly (alpha = 1 recovers the original method).
class AdaDelta : public Optimizer {
 public:
  AdaDelta(const OptimizerConfig& cfg, std::size_t dim);
  void step(Vec& theta, const Vec& grad) override;
  std::string_view name() const override { return "adadelta"; }
  nlohmann::json state_json() const override;

 private:
  Vec sq_grad_avg_;
  Vec sq_update_avg_;
};

}  // namespace exadam
