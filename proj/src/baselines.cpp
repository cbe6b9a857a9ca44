#include "exadam/baselines.hpp"

#include <cmath>

#include "exadam/errors.hpp"

namespace exadam {

namespace {

void check_step_inputs(const Vec& theta, const Vec& grad, const Vec& state, const char* what) {
  require_same_length(theta, grad, what);
  require_same_length(theta, state, what);
  require_finite(grad, "gradient");
}

}  // namespace

Adam::Adam(const OptimizerConfig& cfg, std::size_t dim) : Optimizer(cfg), state_(dim) {}

void Adam::step(Vec& theta, const Vec& grad) {
  check_step_inputs(theta, grad, state_.m, "adam step");
  state_.t += 1;
  state_.beta1_pow *= cfg_.beta1;
  state_.beta2_pow *= cfg_.beta2;
  const double bias1 = 1.0 - state_.beta1_pow;
  const double bias2 = 1.0 - state_.beta2_pow;
  for (std::size_t i = 0; i < theta.size(); ++i) {
    state_.m[i] = cfg_.beta1 * state_.m[i] + (1.0 - cfg_.beta1) * grad[i];
    state_.v[i] = cfg_.beta2 * state_.v[i] + (1.0 - cfg_.beta2) * grad[i] * grad[i];
    const double m_hat = state_.m[i] / bias1;
    const double v_hat = state_.v[i] / bias2;
    theta[i] -= cfg_.alpha * m_hat / (std::sqrt(v_hat) + cfg_.epsilon);
  }
}

AdamW::AdamW(const OptimizerConfig& cfg, std::size_t dim) : Optimizer(cfg), state_(dim) {}

void AdamW::step(Vec& theta, const Vec& grad) {
  check_step_inputs(theta, grad, state_.m, "adamw step");
  state_.t += 1;
  state_.beta1_pow *= cfg_.beta1;
  state_.beta2_pow *= cfg_.beta2;
  const double bias1 = 1.0 - state_.beta1_pow;
  const double bias2 = 1.0 - state_.beta2_pow;
  for (std::size_t i = 0; i < theta.size(); ++i) {
    state_.m[i] = cfg_.beta1 * state_.m[i] + (1.0 - cfg_.beta1) * grad[i];
    state_.v[i] = cfg_.beta2 * state_.v[i] + (1.0 - cfg_.beta2) * grad[i] * grad[i];
    const double m_hat = state_.m[i] / bias1;
    const double v_hat = state_.v[i] / bias2;
    theta[i] -= cfg_.alpha * m_hat / (std::sqrt(v_hat) + cfg_.epsilon);
    theta[i] -= cfg_.alpha * cfg_.weight_decay * theta[i];
  }
}

RmsProp::RmsProp(const OptimizerConfig& cfg, std::size_t dim)
    : Optimizer(cfg), sq_avg_(dim, 0.0) {}

void RmsProp::step(Vec& theta, const Vec& grad) {
  check_step_inputs(theta, grad, sq_avg_, "rmsprop step");
  for (std::size_t i = 0; i < theta.size(); ++i) {
    sq_avg_[i] = cfg_.rms_decay * sq_avg_[i] + (1.0 - cfg_.rms_decay) * grad[i] * grad[i];
    theta[i] -= cfg_.alpha * grad[i] / (std::sqrt(sq_avg_[i]) + cfg_.epsilon);
  }
}

nlohmann::json RmsProp::state_json() const { return {{"sq_avg", sq_avg_}}; }

SgdMomentum::SgdMomentum(const OptimizerConfig& cfg, std::size_t dim)
    : Optimizer(cfg), velocity_(dim, 0.0) {}

void SgdMomentum::step(Vec& theta, const Vec& grad) {
  check_step_inputs(theta, grad, velocity_, "sgd step");
  for (std::size_t i = 0; i < theta.size(); ++i) {
    velocity_[i] = cfg_.momentum * velocity_[i] + grad[i];
    theta[i] -= cfg_.alpha * velocity_[i];
  }
}

nlohmann::json SgdMomentum::state_json() const { return {{"velocity", velocity_}}; }

AdaDelta::AdaDelta(const OptimizerConfig& cfg, std::size_t dim)
    : Optimizer(cfg), sq_grad_avg_(dim, 0.0), sq_update_avg_(dim, 0.0) {}

void AdaDelta::step(Vec& theta, const Vec& grad) {
  check_step_inputs(theta, grad, sq_grad_avg_, "adadelta step");
  const double rho = cfg_.adadelta_rho;
  for (std::size_t i = 0; i < theta.size(); ++i) {
    sq_grad_avg_[i] = rho * sq_grad_avg_[i] + (1.0 - rho) * grad[i] * grad[i];
    const double delta = std::sqrt(sq_update_avg_[i] + cfg_.epsilon) /
                         std::sqrt(sq_grad_avg_[i] + cfg_.epsilon) * grad[i];
    sq_update_avg_[i] = rho * sq_update_avg_[i] + (1.0 - rho) * delta * delta;
    theta[i] -= cfg_.alpha * delta;
  }
}

nlohmann::json AdaDelta::state_json() const {
  return {{"sq_grad_avg", sq_grad_avg_}, {"sq_update_avg", sq_update_avg_}};
}

}  // namespace exadam
