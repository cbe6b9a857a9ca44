#include "exadam/exadam.hpp"

#include <cmath>

#include "exadam/errors.hpp"

namespace exadam {

double pow_seq(double beta, long long t) {
  double p = 1.0;
  for (long long i = 0; i < t && p != 0.0; ++i) p *= beta;
  return p;
}

double cross_term(double r, double epsilon, double beta_pow) {
  return r / (r + epsilon) * beta_pow;
}

namespace {

void check_inputs(const Vec& a, const Vec& v, const char* what) {
  require_same_length(a, v, what);
  for (double x : v) {
    if (x < 0.0) throw InvalidArgument(std::string(what) + ": negative second moment");
  }
}

void check_step(long long t, const char* what) {
  if (t < 1) throw InvalidArgument(std::string(what) + ": step must be >= 1");
}

}  // namespace

Vec corrected_first_moment(const Vec& m, const Vec& v, BetaPowers p, const OptimizerConfig& cfg) {
  check_inputs(m, v, "corrected_first_moment");
  Vec out(m.size());
  const double bias1 = 1.0 - p.beta1_pow;
  for (std::size_t i = 0; i < m.size(); ++i) {
    const double m_hat = m[i] / bias1;
    out[i] = cfg.enable_cross_moment
                 ? m_hat * (1.0 + cross_term(v[i], cfg.epsilon, p.beta2_pow))
                 : m_hat;
  }
  return out;
}

Vec corrected_first_moment(const Vec& m, const Vec& v, long long t, const OptimizerConfig& cfg) {
  check_step(t, "corrected_first_moment");
  return corrected_first_moment(m, v, BetaPowers{pow_seq(cfg.beta1, t), pow_seq(cfg.beta2, t)},
                                cfg);
}

Vec corrected_second_moment(const Vec& m, const Vec& v, BetaPowers p, const OptimizerConfig& cfg) {
  check_inputs(m, v, "corrected_second_moment");
  Vec out(m.size());
  const double bias2 = 1.0 - p.beta2_pow;
  for (std::size_t i = 0; i < m.size(); ++i) {
    const double v_hat = v[i] / bias2;
    out[i] = cfg.enable_cross_moment
                 ? v_hat * (1.0 + cross_term(m[i] * m[i], cfg.epsilon, p.beta1_pow))
                 : v_hat;
  }
  return out;
}

Vec corrected_second_moment(const Vec& m, const Vec& v, long long t, const OptimizerConfig& cfg) {
  check_step(t, "corrected_second_moment");
  return corrected_second_moment(m, v, BetaPowers{pow_seq(cfg.beta1, t), pow_seq(cfg.beta2, t)},
                                 cfg);
}

Vec accelerated_gradient(const Vec& g, const Vec& v, BetaPowers p, const OptimizerConfig& cfg) {
  check_inputs(g, v, "accelerated_gradient");
  if (!cfg.enable_accelerator) return Vec(g.size(), 0.0);
  Vec out(g.size());
  const double bias1 = 1.0 - p.beta1_pow;
  for (std::size_t i = 0; i < g.size(); ++i) {
    out[i] = g[i] / bias1 * (1.0 + cross_term(v[i], cfg.epsilon, p.beta2_pow));
  }
  return out;
}

Vec accelerated_gradient(const Vec& g, const Vec& v, long long t, const OptimizerConfig& cfg) {
  check_step(t, "accelerated_gradient");
  return accelerated_gradient(g, v, BetaPowers{pow_seq(cfg.beta1, t), pow_seq(cfg.beta2, t)}, cfg);
}

ExAdam::ExAdam(const OptimizerConfig& cfg, std::size_t dim) : Optimizer(cfg), state_(dim) {}

void ExAdam::restore_state(const MomentState& s) {
  if (s.m.size() != state_.m.size()) throw LengthMismatch("restore_state: dimension mismatch");
  state_ = s;
}

StepDiagnostics ExAdam::step_with_diagnostics(Vec& theta, const Vec& grad) {
  require_same_length(theta, grad, "exadam step");
  require_same_length(theta, state_.m, "exadam step state");
  require_finite(grad, "gradient");

  state_.t += 1;
  state_.beta1_pow *= cfg_.beta1;
  state_.beta2_pow *= cfg_.beta2;
  for (std::size_t i = 0; i < grad.size(); ++i) {
    state_.m[i] = cfg_.beta1 * state_.m[i] + (1.0 - cfg_.beta1) * grad[i];
    state_.v[i] = cfg_.beta2 * state_.v[i] + (1.0 - cfg_.beta2) * grad[i] * grad[i];
  }

  const BetaPowers p{state_.beta1_pow, state_.beta2_pow};
  StepDiagnostics diag;
  diag.m_corrected = corrected_first_moment(state_.m, state_.v, p, cfg_);
  diag.v_corrected = corrected_second_moment(state_.m, state_.v, p, cfg_);
  diag.g_accel = accelerated_gradient(grad, state_.v, p, cfg_);
  diag.update.resize(grad.size());
  for (std::size_t i = 0; i < grad.size(); ++i) {
    diag.update[i] = -cfg_.alpha * (diag.m_corrected[i] + diag.g_accel[i]) /
                     (std::sqrt(diag.v_corrected[i]) + cfg_.epsilon);
    theta[i] += diag.update[i];
  }
  return diag;
}

void ExAdam::step(Vec& theta, const Vec& grad) { step_with_diagnostics(theta, grad); }

}  // namespace exadam
