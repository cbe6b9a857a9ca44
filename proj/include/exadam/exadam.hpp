#pragma once

#include "exadam/optimizer.hpp"
#include "exadam/vec.hpp"

namespace exadam {

/// beta^t by sequential multiplication, matching the value an optimizer
/// carries in its state after t steps bit for bit. Underflow to 0 for large
/// t is deliberate; the correction factors then collapse to exactly 1.
double pow_seq(double beta, long long t);

/// Cross-moment correction term r/(r+eps) * beta_pow for r >= 0. Lies in
/// [0, beta_pow), reaching 0 exactly when r = 0 or beta_pow = 0.
double cross_term(double r, double epsilon, double beta_pow);

struct BetaPowers {
  double beta1_pow;
  double beta2_pow;
};

// ---------------------------------------------------------------------------
// The three corrected quantities that differentiate this stepping rule from
// plain Adam. Elementwise over the moment buffers:
//
//   m_corrected[i] = m[i]/(1-beta1^t) * (1 + v[i]/(v[i]+eps) * beta2^t)
//   v_corrected[i] = v[i]/(1-beta2^t) * (1 + m[i]^2/(m[i]^2+eps) * beta1^t)
//   g_accel[i]     = g[i]/(1-beta1^t) * (1 + v[i]/(v[i]+eps) * beta2^t)
//
// With enable_cross_moment off the parenthesised factors are forced to
// exactly 1 (recovering Adam's bias correction); with enable_accelerator off
// g_accel is all zeros. The t-based overloads throw InvalidArgument for
// t < 1 or negative v.
// ---------------------------------------------------------------------------

Vec corrected_first_moment(const Vec& m, const Vec& v, BetaPowers p, const OptimizerConfig& cfg);
Vec corrected_first_moment(const Vec& m, const Vec& v, long long t, const OptimizerConfig& cfg);

Vec corrected_second_moment(const Vec& m, const Vec& v, BetaPowers p, const OptimizerConfig& cfg);
Vec corrected_second_moment(const Vec& m, const Vec& v, long long t, const OptimizerConfig& cfg);

Vec accelerated_gradient(const Vec& g, const Vec& v, BetaPowers p, const OptimizerConfig& cfg);
Vec accelerated_gradient(const Vec& g, const Vec& v, long long t, const OptimizerConfig& cfg);

/// Adam variant with cross-moment bias correction and a direct-gradient
/// acceleration term:
///
///   m <- beta1 m + (1-beta1) g        v <- beta2 v + (1-beta2) g^2
///   theta <- theta - alpha * (m_corrected + g_accel)
///                          / (sqrt(v_corrected) + eps)
///
/// Moments are updated before the corrected quantities are evaluated and t
/// is incremented first, so the first step sees t = 1. Note the combined
/// numerator makes the first step roughly 16x larger than Adam's for unit
/// gradients; step_with_diagnostics exposes the exact update.
class ExAdam : public Optimizer {
 public:
  ExAdam(const OptimizerConfig& cfg, std::size_t dim);

  void step(Vec& theta, const Vec& grad) override;
  StepDiagnostics step_with_diagnostics(Vec& theta, const Vec& grad);

  std::string_view name() const override { return "exadam"; }
  nlohmann::json state_json() const override { return state_.to_json(); }

  const MomentState& state() const { return state_; }
  void restore_state(const MomentState& s);

 private:
  MomentState state_;
};

}  // namespace exadam
