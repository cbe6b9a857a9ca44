#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

#include "exadam/vec.hpp"
#include "json.hpp"

namespace exadam {

// One flat hyperparameter set shared by every optimizer; each stepping rule
// reads only the fields it owns. The harness overrides alpha uniformly when
// comparing optimizers.
struct OptimizerConfig {
  double alpha = 1e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  bool enable_cross_moment = true;  // cross-moment correction factors
  bool enable_accelerator = true;   // direct-gradient acceleration term
  double weight_decay = 0.0;        // AdamW
  double momentum = 0.9;            // SGD with momentum
  double rms_decay = 0.99;          // RMSProp smoothing constant
  double adadelta_rho = 0.9;        // AdaDelta averaging constant

  // Throws InvalidArgument unless alpha > 0, epsilon > 0, betas in [0, 1),
  // weight_decay >= 0.
  void validate() const;
};

// First/second moment buffers with the step counter and incrementally
// carried beta powers (beta^t is multiplied up once per step rather than
// recomputed with pow, so trajectories are bit-reproducible).
struct MomentState {
  Vec m;
  Vec v;
  long long t = 0;
  double beta1_pow = 1.0;
  double beta2_pow = 1.0;

  explicit MomentState(std::size_t dim) : m(dim, 0.0), v(dim, 0.0) {}

  // Snapshot shape: {"m": [...], "v": [...], "t": n,
  //                  "beta1_pow": x, "beta2_pow": x}
  nlohmann::json to_json() const;
  static MomentState from_json(const nlohmann::json& j);
};

// Per-step internals exposed for conformance checks and golden traces.
struct StepDiagnostics {
  Vec m_corrected;
  Vec v_corrected;
  Vec g_accel;
  Vec update;  // the signed delta applied to the parameters
};

// Common stepping contract. Instances own their state exclusively; a single
// instance must not be stepped from two threads at once.
class Optimizer {
 public:
  explicit Optimizer(const OptimizerConfig& cfg);
  virtual ~Optimizer() = default;

  // theta <- theta + update(grad). Throws LengthMismatch and NonFinite on
  // bad inputs.
  virtual void step(Vec& theta, const Vec& grad) = 0;

  virtual std::string_view name() const = 0;
  virtual nlohmann::json state_json() const = 0;

  double learning_rate() const { return cfg_.alpha; }
  void set_learning_rate(double alpha);
  const OptimizerConfig& config() const { return cfg_; }

 protected:
  OptimizerConfig cfg_;
};

// Commonly published defaults per optimizer id (alpha, epsilon, decay
// constants); the experiment layer starts from these and applies overrides.
OptimizerConfig default_config_for(std::string_view name);

// Ids: exadam, adam, adamw, rmsprop, sgd_momentum, adadelta.
std::unique_ptr<Optimizer> make_optimizer(std::string_view name, const OptimizerConfig& cfg,
                                          std::size_t dim);

bool is_known_optimizer(std::string_view name);

}  // namespace exadam
