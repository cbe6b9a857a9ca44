#include "exadam/optimizer.hpp"

#include "exadam/baselines.hpp"
#include "exadam/errors.hpp"
#include "exadam/exadam.hpp"

namespace exadam {

void OptimizerConfig::validate() const {
  // alpha = 0 is allowed as the degenerate frozen-parameter case.
  if (!(alpha >= 0.0)) throw InvalidArgument("config: alpha must be >= 0");
  if (!(beta1 >= 0.0 && beta1 < 1.0)) throw InvalidArgument("config: beta1 must be in [0, 1)");
  if (!(beta2 >= 0.0 && beta2 < 1.0)) throw InvalidArgument("config: beta2 must be in [0, 1)");
  if (!(epsilon > 0.0)) throw InvalidArgument("config: epsilon must be > 0");
  if (!(weight_decay >= 0.0)) throw InvalidArgument("config: weight_decay must be >= 0");
  if (!(momentum >= 0.0 && momentum < 1.0))
    throw InvalidArgument("config: momentum must be in [0, 1)");
  if (!(rms_decay >= 0.0 && rms_decay < 1.0))
    throw InvalidArgument("config: rms_decay must be in [0, 1)");
  if (!(adadelta_rho >= 0.0 && adadelta_rho < 1.0))
    throw InvalidArgument("config: adadelta_rho must be in [0, 1)");
}

Optimizer::Optimizer(const OptimizerConfig& cfg) : cfg_(cfg) { cfg_.validate(); }

void Optimizer::set_learning_rate(double alpha) {
  if (!(alpha >= 0.0)) throw InvalidArgument("set_learning_rate: alpha must be >= 0");
  cfg_.alpha = alpha;
}

nlohmann::json MomentState::to_json() const {
  return {{"m", m}, {"v", v}, {"t", t}, {"beta1_pow", beta1_pow}, {"beta2_pow", beta2_pow}};
}

MomentState MomentState::from_json(const nlohmann::json& j) {
  MomentState s(j.at("m").size());
  s.m = j.at("m").get<Vec>();
  s.v = j.at("v").get<Vec>();
  s.t = j.at("t").get<long long>();
  s.beta1_pow = j.at("beta1_pow").get<double>();
  s.beta2_pow = j.at("beta2_pow").get<double>();
  if (s.m.size() != s.v.size()) throw LengthMismatch("moment state: m/v length mismatch");
  return s;
}

OptimizerConfig default_config_for(std::string_view name) {
  OptimizerConfig cfg;
  if (name == "exadam" || name == "adam") {
    cfg.alpha = 1e-4;
  } else if (name == "adamw") {
    cfg.alpha = 1e-4;
    cfg.weight_decay = 0.01;
  } else if (name == "rmsprop") {
    cfg.alpha = 0.01;
    cfg.rms_decay = 0.99;
  } else if (name == "sgd_momentum") {
    cfg.alpha = 0.01;
    cfg.momentum = 0.9;
  } else if (name == "adadelta") {
    cfg.alpha = 1.0;
    cfg.epsilon = 1e-6;
    cfg.adadelta_rho = 0.9;
  } else {
    throw InvalidArgument("unknown optimizer: " + std::string(name));
  }
  return cfg;
}

bool is_known_optimizer(std::string_view name) {
  return name == "exadam" || name == "adam" || name == "adamw" || name == "rmsprop" ||
         name == "sgd_momentum" || name == "adadelta";
}

std::unique_ptr<Optimizer> make_optimizer(std::string_view name, const OptimizerConfig& cfg,
                                          std::size_t dim) {
  if (name == "exadam") return std::make_unique<ExAdam>(cfg, dim);
  if (name == "adam") return std::make_unique<Adam>(cfg, dim);
  if (name == "adamw") return std::make_unique<AdamW>(cfg, dim);
  if (name == "rmsprop") return std::make_unique<RmsProp>(cfg, dim);
  if (name == "sgd_momentum") return std::make_unique<SgdMomentum>(cfg, dim);
  if (name == "adadelta") return std::make_unique<AdaDelta>(cfg, dim);
  throw InvalidArgument("unknown optimizer: " + std::string(name));
}

}  // namespace exadam
