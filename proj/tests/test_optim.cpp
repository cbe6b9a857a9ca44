#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <fstream>

#include "exadam/baselines.hpp"
#include "exadam/errors.hpp"
#include "exadam/exadam.hpp"
#include "exadam/problems.hpp"
#include "exadam/reference_values.hpp"
#include "exadam/rng.hpp"
#include "exadam/selfcheck.hpp"

using namespace exadam;

namespace {

bool rel_close(double a, double b, double tol) {
  return std::fabs(a - b) <= tol * std::max(1.0, std::fabs(b));
}

}  // namespace

TEST_CASE("corrected first moment") {
  OptimizerConfig cfg;

  SUBCASE("zero numerator stays zero") {
    CHECK(corrected_first_moment({0.0}, {123.0}, 17, cfg)[0] == 0.0);
  }
  SUBCASE("v = 0 gives plain bias correction exactly") {
    const double expected = 0.25 / (1.0 - pow_seq(cfg.beta1, 3));
    CHECK(corrected_first_moment({0.25}, {0.0}, 3, cfg)[0] == expected);
  }
  SUBCASE("high-precision spot value") {
    const double got = corrected_first_moment({0.1}, {0.001}, 1, cfg)[0];
    CHECK(rel_close(got, reference::kMCorrectedSpot, 1e-12));
  }
  SUBCASE("cross-moment toggle off forces the factor to one") {
    cfg.enable_cross_moment = false;
    const double expected = 0.1 / (1.0 - pow_seq(cfg.beta1, 5));
    CHECK(corrected_first_moment({0.1}, {42.0}, 5, cfg)[0] == expected);
  }
  SUBCASE("rejects bad inputs") {
    CHECK_THROWS_AS(corrected_first_moment({1.0}, {1.0}, 0, cfg), InvalidArgument);
    CHECK_THROWS_AS(corrected_first_moment({1.0}, {-1.0}, 1, cfg), InvalidArgument);
    CHECK_THROWS_AS(corrected_first_moment({1.0, 2.0}, {1.0}, 1, cfg), LengthMismatch);
  }
}

TEST_CASE("corrected second moment") {
  OptimizerConfig cfg;

  SUBCASE("m = 0 gives plain bias correction exactly") {
    const double expected = 0.5 / (1.0 - pow_seq(cfg.beta2, 2));
    CHECK(corrected_second_moment({0.0}, {0.5}, 2, cfg)[0] == expected);
  }
  SUBCASE("zero numerator stays zero") {
    CHECK(corrected_second_moment({3.0}, {0.0}, 9, cfg)[0] == 0.0);
  }
  SUBCASE("high-precision spot value") {
    const double got = corrected_second_moment({0.1}, {0.001}, 1, cfg)[0];
    CHECK(rel_close(got, reference::kVCorrectedSpot, 1e-12));
  }
  SUBCASE("result is nonnegative under fuzz") {
    Rng rng(3);
    for (int k = 0; k < 2000; ++k) {
      const double m = (rng.next_double() * 2 - 1) * 100;
      const double v = rng.next_double() * 1000;
      const long long t = 1 + static_cast<long long>(rng.next_bounded(500));
      CHECK(corrected_second_moment({m}, {v}, t, cfg)[0] >= 0.0);
    }
  }
}

TEST_CASE("accelerated gradient") {
  OptimizerConfig cfg;

  SUBCASE("steep-region conformance value") {
    const double got = accelerated_gradient({1.0}, {0.1}, 100, cfg)[0];
    CHECK(rel_close(got, reference::kGAccelSteep, 1e-12));
    CHECK(std::fabs(got - 2.0) < 0.2);  // within 10% of the nominal 2x
  }
  SUBCASE("flat-region value evaluates near 1.9, not 1.1") {
    const double got = accelerated_gradient({1.0}, {0.001}, 100, cfg)[0];
    CHECK(rel_close(got, reference::kGAccelFlat, 1e-12));
    CHECK(got > 1.8);
  }
  SUBCASE("v = 0 leaves only the bias correction") {
    const double expected = 1.0 / (1.0 - pow_seq(cfg.beta1, 7));
    CHECK(accelerated_gradient({1.0}, {0.0}, 7, cfg)[0] == expected);
  }
  SUBCASE("beta powers underflow for huge t") {
    const double got = accelerated_gradient({1.0}, {0.1}, 1000000, cfg)[0];
    CHECK(std::fabs(got - 1.0) <= 1e-12);
  }
  SUBCASE("accelerator toggle off returns zeros") {
    cfg.enable_accelerator = false;
    const Vec out = accelerated_gradient({1.0, -2.0}, {0.1, 0.2}, 4, cfg);
    CHECK(out == Vec{0.0, 0.0});
  }
}

TEST_CASE("stepping: zero gradient is a fixed point") {
  OptimizerConfig cfg;
  ExAdam opt(cfg, 3);
  Vec theta{1.0, -2.0, 0.5};
  const Vec orig = theta;
  for (int s = 0; s < 50; ++s) opt.step(theta, {0.0, 0.0, 0.0});
  CHECK(theta == orig);
  CHECK(opt.state().t == 50);
}

TEST_CASE("stepping: first-step reference values") {
  OptimizerConfig cfg;
  cfg.alpha = 0.001;
  ExAdam opt(cfg, 1);
  Vec theta{0.0};
  const StepDiagnostics diag = opt.step_with_diagnostics(theta, {1.0});
  CHECK(rel_close(diag.m_corrected[0], reference::kFirstStepMCorrected, 1e-12));
  CHECK(rel_close(diag.v_corrected[0], reference::kFirstStepVCorrected, 1e-12));
  CHECK(rel_close(diag.g_accel[0], reference::kFirstStepGAccel, 1e-12));
  CHECK(rel_close(diag.update[0], reference::kFirstStepUpdate, 1e-12));
  CHECK(theta[0] == diag.update[0]);
  // The combined numerator makes the first unit-gradient step ~16x alpha.
  CHECK(std::fabs(diag.update[0]) / cfg.alpha > 15.0);
  CHECK(std::fabs(diag.update[0]) / cfg.alpha < 17.0);
}

TEST_CASE("diagnostics are self-consistent") {
  OptimizerConfig cfg;
  cfg.alpha = 0.01;
  ExAdam opt(cfg, 3);
  Vec theta{0.2, -0.4, 1.0};
  Rng rng(11);
  for (int s = 0; s < 100; ++s) {
    const Vec g = gaussian(rng, 3, 0.0, 2.0);
    const StepDiagnostics d = opt.step_with_diagnostics(theta, g);
    for (int i = 0; i < 3; ++i) {
      CHECK(d.v_corrected[i] >= 0.0);
      const double expected =
          -cfg.alpha * (d.m_corrected[i] + d.g_accel[i]) / (std::sqrt(d.v_corrected[i]) +
                                                            cfg.epsilon);
      CHECK(d.update[i] == expected);
    }
  }
}

TEST_CASE("config defaults") {
  const OptimizerConfig cfg;
  CHECK(cfg.alpha == 1e-4);
  CHECK(cfg.beta1 == 0.9);
  CHECK(cfg.beta2 == 0.999);
  CHECK(cfg.epsilon == 1e-8);
  CHECK(cfg.enable_cross_moment);
  CHECK(cfg.enable_accelerator);
}

TEST_CASE("stepping: moment recurrences and state invariants") {
  OptimizerConfig cfg;
  ExAdam opt(cfg, 2);
  CHECK(opt.state().t == 0);
  CHECK(opt.state().m == Vec{0.0, 0.0});
  CHECK(opt.state().v == Vec{0.0, 0.0});

  Vec theta{0.0, 0.0};
  Rng rng(17);
  long long expected_t = 0;
  for (int s = 0; s < 200; ++s) {
    const Vec g = gaussian(rng, 2, 0.0, 3.0);
    opt.step(theta, g);
    ++expected_t;
    CHECK(opt.state().t == expected_t);
    for (double v : opt.state().v) CHECK(v >= 0.0);
    CHECK(all_finite(theta));
  }
}

TEST_CASE("stepping: error paths") {
  OptimizerConfig cfg;
  ExAdam opt(cfg, 2);
  Vec theta{0.0, 0.0};
  CHECK_THROWS_AS(opt.step(theta, {1.0}), LengthMismatch);
  const double inf = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(opt.step(theta, {1.0, inf}), NonFinite);
  CHECK_THROWS_AS(opt.step(theta, {std::nan(""), 0.0}), NonFinite);
  CHECK(opt.state().t == 0);  // failed steps must not advance the counter

  OptimizerConfig bad;
  bad.alpha = -1.0;
  CHECK_THROWS_AS(ExAdam(bad, 2), InvalidArgument);
  bad = OptimizerConfig{};
  bad.beta1 = 1.0;
  CHECK_THROWS_AS(ExAdam(bad, 2), InvalidArgument);
}

TEST_CASE("adam reference behaviour") {
  OptimizerConfig cfg;
  cfg.alpha = 0.001;

  SUBCASE("zero gradient fixed point") {
    Adam opt(cfg, 2);
    Vec theta{3.0, -1.0};
    for (int s = 0; s < 20; ++s) opt.step(theta, {0.0, 0.0});
    CHECK(theta == Vec{3.0, -1.0});
  }
  SUBCASE("first step has magnitude ~alpha") {
    Adam opt(cfg, 1);
    Vec theta{0.0};
    opt.step(theta, {1.0});
    // m_hat = 1, v_hat = 1 on the first step, so the update is
    // -alpha / (1 + eps).
    const double expected = -cfg.alpha / (1.0 + cfg.epsilon);
    CHECK(theta[0] == doctest::Approx(expected).epsilon(1e-12));
  }
  SUBCASE("steady state under constant gradient") {
    Adam opt(cfg, 1);
    Vec theta{0.0};
    double last = 0.0;
    for (int s = 0; s < 20000; ++s) {
      const double before = theta[0];
      opt.step(theta, {2.0});
      last = theta[0] - before;
    }
    // m -> g and v -> g^2, so the update settles at -alpha*g/(|g|+eps).
    const double expected = -cfg.alpha * 2.0 / (2.0 + cfg.epsilon);
    CHECK(std::fabs(last - expected) < 1e-12);
  }
}

TEST_CASE("ablated stepping matches adam over a long trajectory") {
  const auto problem = quadratic_problem(20, 100.0, 7);
  OptimizerConfig cfg;
  cfg.alpha = 1e-4;
  OptimizerConfig ablated = cfg;
  ablated.enable_cross_moment = false;
  ablated.enable_accelerator = false;

  ExAdam ex(ablated, problem->dim());
  Adam ad(cfg, problem->dim());
  Vec theta_ex = problem->initial_point();
  Vec theta_ad = problem->initial_point();
  for (int s = 0; s < 1000; ++s) {
    ex.step(theta_ex, problem->grad(theta_ex, BatchRef{}));
    ad.step(theta_ad, problem->grad(theta_ad, BatchRef{}));
    CHECK(max_abs_diff(theta_ex, theta_ad) <= 1e-12);
  }
}

TEST_CASE("adamw with zero decay equals adam") {
  OptimizerConfig cfg;
  cfg.alpha = 0.01;
  cfg.weight_decay = 0.0;
  Adam adam(cfg, 3);
  AdamW adamw(cfg, 3);
  Vec ta{0.5, -0.5, 1.0}, tw = ta;
  Rng rng(5);
  for (int s = 0; s < 500; ++s) {
    const Vec g = gaussian(rng, 3, 0.0, 1.0);
    adam.step(ta, g);
    adamw.step(tw, g);
    CHECK(max_abs_diff(ta, tw) <= 1e-15);
  }
}

TEST_CASE("adamw decay shrinks parameters") {
  OptimizerConfig cfg;
  cfg.alpha = 0.1;
  cfg.weight_decay = 0.5;
  AdamW opt(cfg, 1);
  Vec theta{10.0};
  opt.step(theta, {0.0});
  // Zero gradient leaves only the decay term: theta * (1 - alpha*lambda).
  CHECK(theta[0] == doctest::Approx(10.0 * (1.0 - 0.05)).epsilon(1e-15));
}

TEST_CASE("sgd with zero momentum is plain gradient descent") {
  OptimizerConfig cfg;
  cfg.alpha = 0.25;
  cfg.momentum = 0.0;
  SgdMomentum opt(cfg, 2);
  Vec theta{1.0, 2.0};
  opt.step(theta, {4.0, -8.0});
  CHECK(theta == Vec{1.0 - 0.25 * 4.0, 2.0 + 0.25 * 8.0});
}

TEST_CASE("rmsprop step magnitude approaches alpha on constant gradient") {
  OptimizerConfig cfg;
  cfg.alpha = 0.01;
  cfg.rms_decay = 0.99;
  RmsProp opt(cfg, 1);
  Vec theta{0.0};
  double last = 0.0;
  for (int s = 0; s < 3000; ++s) {
    const double before = theta[0];
    opt.step(theta, {1.0});
    last = std::fabs(theta[0] - before);
  }
  // The running average fixed point is v = 1, giving |step| -> alpha.
  CHECK(last == doctest::Approx(cfg.alpha).epsilon(1e-6));
}

TEST_CASE("adadelta makes progress on a quadratic") {
  const auto problem = quadratic_problem(5, 10.0, 2);
  OptimizerConfig cfg = default_config_for("adadelta");
  AdaDelta opt(cfg, problem->dim());
  Vec theta = problem->initial_point();
  const double f0 = problem->eval(theta, BatchRef{});
  for (int s = 0; s < 2000; ++s) opt.step(theta, problem->grad(theta, BatchRef{}));
  CHECK(problem->eval(theta, BatchRef{}) < 0.5 * f0);
}

TEST_CASE("factor bounds hold under fuzz") {
  const CheckResult res = check_factor_bounds(20000, 94);
  INFO(res.detail);
  CHECK(res.passed);
}

TEST_CASE("no step produces NaN/Inf for finite inputs") {
  Rng rng(271828);
  for (const char* name : {"exadam", "adam", "adamw", "rmsprop", "sgd_momentum", "adadelta"}) {
    OptimizerConfig cfg = default_config_for(name);
    cfg.alpha = 0.01;
    const auto opt = make_optimizer(name, cfg, 4);
    Vec theta{1.0, -1.0, 0.0, 1e6};
    for (int s = 0; s < 300; ++s) {
      Vec g(4);
      // magnitudes spanning 1e-12 .. 1e6, random signs
      for (double& x : g) {
        const double mag = std::exp((rng.next_double() * 2.0 - 1.0) * 27.6);
        x = (rng.next_double() < 0.5 ? -1.0 : 1.0) * mag;
      }
      opt->step(theta, g);
      REQUIRE(all_finite(theta));
    }
  }
}

TEST_CASE("gradient-scale equivariance in the small-epsilon limit") {
  OptimizerConfig cfg;
  cfg.alpha = 0.001;
  cfg.epsilon = 1e-12;
  ExAdam a(cfg, 3), b(cfg, 3);
  Vec ta{0.0, 1.0, -1.0}, tb = ta;
  const Vec base{1.5, -2.0, 3.0};
  const double cycle[3] = {1.0, -1.0, 2.0};
  for (int s = 0; s < 40; ++s) {
    Vec g(3), g10(3);
    for (int i = 0; i < 3; ++i) {
      g[i] = base[i] * cycle[s % 3];
      g10[i] = 10.0 * g[i];
    }
    const StepDiagnostics da = a.step_with_diagnostics(ta, g);
    const StepDiagnostics db = b.step_with_diagnostics(tb, g10);
    for (int i = 0; i < 3; ++i) {
      const double rel = std::fabs(da.update[i] - db.update[i]) / std::fabs(da.update[i]);
      CHECK(rel < 1e-5);
    }
  }
}

TEST_CASE("state snapshot shape and round trip") {
  OptimizerConfig cfg;
  ExAdam opt(cfg, 2);
  Vec theta{1.0, 2.0};
  opt.step(theta, {0.5, -0.5});
  opt.step(theta, {1.5, 0.25});

  const nlohmann::json j = opt.state_json();
  for (const char* key : {"m", "v", "t", "beta1_pow", "beta2_pow"}) CHECK(j.contains(key));
  CHECK(j.at("t").get<long long>() == 2);
  CHECK(j.at("m").size() == 2);

  const MomentState restored = MomentState::from_json(j);
  CHECK(restored.m == opt.state().m);
  CHECK(restored.v == opt.state().v);
  CHECK(restored.t == opt.state().t);
  CHECK(restored.beta1_pow == opt.state().beta1_pow);
  CHECK(restored.beta2_pow == opt.state().beta2_pow);
}

TEST_CASE("golden-trace state regression") {
  // 25 full-batch steps on a fixed quadratic; the serialized state must
  // match the committed snapshot bit for bit (set EXADAM_WRITE_GOLDENS=1 to
  // regenerate after an intentional change).
  const auto problem = quadratic_problem(6, 10.0, 3);
  OptimizerConfig cfg;
  cfg.alpha = 0.01;
  ExAdam ex(cfg, problem->dim());
  Adam ad(cfg, problem->dim());
  Vec theta_ex = problem->initial_point();
  Vec theta_ad = problem->initial_point();
  for (int s = 0; s < 25; ++s) {
    ex.step(theta_ex, problem->grad(theta_ex, BatchRef{}));
    ad.step(theta_ad, problem->grad(theta_ad, BatchRef{}));
  }
  nlohmann::json snapshot{{"exadam", ex.state_json()},
                          {"adam", ad.state_json()},
                          {"theta_exadam", theta_ex},
                          {"theta_adam", theta_ad}};

  const std::string path = std::string(EXADAM_TEST_DATA_DIR) + "/state_snapshot.json";
  if (std::getenv("EXADAM_WRITE_GOLDENS")) {
    std::ofstream out(path);
    out << snapshot.dump(2) << "\n";
    return;
  }
  std::ifstream in(path);
  REQUIRE(in.good());
  nlohmann::json expected;
  in >> expected;
  CHECK(snapshot == expected);
}

TEST_CASE("step goldens against the high-precision reference") {
  const CheckResult res = check_step_goldens(1e-12);
  INFO(res.detail);
  CHECK(res.passed);
}

TEST_CASE("make_optimizer and defaults") {
  for (const char* name : {"exadam", "adam", "adamw", "rmsprop", "sgd_momentum", "adadelta"}) {
    CHECK(is_known_optimizer(name));
    const auto opt = make_optimizer(name, default_config_for(name), 4);
    CHECK(opt->name() == name);
  }
  CHECK(!is_known_optimizer("newton"));
  CHECK_THROWS_AS(make_optimizer("newton", OptimizerConfig{}, 4), InvalidArgument);
  CHECK(default_config_for("adadelta").epsilon == 1e-6);
  CHECK(default_config_for("rmsprop").alpha == 0.01);
}
