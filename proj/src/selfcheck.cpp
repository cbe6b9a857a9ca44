#include "exadam/selfcheck.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>
#include <sstream>

#include "exadam/baselines.hpp"
#include "exadam/errors.hpp"
#include "exadam/exadam.hpp"
#include "exadam/problems.hpp"
#include "exadam/reference_values.hpp"
#include "exadam/rng.hpp"
#include "exadam/scheduler.hpp"
#include "exadam/trace.hpp"

namespace exadam {

namespace {

std::string fail(const std::string& what) { return what; }

bool rel_close(double a, double b, double tol) {
  return std::fabs(a - b) <= tol * std::max(1.0, std::fabs(b));
}

}  // namespace

CheckResult check_factor_bounds(std::size_t tuples, std::uint64_t seed) {
  CheckResult res{"factor-bounds", true, ""};
  Rng rng(seed);
  OptimizerConfig cfg;  // defaults; epsilon = 1e-8

  // Walk t = 1..10^4 per (beta1, beta2) pair, carrying beta^t by the same
  // sequential product the optimizers (and pow_seq) use, and probe a fresh
  // (m, v) tuple at every t on a small stride. This covers every step count
  // for each sampled pair without re-deriving the power from scratch.
  constexpr long long kMaxT = 10000;
  constexpr long long kStride = 12;
  std::size_t probed = 0;
  for (std::size_t pair = 0; probed < tuples; ++pair) {
    cfg.beta1 = rng.next_double() * (pair % 13 == 0 ? 0.0 : 1.0);  // exercise beta = 0 too
    cfg.beta2 = rng.next_double() * (pair % 11 == 0 ? 0.0 : 1.0);
    const long long phase = 1 + static_cast<long long>(rng.next_bounded(kStride));
    double b1p = 1.0;
    double b2p = 1.0;
    for (long long t = 1; t <= kMaxT && probed < tuples; ++t) {
      b1p *= cfg.beta1;
      b2p *= cfg.beta2;
      if (t > 64 && (t - phase) % kStride != 0) continue;
      ++probed;
      double m = (rng.next_double() * 2.0 - 1.0) * 1e3;
      double v = rng.next_double() * 1e6;
      if (probed % 251 == 0) m = 0.0;  // hit the exact edges too
      if (probed % 241 == 0) v = 0.0;

      const double term_m = cross_term(v, cfg.epsilon, b2p);
      const double term_v = cross_term(m * m, cfg.epsilon, b1p);
      const double factor_m = 1.0 + term_m;
      const double factor_v = 1.0 + term_v;

      auto bad = [&](const std::string& what) {
        std::ostringstream os;
        os << what << " (m=" << m << " v=" << v << " t=" << t << " beta1=" << cfg.beta1
           << " beta2=" << cfg.beta2 << ")";
        res.passed = false;
        res.detail = fail(os.str());
      };

      // Open interval [0, beta^t) for normal powers. Once beta^t drops into
      // the subnormal range the product r/(r+eps)*beta^t can round back
      // onto beta^t itself (absolute grid spacing), so the bound closes; at
      // full underflow the term is exactly 0.
      auto term_in_range = [](double term, double bp) {
        if (!(term >= 0.0)) return false;
        if (bp == 0.0) return term == 0.0;
        if (bp >= std::numeric_limits<double>::min()) return term < bp;
        return term <= bp;
      };
      if (!term_in_range(term_m, b2p)) {
        bad("first-moment term out of [0, beta2^t)");
        return res;
      }
      if (!term_in_range(term_v, b1p)) {
        bad("second-moment term out of [0, beta1^t)");
        return res;
      }
      if (!(factor_m >= 1.0 && factor_m <= 1.0 + b2p)) {
        bad("first-moment factor out of [1, 1 + beta2^t]");
        return res;
      }
      if (!(factor_v >= 1.0 && factor_v <= 1.0 + b1p)) {
        bad("second-moment factor out of [1, 1 + beta1^t]");
        return res;
      }

      // The carried powers must agree with the from-scratch route, and the
      // public outputs must carry exactly bias-corrected moment * factor.
      if (probed % 997 == 0) {
        if (b1p != pow_seq(cfg.beta1, t) || b2p != pow_seq(cfg.beta2, t)) {
          bad("carried beta power diverged from pow_seq");
          return res;
        }
      }
      const Vec mc = corrected_first_moment({m}, {v}, BetaPowers{b1p, b2p}, cfg);
      const Vec vc = corrected_second_moment({m}, {v}, BetaPowers{b1p, b2p}, cfg);
      const double m_hat = m / (1.0 - b1p);
      const double v_hat = v / (1.0 - b2p);
      if (mc[0] != m_hat * factor_m) {
        bad("corrected first moment != m_hat * factor");
        return res;
      }
      if (vc[0] != v_hat * factor_v) {
        bad("corrected second moment != v_hat * factor");
        return res;
      }
      if (!(vc[0] >= 0.0) || std::isnan(mc[0])) {
        bad("non-finite or negative corrected moment");
        return res;
      }
    }
  }
  res.detail = std::to_string(probed) + " tuples";
  return res;
}

CheckResult check_adam_equivalence(std::size_t steps, double tolerance) {
  CheckResult res{"adam-equivalence", true, ""};
  const auto problem = quadratic_problem(20, 100.0, 7);
  OptimizerConfig cfg;
  cfg.alpha = 1e-4;
  OptimizerConfig ablated = cfg;
  ablated.enable_cross_moment = false;
  ablated.enable_accelerator = false;

  ExAdam exadam(ablated, problem->dim());
  Adam adam(cfg, problem->dim());
  Vec theta_ex = problem->initial_point();
  Vec theta_ad = problem->initial_point();
  double worst = 0.0;
  for (std::size_t s = 0; s < steps; ++s) {
    exadam.step(theta_ex, problem->grad(theta_ex, BatchRef{}));
    adam.step(theta_ad, problem->grad(theta_ad, BatchRef{}));
    worst = std::max(worst, max_abs_diff(theta_ex, theta_ad));
  }
  if (worst > tolerance) {
    res.passed = false;
    res.detail = "max deviation " + format_double(worst) + " over " + std::to_string(steps) +
                 " steps (tolerance " + format_double(tolerance) + ")";
  } else {
    res.detail = "max deviation " + format_double(worst) + " over " + std::to_string(steps) +
                 " steps";
  }
  return res;
}

CheckResult check_gradient_checks(std::size_t points_per_problem, std::uint64_t seed) {
  CheckResult res{"gradient-checks", true, ""};
  struct Case {
    std::unique_ptr<Problem> problem;
    double scale;
    double threshold;
  };
  std::vector<Case> cases;
  cases.push_back({quadratic_problem(20, 100.0, 11), 1.0, 1e-7});
  cases.push_back({rosenbrock_problem(), 1.0, 1e-6});
  cases.push_back({logistic_regression_problem(400, 8, 2.0, 11), 1.0, 1e-5});
  cases.push_back({mlp_spiral_problem({2, 16, 16, 2}, 200, 11), 0.1, 1e-5});

  Rng rng(seed);
  std::ostringstream detail;
  for (const Case& c : cases) {
    double worst = 0.0;
    for (std::size_t p = 0; p < points_per_problem; ++p) {
      const Vec theta = gaussian(rng, c.problem->dim(), 0.0, c.scale);
      worst = std::max(worst, fd_gradient_check(*c.problem, theta, BatchRef{}));
    }
    detail << c.problem->name() << "=" << format_double(worst) << " ";
    if (!(worst < c.threshold)) {
      res.passed = false;
      res.detail = c.problem->name() + ": max relative error " + format_double(worst) +
                   " >= " + format_double(c.threshold);
      return res;
    }
  }
  res.detail = detail.str();
  return res;
}

CheckResult check_acceleration_conformance() {
  CheckResult res{"acceleration-conformance", true, ""};
  OptimizerConfig cfg;  // beta1=0.9, beta2=0.999, eps=1e-8
  const double steep = accelerated_gradient(Vec{1.0}, Vec{0.1}, 100, cfg)[0];
  const double flat = accelerated_gradient(Vec{1.0}, Vec{0.001}, 100, cfg)[0];

  if (!rel_close(steep, reference::kGAccelSteep, 1e-12)) {
    res.passed = false;
    res.detail = "steep-region factor " + format_double(steep) + " != reference " +
                 format_double(reference::kGAccelSteep);
    return res;
  }
  if (std::fabs(steep - 2.0) > 0.1 * 2.0) {
    res.passed = false;
    res.detail = "steep-region factor " + format_double(steep) + " not within 10% of nominal 2";
    return res;
  }
  if (!rel_close(flat, reference::kGAccelFlat, 1e-12)) {
    res.passed = false;
    res.detail = "flat-region factor " + format_double(flat) + " != reference " +
                 format_double(reference::kGAccelFlat);
    return res;
  }
  res.detail = "steep(v=0.1)=" + format_double(steep) + " ~= 2g; flat(v=0.001)=" +
               format_double(flat) +
               " (evaluates near 1.9g, not the sometimes-quoted 1.1g; informational)";
  return res;
}

CheckResult check_step_goldens(double tolerance) {
  CheckResult res{"step-goldens", true, ""};
  OptimizerConfig cfg;
  cfg.alpha = reference::kScenarioAlpha;
  ExAdam opt(cfg, reference::kScenarioDim);
  Vec theta(reference::kScenarioTheta0,
            reference::kScenarioTheta0 + reference::kScenarioDim);

  std::size_t next_record = 0;
  for (long long t = 1; t <= 100; ++t) {
    Vec g(reference::kScenarioDim);
    const double scale = reference::kScenarioGradCycle[(t - 1) % 3];
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = reference::kScenarioGradBase[i] * scale;
    const StepDiagnostics diag = opt.step_with_diagnostics(theta, g);

    if (next_record < std::size(reference::kScenarioRecords) &&
        reference::kScenarioRecords[next_record].t == t) {
      const auto& rec = reference::kScenarioRecords[next_record];
      for (std::size_t i = 0; i < reference::kScenarioDim; ++i) {
        const bool ok = rel_close(diag.m_corrected[i], rec.m_corrected[i], tolerance) &&
                        rel_close(diag.v_corrected[i], rec.v_corrected[i], tolerance) &&
                        rel_close(diag.g_accel[i], rec.g_accel[i], tolerance) &&
                        rel_close(diag.update[i], rec.update[i], tolerance) &&
                        rel_close(theta[i], rec.theta_after[i], tolerance);
        if (!ok) {
          res.passed = false;
          res.detail = "mismatch vs reference at t=" + std::to_string(t) + " component " +
                       std::to_string(i);
          return res;
        }
      }
      ++next_record;
    }
  }
  if (next_record != std::size(reference::kScenarioRecords)) {
    res.passed = false;
    res.detail = "not all reference records visited";
    return res;
  }
  res.detail = "t in {1, 2, 10, 100} within " + format_double(tolerance);
  return res;
}

CheckResult check_scheduler_golden() {
  CheckResult res{"scheduler-golden", true, ""};
  SchedulerConfig cfg;  // factor 0.1, patience 5, rel_threshold 1e-4
  {
    PlateauScheduler sched(cfg);
    double lr = 1e-4;
    // Hand-simulated: epoch 1 sets the baseline; reductions then fire on
    // the 6th consecutive non-improving epoch, i.e. at calls 7, 13, 19.
    const double expected[20] = {1e-4, 1e-4, 1e-4, 1e-4, 1e-4, 1e-4, 1e-5, 1e-5, 1e-5, 1e-5,
                                 1e-5, 1e-5, 1e-6, 1e-6, 1e-6, 1e-6, 1e-6, 1e-6, 1e-7, 1e-7};
    for (int call = 0; call < 20; ++call) {
      lr = sched.step(1.0, lr);
      if (std::fabs(lr - expected[call]) > 1e-20) {
        res.passed = false;
        res.detail = "constant loss: lr after call " + std::to_string(call + 1) + " is " +
                     format_double(lr) + ", expected " + format_double(expected[call]);
        return res;
      }
    }
  }
  {
    PlateauScheduler sched(cfg);
    double lr = 1e-4;
    double loss = 1.0;
    for (int call = 0; call < 30; ++call) {
      lr = sched.step(loss, lr);
      loss *= 0.9;
      if (lr != 1e-4) {
        res.passed = false;
        res.detail = "improving loss: unexpected reduction at call " + std::to_string(call + 1);
        return res;
      }
    }
  }
  res.detail = "reductions at calls 7, 13, 19; none under improvement";
  return res;
}

std::vector<CheckResult> run_self_checks() {
  std::vector<CheckResult> out;
  out.push_back(check_factor_bounds(20000, 20240917));
  out.push_back(check_adam_equivalence(300, 1e-12));
  out.push_back(check_gradient_checks(5, 31));
  out.push_back(check_acceleration_conformance());
  out.push_back(check_step_goldens(1e-12));
  out.push_back(check_scheduler_golden());
  return out;
}

nlohmann::json export_step_goldens() {
  OptimizerConfig cfg;
  cfg.alpha = reference::kScenarioAlpha;
  ExAdam opt(cfg, reference::kScenarioDim);
  Vec theta(reference::kScenarioTheta0, reference::kScenarioTheta0 + reference::kScenarioDim);

  nlohmann::json records = nlohmann::json::array();
  std::size_t next_record = 0;
  for (long long t = 1; t <= 100; ++t) {
    Vec g(reference::kScenarioDim);
    const double scale = reference::kScenarioGradCycle[(t - 1) % 3];
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = reference::kScenarioGradBase[i] * scale;
    const StepDiagnostics diag = opt.step_with_diagnostics(theta, g);
    if (next_record < std::size(reference::kScenarioRecords) &&
        reference::kScenarioRecords[next_record].t == t) {
      const auto& rec = reference::kScenarioRecords[next_record];
      auto vec_of = [](const double* p, std::size_t n) { return Vec(p, p + n); };
      records.push_back(
          {{"t", t},
           {"actual",
            {{"m_corrected", diag.m_corrected},
             {"v_corrected", diag.v_corrected},
             {"g_accel", diag.g_accel},
             {"update", diag.update},
             {"theta_after", theta}}},
           {"reference",
            {{"m_corrected", vec_of(rec.m_corrected, reference::kScenarioDim)},
             {"v_corrected", vec_of(rec.v_corrected, reference::kScenarioDim)},
             {"g_accel", vec_of(rec.g_accel, reference::kScenarioDim)},
             {"update", vec_of(rec.update, reference::kScenarioDim)},
             {"theta_after", vec_of(rec.theta_after, reference::kScenarioDim)}}}});
      ++next_record;
    }
  }
  return {{"scenario",
           {{"theta0", Vec(reference::kScenarioTheta0,
                           reference::kScenarioTheta0 + reference::kScenarioDim)},
            {"grad_base", Vec(reference::kScenarioGradBase,
                              reference::kScenarioGradBase + reference::kScenarioDim)},
            {"grad_cycle", Vec(reference::kScenarioGradCycle, reference::kScenarioGradCycle + 3)},
            {"alpha", reference::kScenarioAlpha}}},
          {"records", records},
          {"tolerance", 1e-12}};
}

}  // namespace exadam
