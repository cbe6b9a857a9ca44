#!/usr/bin/env python3
"""High-precision reference values for the optimizer conformance tests.

Evaluates the corrected-moment / accelerated-gradient formulas and a short
fixed stepping scenario with 60-digit arithmetic (mpmath), independently of
the C++ implementation, and emits:

    tests/goldens/reference_values.json
    include/exadam/reference_values.hpp   (constexpr doubles, frozen)

All scalar inputs are first rounded to binary64 (they enter the C++ code as
doubles); the arithmetic on top of them is exact, so the emitted values are
the correctly rounded true results for those inputs.

Run from the repository root:

    python3 tests/oracle/make_goldens.py
"""

import json
import os
from mpmath import mp, mpf, sqrt

mp.dps = 60

# Exact binary64 values of the default hyperparameters.
BETA1 = mpf(0.9)
BETA2 = mpf(0.999)
EPS = mpf(1e-8)


def corrected_first_moment(m, v, t, beta1=BETA1, beta2=BETA2, eps=EPS):
    return m / (1 - beta1**t) * (1 + v / (v + eps) * beta2**t)


def corrected_second_moment(m, v, t, beta1=BETA1, beta2=BETA2, eps=EPS):
    return v / (1 - beta2**t) * (1 + m * m / (m * m + eps) * beta1**t)


def accelerated_gradient(g, v, t, beta1=BETA1, beta2=BETA2, eps=EPS):
    return g / (1 - beta1**t) * (1 + v / (v + eps) * beta2**t)


def step(theta, m, v, t, g, alpha, beta1=BETA1, beta2=BETA2, eps=EPS):
    """One full stepping iteration; t is the incremented step index."""
    m = [beta1 * mi + (1 - beta1) * gi for mi, gi in zip(m, g)]
    v = [beta2 * vi + (1 - beta2) * gi * gi for vi, gi in zip(v, g)]
    mc = [corrected_first_moment(mi, vi, t, beta1, beta2, eps) for mi, vi in zip(m, v)]
    vc = [corrected_second_moment(mi, vi, t, beta1, beta2, eps) for mi, vi in zip(m, v)]
    ga = [accelerated_gradient(gi, vi, t, beta1, beta2, eps) for gi, vi in zip(g, v)]
    upd = [-alpha * (mci + gai) / (sqrt(vci) + eps) for mci, vci, gai in zip(mc, vc, ga)]
    theta = [ti + ui for ti, ui in zip(theta, upd)]
    return theta, m, v, mc, vc, ga, upd


def d(x):
    """Round an mpf to the nearest binary64 and return it as a Python float."""
    return float(x)


values = {}

# Spot values for the corrected moments at t=1 (m=0.1, v=0.001, defaults).
values["m_corrected_spot"] = d(corrected_first_moment(mpf(0.1), mpf(0.001), 1))
values["v_corrected_spot"] = d(corrected_second_moment(mpf(0.1), mpf(0.001), 1))

# Acceleration factor at t=100 for a steep (v=0.1) and a flat (v=0.001) region.
values["g_accel_steep_v01_t100"] = d(accelerated_gradient(mpf(1), mpf(0.1), 100))
values["g_accel_flat_v001_t100"] = d(accelerated_gradient(mpf(1), mpf(0.001), 100))

# First step from a fresh state: theta=0, g=1, alpha=0.001, defaults.
theta, m, v, mc, vc, ga, upd = step([mpf(0)], [mpf(0)], [mpf(0)], 1, [mpf(1)], mpf(0.001))
values["first_step"] = {
    "m_corrected": d(mc[0]),
    "v_corrected": d(vc[0]),
    "g_accel": d(ga[0]),
    "update": d(upd[0]),
}

# Fixed stepping scenario used by `check`/`export-goldens`: dim 4, cycling
# gradients, diagnostics recorded at steps 1, 2, 10, 100.  All inputs are
# exactly representable in binary64.
SCENARIO = {
    "theta0": [0.5, -1.0, 2.0, -0.25],
    "grad_base": [1.0, -0.5, 0.25, 2.0],
    "grad_cycle": [1.0, -0.5, 2.0],
    "alpha": 0.001,
    "record_at": [1, 2, 10, 100],
}

theta = [mpf(x) for x in SCENARIO["theta0"]]
m = [mpf(0)] * 4
v = [mpf(0)] * 4
alpha = mpf(SCENARIO["alpha"])
records = []
for t in range(1, 101):
    scale = mpf(SCENARIO["grad_cycle"][(t - 1) % 3])
    g = [mpf(b) * scale for b in SCENARIO["grad_base"]]
    theta, m, v, mc, vc, ga, upd = step(theta, m, v, t, g, alpha)
    if t in SCENARIO["record_at"]:
        records.append(
            {
                "t": t,
                "m_corrected": [d(x) for x in mc],
                "v_corrected": [d(x) for x in vc],
                "g_accel": [d(x) for x in ga],
                "update": [d(x) for x in upd],
                "theta_after": [d(x) for x in theta],
            }
        )
values["scenario"] = SCENARIO
values["scenario_records"] = records


def fmt(x):
    return repr(float(x))


def emit_header(path):
    lines = []
    lines.append("// Generated by tests/oracle/make_goldens.py -- do not edit by hand.")
    lines.append("// Reference values computed with 60-digit arithmetic and rounded to")
    lines.append("// binary64; implementations are compared against them at 1e-12.")
    lines.append("#pragma once")
    lines.append("")
    lines.append("#include <cstddef>")
    lines.append("")
    lines.append("namespace exadam::reference {")
    lines.append("")
    lines.append(f"inline constexpr double kMCorrectedSpot = {fmt(values['m_corrected_spot'])};")
    lines.append(f"inline constexpr double kVCorrectedSpot = {fmt(values['v_corrected_spot'])};")
    lines.append(f"inline constexpr double kGAccelSteep = {fmt(values['g_accel_steep_v01_t100'])};")
    lines.append(f"inline constexpr double kGAccelFlat = {fmt(values['g_accel_flat_v001_t100'])};")
    lines.append("")
    fs = values["first_step"]
    lines.append("// theta=0, g=1, alpha=0.001, default hyperparameters, step 1")
    lines.append(f"inline constexpr double kFirstStepMCorrected = {fmt(fs['m_corrected'])};")
    lines.append(f"inline constexpr double kFirstStepVCorrected = {fmt(fs['v_corrected'])};")
    lines.append(f"inline constexpr double kFirstStepGAccel = {fmt(fs['g_accel'])};")
    lines.append(f"inline constexpr double kFirstStepUpdate = {fmt(fs['update'])};")
    lines.append("")
    lines.append("// Fixed stepping scenario: dim 4, cycling gradients, alpha=0.001.")
    lines.append("inline constexpr std::size_t kScenarioDim = 4;")
    lines.append("inline constexpr double kScenarioTheta0[] = {"
                 + ", ".join(fmt(x) for x in SCENARIO["theta0"]) + "};")
    lines.append("inline constexpr double kScenarioGradBase[] = {"
                 + ", ".join(fmt(x) for x in SCENARIO["grad_base"]) + "};")
    lines.append("inline constexpr double kScenarioGradCycle[] = {"
                 + ", ".join(fmt(x) for x in SCENARIO["grad_cycle"]) + "};")
    lines.append(f"inline constexpr double kScenarioAlpha = {fmt(SCENARIO['alpha'])};")
    lines.append("")
    lines.append("struct ScenarioRecord {")
    lines.append("  long long t;")
    lines.append("  double m_corrected[kScenarioDim];")
    lines.append("  double v_corrected[kScenarioDim];")
    lines.append("  double g_accel[kScenarioDim];")
    lines.append("  double update[kScenarioDim];")
    lines.append("  double theta_after[kScenarioDim];")
    lines.append("};")
    lines.append("")
    lines.append("inline constexpr ScenarioRecord kScenarioRecords[] = {")
    for r in records:
        lines.append("    {" + str(r["t"]) + ",")
        for key in ("m_corrected", "v_corrected", "g_accel", "update", "theta_after"):
            lines.append("     {" + ", ".join(fmt(x) for x in r[key]) + "},")
        lines[-1] = lines[-1][:-1] + "},"
    lines.append("};")
    lines.append("")
    lines.append("}  // namespace exadam::reference")
    lines.append("")
    with open(path, "w") as f:
        f.write("\n".join(lines))


root = os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
json_path = os.path.join(root, "tests", "goldens", "reference_values.json")
hpp_path = os.path.join(root, "include", "exadam", "reference_values.hpp")

with open(json_path, "w") as f:
    json.dump(values, f, indent=2)
    f.write("\n")
emit_header(hpp_path)

print("wrote", json_path)
print("wrote", hpp_path)
print()
print("m_corrected(m=0.1, v=0.001, t=1)  =", values["m_corrected_spot"])
print("v_corrected(m=0.1, v=0.001, t=1)  =", values["v_corrected_spot"])
print("g_accel(g=1, v=0.1,   t=100)      =", values["g_accel_steep_v01_t100"])
print("g_accel(g=1, v=0.001, t=100)      =", values["g_accel_flat_v001_t100"])
print("first step update (alpha=0.001)   =", values["first_step"]["update"])
