"""Acceptance gate: one test per criterion, each at its stated tolerance.

The terminal summary (see conftest.py) prints a PASS/FAIL line per criterion.
"""

import cmath
import math
import time

import numpy as np
import pytest

from subord_verify import nephroid, reproduce, specfun, subord
from subord_verify.specfun import HyperParams
from subord_verify.subord import SolutionCurve, SubordCase

SQRT, LINEAR, EXP = SubordCase.SQRT, SubordCase.LINEAR, SubordCase.EXP

pytestmark = pytest.mark.slow


def test_criterion_1_sharp_constant_recovery():
    start = time.perf_counter()
    roots = {case: subord.solve_sharp_beta(case) for case in (SQRT, LINEAR, EXP)}
    elapsed = time.perf_counter() - start
    failures = []
    if abs(roots[SQRT].beta_star - 0.158379) > 1e-5:
        failures.append(f"sqrt: {roots[SQRT].beta_star!r} vs 0.158379")
    if roots[LINEAR].beta_star != 0.5:
        failures.append(f"linear: {roots[LINEAR].beta_star!r} vs 0.5")
    if abs(roots[EXP].beta_star - 1.14016) > 1e-4:
        failures.append(f"exp: {roots[EXP].beta_star!r} vs 1.14016 (|diff| "
                        f"{abs(roots[EXP].beta_star - 1.14016):.3e} > 1e-4)")
    if elapsed >= 10.0:
        failures.append(f"runtime {elapsed:.2f} s >= 10 s")
    assert not failures, "; ".join(failures)


def test_criterion_2_table_reproduction():
    start = time.perf_counter()
    entries = reproduce.table_entries()
    elapsed = time.perf_counter() - start
    assert len(entries) == 18
    # sign flips in the second column
    second = {e.theta_label: e.computed for e in entries if e.beta == 0.1583737}
    assert second["3.14159"] < 0 and second["pi"] < 0
    bad = [f"theta={e.theta_label} beta={e.beta}: computed {e.computed:.6g} vs printed {e.reference}"
           for e in entries if not e.match]
    assert elapsed < 30.0, f"runtime {elapsed:.2f} s"
    assert not bad, "; ".join(bad)


def test_criterion_3_sharpness_touching(sharp):
    beta_l = sharp(SQRT).beta_star
    beta_e = sharp(EXP).beta_star
    assert abs(subord.d(SQRT, math.pi, beta_l)) <= 1e-7
    assert abs(subord.d(EXP, 0.0, beta_e)) <= 1e-6
    assert abs(nephroid.d1(0.0) - 4 / 9) <= 1e-12
    assert abs(subord.d2(LINEAR, 0.0, 0.5) - 4 / 9) <= 1e-12


def test_criterion_4_criterion_limits():
    assert abs(subord.tau(1e6) - 2 / 3) <= 1e-5
    assert abs(subord.delta(1e-4) - (5 / 3 - math.sqrt(2))) <= 1e-3
    assert abs(subord.mu(1e-6) - (1 / math.e - 1 / 3)) <= 1e-5
    assert abs(subord.rho(1e-6) - (5 / 3 - math.e)) <= 1e-5


def test_criterion_5_monotonicity():
    betas = np.round(np.arange(1, 101) * 0.05, 10)
    for f in (subord.tau, subord.mu, subord.rho):
        values = np.array([f(b) for b in betas])
        assert np.all(np.diff(values) > 0), f.__name__
    assert all(subord.delta(b) > 0 for b in betas)


def test_criterion_6_oracle_equivalence():
    rng = np.random.default_rng(20261015)
    h = 1e-6
    for i in range(100):
        z = cmath.rect(rng.uniform(0, 0.9), rng.uniform(0, 2 * math.pi))
        if i % 2 == 0:
            b = rng.uniform(0.2, 4.0)
            p = HyperParams(rng.uniform(-2.0, 2.0), b, b + rng.uniform(0.2, 4.0))
            series = specfun.gauss_2f1(p, z).value
            oracle = specfun.gauss_2f1_euler_integral(p, z)
            deriv = specfun.gauss_2f1_derivative(p, z).value
            fd = (specfun.gauss_2f1(p, z + h).value - specfun.gauss_2f1(p, z - h).value) / (2 * h)
        else:
            a = rng.uniform(0.2, 4.0)
            p = HyperParams(a, None, a + rng.uniform(0.2, 4.0))
            series = specfun.kummer_1f1(p, z).value
            oracle = specfun.kummer_1f1_integral(p, z)
            deriv = specfun.kummer_1f1_derivative(p, z).value
            fd = (specfun.kummer_1f1(p, z + h).value - specfun.kummer_1f1(p, z - h).value) / (2 * h)
        assert abs(series - oracle) <= 1e-8, (p, z)
        assert abs(deriv - fd) <= 1e-6, (p, z)
    grid = [complex(x, y) for x in np.linspace(-0.95, 0.95, 5) for y in np.linspace(-0.95, 0.95, 5)]
    grid = [z if abs(z) <= 0.95 else z * 0.95 / abs(z) for z in grid]
    for case in SubordCase:
        for beta in (0.2, 0.5, 1.14016):
            s = SolutionCurve(case, beta)
            assert max(subord.ode_residual(s, z) for z in grid) < 1e-9, (case, beta)


@pytest.mark.parametrize("case", [SQRT, LINEAR, EXP], ids=lambda c: c.value)
def test_criterion_7_verdict_flip(sharp, scan, case):
    beta_star = sharp(case).beta_star
    assert not scan(case, 0.999 * beta_star).verdict
    assert scan(case, 1.001 * beta_star).verdict


def test_criterion_8_starlikeness_premises(sharp):
    rng = np.random.default_rng(8)
    for beta in rng.uniform(0.01, 10.0, 20):
        lower, _ = subord.kustner_bounds(0.5, 1 / beta + 1, 1 / beta + 2)
        assert abs(lower - (3 + 5 * beta) / (2 * (2 + 3 * beta))) <= 1e-14
    for beta in (sharp(SQRT).beta_star, 1.0, 5.0):
        f, fp = subord.theta_function(SQRT, beta)
        lower, _ = subord.kustner_bounds(0.5, 1 / beta + 1, 1 / beta + 2)
        assert subord.numeric_starlikeness_scan(f, derivative=fp) >= lower - 1e-6, beta
    for beta in (0.1, 2.0):
        assert subord.mm_condition(1 / beta + 1, 1 / beta + 2), beta
