"""Invariant suites behind ``subord-verify selfcheck``.

Each group returns a :class:`GroupResult` listing its individual checks with
the measured error and the tolerance it was held to.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import nephroid, specfun, subord
from .errors import NumericError
from .specfun import HyperParams
from .subord import SolutionCurve, SubordCase

#: Accuracy demanded of closed-form series checks unless overridden.
SERIES_TOL = 1e-12


@dataclass
class Check:
    name: str
    passed: bool
    error: float | None = None
    tolerance: float | None = None
    detail: str | None = None

    @property
    def margin(self) -> float | None:
        if self.error is None or self.tolerance is None:
            return None
        return self.tolerance - self.error


@dataclass
class GroupResult:
    name: str
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def close(self, name: str, value, expected, tol: float, detail: str | None = None):
        err = abs(complex(value) - complex(expected))
        self.checks.append(Check(name, bool(err <= tol), float(err), tol, detail))

    def holds(self, name: str, ok: bool, detail: str | None = None):
        self.checks.append(Check(name, bool(ok), detail=detail))

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "checks": [
                {"name": c.name, "passed": c.passed, "error": c.error, "tolerance": c.tolerance,
                 "margin": c.margin, "detail": c.detail}
                for c in self.checks
            ],
        }


def _disk_grid(radius: float, k: int = 5) -> list[complex]:
    return [complex(x, y) for x in np.linspace(-radius, radius, k) for y in np.linspace(-radius, radius, k)
            if abs(complex(x, y)) <= radius + 1e-15]


def check_gamma(tol: float | None) -> GroupResult:
    g = GroupResult("gamma")
    tol = 1e-12 if tol is None else tol
    for x in (-0.5, 0.5, 1.5, 2.5, 3.7):
        lhs = specfun.gamma(x + 1)
        g.close(f"recurrence x={x}", specfun.gamma(x + 1) - x * specfun.gamma(x), 0.0, tol * abs(lhs))
    g.close("gamma(1/2) = sqrt(pi)", specfun.gamma(0.5), math.sqrt(math.pi), tol)
    g.close("gamma(-1/2) = -2 sqrt(pi)", specfun.gamma(-0.5), -2 * math.sqrt(math.pi), tol)
    return g


def check_series(tol: float | None) -> GroupResult:
    g = GroupResult("series")
    tol = SERIES_TOL if tol is None else tol
    cases = [
        ("2F1(1,1;2;1/2) = 2 ln 2", specfun.gauss_2f1(HyperParams(1, 1, 2), 0.5), 2 * math.log(2)),
        ("2F1(-1,2;3;1/2) = 2/3", specfun.gauss_2f1(HyperParams(-1, 2, 3), 0.5), 2 / 3),
        ("2F1(-1/2,1;2;1) = 2/3", specfun.gauss_2f1(HyperParams(-0.5, 1, 2), 1.0), 2 / 3),
        ("1F1(1;1;1) = e", specfun.kummer_1f1(HyperParams(1, None, 1), 1.0), math.e),
        ("1F1(1;2;1) = e - 1", specfun.kummer_1f1(HyperParams(1, None, 2), 1.0), math.e - 1),
        ("1F1(1;1;i) = e^i", specfun.kummer_1f1(HyperParams(1, None, 1), 1j), cmath.exp(1j)),
    ]
    for name, sv, exact in cases:
        g.close(name, sv.value, exact, tol,
                f"terms_used={sv.terms_used} tail_bound={sv.tail_bound:.3e}")
    return g


def check_derivative(tol: float | None) -> GroupResult:
    g = GroupResult("derivative")
    tol = 1e-6 if tol is None else tol
    h = 1e-5
    p2 = HyperParams(-0.5, 3.0, 4.0)
    p1 = HyperParams(2.0, None, 3.0)
    worst2 = worst1 = 0.0
    for z in _disk_grid(0.9):
        fd2 = (specfun.gauss_2f1(p2, z + h).value - specfun.gauss_2f1(p2, z - h).value) / (2 * h)
        fd1 = (specfun.kummer_1f1(p1, z + h).value - specfun.kummer_1f1(p1, z - h).value) / (2 * h)
        worst2 = max(worst2, abs(specfun.gauss_2f1_derivative(p2, z).value - fd2))
        worst1 = max(worst1, abs(specfun.kummer_1f1_derivative(p1, z).value - fd1))
    g.close("2F1 derivative vs central difference", worst2, 0.0, tol)
    g.close("1F1 derivative vs central difference", worst1, 0.0, tol)
    return g


def check_oracle(tol: float | None) -> GroupResult:
    g = GroupResult("oracle")
    tol = 1e-8 if tol is None else tol
    rng = np.random.default_rng(20240607)
    for _ in range(8):
        b = rng.uniform(0.2, 5.0)
        c = b + rng.uniform(0.2, 3.0)
        a = rng.uniform(-2.0, 2.0)
        z = 0.99 * math.sqrt(rng.uniform()) * cmath.exp(2j * math.pi * rng.uniform())
        p = HyperParams(a, b, c)
        g.close(f"2F1{(round(a, 3), round(b, 3), round(c, 3))} series vs integral",
                specfun.gauss_2f1(p, z).value, specfun.gauss_2f1_euler_integral(p, z), tol)
        q = HyperParams(b, None, c)
        g.close(f"1F1{(round(b, 3), round(c, 3))} series vs integral",
                specfun.kummer_1f1(q, z).value, specfun.kummer_1f1_integral(q, z), tol)
    return g


def check_nephroid(tol: float | None) -> GroupResult:
    g = GroupResult("nephroid")
    tol = 1e-12 if tol is None else tol
    curve = nephroid.sample_boundary(1024)
    worst = max(abs(nephroid.nephroid_implicit(p)) for p in curve.plane_points())
    g.close("implicit equation on the boundary", worst, 0.0, tol)
    thetas = np.linspace(0, 2 * np.pi, 101)
    g.close("d1 is the squared distance to (1,0)",
            float(np.max(np.abs(nephroid.d1(thetas) - np.abs(nephroid.phi_ne(np.exp(1j * thetas)) - 1) ** 2))),
            0.0, tol)
    g.holds("(1,0) inside, (2,0) outside, (0.4,0) inside",
            nephroid.contains(1.0) and not nephroid.contains(2.0) and nephroid.contains(0.4))
    inside = all(
        nephroid.contains(nephroid.phi_ne(r * cmath.exp(1j * t)))
        for r in np.linspace(0.03, 0.99, 32)
        for t in np.linspace(0, 2 * np.pi, 32, endpoint=False)
    )
    g.holds("images of |z| <= 0.99 lie inside", inside)
    return g


def check_ode(tol: float | None) -> GroupResult:
    g = GroupResult("ode")
    tol = 1e-9 if tol is None else tol
    for case in SubordCase:
        for beta in (0.2, 0.5, 1.14016):
            s = SolutionCurve(case, beta)
            worst = max(subord.ode_residual(s, z) for z in _disk_grid(0.95))
            g.close(f"{case.value} beta={beta}", worst, 0.0, tol)
    return g


def check_criteria(tol: float | None) -> GroupResult:
    g = GroupResult("criteria")
    g.close("tau(1e6) -> 2/3", subord.tau(1e6), 2 / 3, 1e-5)
    g.close("delta(1e-4) -> 5/3 - sqrt(2)", subord.delta(1e-4), 5 / 3 - math.sqrt(2), 1e-3)
    g.close("mu(1e-6) -> 1/e - 1/3", subord.mu(1e-6), 1 / math.e - 1 / 3, 1e-5)
    g.close("rho(1e-6) -> 5/3 - e", subord.rho(1e-6), 5 / 3 - math.e, 1e-5)
    betas = (0.05, 0.1, 0.2, 0.5, 1.0, 2.0, 5.0)
    for name in ("tau", "mu", "rho"):
        vals = [subord.CRITERIA[name](b) for b in betas]
        g.holds(f"{name} increasing on {betas}", all(x < y for x, y in zip(vals, vals[1:])))
    g.holds("delta positive", all(subord.delta(b) > 0 for b in betas))
    return g


def check_sharpness(tol: float | None) -> GroupResult:
    g = GroupResult("sharpness")
    root_l = subord.solve_sharp_beta(SubordCase.SQRT)
    root_e = subord.solve_sharp_beta(SubordCase.EXP)
    g.close("sqrt sharp constant", root_l.beta_star, 0.158379, 1e-5, f"solved {root_l.beta_star!r}")
    g.close("linear sharp constant", subord.solve_sharp_beta(SubordCase.LINEAR).beta_star, 0.5, 0.0)
    g.close("exp sharp constant", root_e.beta_star, 1.14016, 1e-4, f"solved {root_e.beta_star!r}")
    g.close("d(pi) = 0 at the sqrt constant", subord.d(SubordCase.SQRT, math.pi, root_l.beta_star), 0.0, 1e-7)
    g.close("d(0) = 0 at the exp constant", subord.d(SubordCase.EXP, 0.0, root_e.beta_star), 0.0, 1e-6)
    g.close("linear: d2(0, 1/2) = d1(0) = 4/9", subord.d2(SubordCase.LINEAR, 0.0, 0.5), 4 / 9, 1e-12)
    return g


def check_containment(tol: float | None) -> GroupResult:
    g = GroupResult("containment")
    tol = subord.VERDICT_TOL if tol is None else tol
    for case in SubordCase:
        star = subord.solve_sharp_beta(case).beta_star
        below = subord.containment_scan(case, star * (1 - 1e-3), tol=tol)
        above = subord.containment_scan(case, star * (1 + 1e-3), tol=tol)
        g.holds(f"{case.value}: fails just below the sharp constant", not below.verdict,
                f"min_d={below.min_d:.6e}")
        g.holds(f"{case.value}: holds just above the sharp constant", above.verdict,
                f"min_d={above.min_d:.6e}")
        g.holds(f"{case.value}: membership test agrees above", above.contains_verdict is True,
                above.discrepancy)
    return g


def check_starlike(tol: float | None) -> GroupResult:
    g = GroupResult("starlike")
    tol = 1e-6 if tol is None else tol
    rng = np.random.default_rng(7)
    worst = 0.0
    for beta in rng.uniform(0.01, 10.0, 20):
        lower, _ = subord.kustner_bounds(0.5, 1 / beta + 1, 1 / beta + 2)
        worst = max(worst, abs(lower - (3 + 5 * beta) / (2 * (2 + 3 * beta))))
    g.close("lower bound identity", worst, 0.0, 1e-14)
    star = subord.solve_sharp_beta(SubordCase.SQRT).beta_star
    for beta in (star, 1.0, 5.0):
        chk = subord.starlikeness_check(SubordCase.SQRT, beta)
        g.holds(f"sqrt beta={beta:.6g}: numeric order >= lower bound",
                chk.numeric_min_re >= chk.lower_bound - tol,
                f"numeric {chk.numeric_min_re:.9f} lower {chk.lower_bound:.9f}")
    for beta in (0.1, 2.0, 5.0):
        g.holds(f"exp beta={beta}: c - 1 >= N(a - 1)", subord.mm_condition(1 / beta + 1, 1 / beta + 2),
                subord.MM_DIRECTION_NOTE)
    return g


def check_corollary(tol: float | None) -> GroupResult:
    g = GroupResult("corollary")
    tol = 1e-10 if tol is None else tol
    g.close("G(z) = 0 for f(z) = z", subord.g_operator([0, 1], 0.4 + 0.1j), 0.0, tol)
    g.close("G at z = 1/2 for f = z + z^2/2", subord.g_operator([0, 1, 0.5], 0.5), 2 / 15, tol)
    z = 0.3j
    koebe = 1 - 1 / (1 - z) + 2 * z / (1 - z)
    g.close("G for f = z/(1-z)", subord.g_operator([0] + [1] * 120, z), koebe, tol)
    g.holds("w = 1 inside every target", all(subord.target_membership(c, 1.0) for c in SubordCase))
    g.holds("boundary points are outside",
            not subord.target_membership(SubordCase.SQRT, math.sqrt(2))
            and not subord.target_membership(SubordCase.EXP, math.e))
    return g


GROUPS: dict[str, Callable[[float | None], GroupResult]] = {
    "gamma": check_gamma,
    "series": check_series,
    "derivative": check_derivative,
    "oracle": check_oracle,
    "nephroid": check_nephroid,
    "ode": check_ode,
    "criteria": check_criteria,
    "sharpness": check_sharpness,
    "containment": check_containment,
    "starlike": check_starlike,
    "corollary": check_corollary,
}


def run(groups=None, tol: float | None = None) -> list[GroupResult]:
    """Run the named groups (all by default); a numeric failure fails its group."""
    out = []
    for name in groups or GROUPS:
        if name not in GROUPS:
            raise KeyError(f"unknown group {name!r}; choose from {', '.join(GROUPS)}")
        try:
            out.append(GROUPS[name](tol))
        except (NumericError, ValueError, ArithmeticError) as exc:
            res = GroupResult(name)
            res.holds("group completed", False, f"{type(exc).__name__}: {exc}")
            out.append(res)
    return out
