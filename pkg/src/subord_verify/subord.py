"""The three subordination cases and their numerical verification.

For ``p + beta z p' < phi`` with ``phi`` one of ``sqrt(1+z)``, ``1+z``, ``e^z``
the best dominant solves ``q + beta z q' = phi``:

* sqrt:   ``2F1(-1/2, 1/beta; 1/beta + 1; -z)``
* linear: ``1 + z / (1 + beta)``
* exp:    ``1F1(1/beta; 1/beta + 1; z)``

``q < phi_Ne`` is then checked by comparing squared distances from (1, 0)
along the two boundary curves, paired with a direct membership test.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable

import numpy as np

from . import nephroid
from .errors import AmbiguityError, BracketError, NumericError
from .specfun import (
    TAIL_TOL,
    HyperParams,
    SeriesValue,
    gamma,
    gauss_2f1,
    gauss_2f1_derivative,
    kummer_1f1,
    kummer_1f1_derivative,
    log_gamma,
)

VERDICT_TOL = 1e-9
THETA_SAMPLES = 2048
REFINE_XTOL = 1e-10
ROOT_XTOL = 1e-9
#: Distance within which a solution-boundary point counts as touching the nephroid.
TOUCH_TOL = 1e-7

MM_DIRECTION_NOTE = (
    "starlikeness premise for the exp case evaluated as c - 1 >= N(a - 1), the direction "
    "used where the criterion is applied; the criterion as stated reads c <= 1 + N(a - 1)"
)


class SubordCase(str, Enum):
    SQRT = "sqrt"
    LINEAR = "linear"
    EXP = "exp"

    def target(self, z: complex) -> complex:
        """Right-hand side ``sqrt(1+z)``, ``1+z`` or ``e^z`` (principal branches)."""
        z = complex(z)
        if self is SubordCase.SQRT:
            return cmath.sqrt(1 + z)
        if self is SubordCase.LINEAR:
            return 1 + z
        return cmath.exp(z)


@dataclass(frozen=True)
class SolutionCurve:
    case: SubordCase
    beta: float

    def __post_init__(self):
        object.__setattr__(self, "case", SubordCase(self.case))
        if not (math.isfinite(self.beta) and self.beta > 0):
            raise ValueError(f"beta must be finite and positive, got {self.beta}")

    @property
    def params(self) -> HyperParams:
        b = 1.0 / self.beta
        if self.case is SubordCase.SQRT:
            return HyperParams(-0.5, b, b + 1.0)
        if self.case is SubordCase.LINEAR:
            return HyperParams(-1.0, b, b + 1.0)
        return HyperParams(b, None, b + 1.0)


@dataclass(frozen=True)
class BetaRoot:
    case: SubordCase
    beta_star: float
    bracket: tuple[float, float]
    residual: float
    iterations: int


@dataclass(frozen=True)
class ContainmentReport:
    case: SubordCase
    beta: float
    theta_grid: list[float]
    d_values: list[float]
    min_d: float
    argmin_theta: float
    verdict: bool
    contains_verdict: bool | None = None
    n_outside: int = 0
    n_touching: int = 0
    discrepancy: str | None = None
    d2_values: list[float] = field(default_factory=list)


@dataclass(frozen=True)
class StarlikenessCheck:
    lower_bound: float | None = None
    upper_bound: float | None = None
    mm_condition_met: bool | None = None
    numeric_min_re: float | None = None
    notes: list[str] = field(default_factory=list)


# -- solution curves ---------------------------------------------------------


def _solution_series(s: SolutionCurve, z: complex, tail_tol: float = TAIL_TOL) -> SeriesValue:
    if s.case is SubordCase.SQRT:
        return gauss_2f1(s.params, -z, tail_tol=tail_tol)
    if s.case is SubordCase.EXP:
        return kummer_1f1(s.params, z, tail_tol=tail_tol)
    return SeriesValue(1 + z / (1 + s.beta), 2, 0.0)


def solution_value(s: SolutionCurve, z) -> complex:
    """Value of the case's dominant at ``z`` (``|z| <= 1``)."""
    return _solution_series(s, complex(z)).value


def solution_derivative(s: SolutionCurve, z) -> complex:
    z = complex(z)
    if s.case is SubordCase.SQRT:
        return -gauss_2f1_derivative(s.params, -z).value
    if s.case is SubordCase.EXP:
        return kummer_1f1_derivative(s.params, z).value
    return 1 / (1 + s.beta) + 0j


def ode_residual(s: SolutionCurve, z) -> float:
    """``|q(z) + beta z q'(z) - phi(z)|`` using the derivative identities."""
    z = complex(z)
    if abs(z) > 0.95 + 1e-12:
        raise ValueError(f"ode_residual needs |z| <= 0.95, got {abs(z)}")
    lhs = solution_value(s, z) + s.beta * z * solution_derivative(s, z)
    return abs(lhs - s.case.target(z))


# -- criterion functions -----------------------------------------------------


def coefficient_C(j: int, beta: float) -> float:
    """``(-1)^j Gamma(j - 1/2) / (j! (1 + j beta))``."""
    if j < 0 or beta <= 0:
        raise ValueError("coefficient_C needs j >= 0 and beta > 0")
    if j == 0:
        return gamma(-0.5)
    mag = math.exp(log_gamma(j - 0.5) - log_gamma(j + 1.0)) / (1.0 + j * beta)
    return -mag if j % 2 else mag


def _criterion_series(case: SubordCase, beta: float, tail_tol: float) -> tuple[float, float]:
    """(criterion value, remainder bound) for the criterion whose root is sharp."""
    s = SolutionCurve(case, beta)
    if case is SubordCase.SQRT:
        sv = gauss_2f1(s.params, 1.0, tail_tol=tail_tol)  # Psi(-1)
        return sv.value.real - 1.0 / 3.0, sv.tail_bound
    if case is SubordCase.EXP:
        sv = kummer_1f1(s.params, 1.0, tail_tol=tail_tol)  # psi(1)
        return 5.0 / 3.0 - sv.value.real, sv.tail_bound
    return beta / (1.0 + beta) - 1.0 / 3.0, 0.0


def tau(beta: float, *, tail_tol: float = TAIL_TOL) -> float:
    """``Psi_beta(-1) - 1/3``; its root is the sharp constant of the sqrt case."""
    return _criterion_series(SubordCase.SQRT, beta, tail_tol)[0]


def delta(beta: float, *, tail_tol: float = TAIL_TOL) -> float:
    """``5/3 - Psi_beta(1)``."""
    s = SolutionCurve(SubordCase.SQRT, beta)
    return 5.0 / 3.0 - gauss_2f1(s.params, -1.0, tail_tol=tail_tol).value.real


def mu(beta: float, *, tail_tol: float = TAIL_TOL) -> float:
    """``psi_beta(-1) - 1/3``."""
    s = SolutionCurve(SubordCase.EXP, beta)
    return kummer_1f1(s.params, -1.0, tail_tol=tail_tol).value.real - 1.0 / 3.0


def rho(beta: float, *, tail_tol: float = TAIL_TOL) -> float:
    """``5/3 - psi_beta(1)``; its root is the sharp constant of the exp case."""
    return _criterion_series(SubordCase.EXP, beta, tail_tol)[0]


CRITERIA: dict[str, Callable[[float], float]] = {"tau": tau, "delta": delta, "mu": mu, "rho": rho}

_BRACKETS = {SubordCase.SQRT: (0.01, 10.0), SubordCase.EXP: (0.1, 10.0)}


def _certified_sign(case: SubordCase, beta: float) -> int:
    # tighten the tail only as far as needed to fix the sign
    for tail_tol in (1e-6, 1e-9, TAIL_TOL):
        value, bound = _criterion_series(case, beta, tail_tol)
        if abs(value) > bound:
            return 1 if value > 0 else -1
    return 0


def solve_sharp_beta(case: SubordCase | str, *, xtol: float = ROOT_XTOL) -> BetaRoot:
    """Bisect the monotone necessity criterion for the smallest admissible beta."""
    case = SubordCase(case)
    if case is SubordCase.LINEAR:
        # beta/(1+beta) >= 1/3 and 1/(1+beta)^2 <= 4/9 both reduce to beta >= 1/2
        return BetaRoot(case, 0.5, (0.5, 0.5), 0.0, 0)
    lo, hi = _BRACKETS[case]
    s_lo, s_hi = _certified_sign(case, lo), _certified_sign(case, hi)
    if s_lo * s_hi >= 0:
        raise BracketError(f"{case.value}: criterion has no sign change on [{lo}, {hi}]")
    iterations = 0
    while hi - lo > xtol:
        mid = 0.5 * (lo + hi)
        iterations += 1
        s_mid = _certified_sign(case, mid)
        if s_mid == 0:
            lo = hi = mid
            break
        if s_mid == s_lo:
            lo = mid
        else:
            hi = mid
    beta_star = 0.5 * (lo + hi)
    residual = _criterion_series(case, beta_star, TAIL_TOL)[0]
    return BetaRoot(case, beta_star, (lo, hi), residual, iterations)


def linear_necessity(*, xtol: float = ROOT_XTOL) -> dict:
    """Both necessary inequalities of the linear case, solved from the terminating series.

    ``q(-1) >= 1/3`` and ``q(1) <= 5/3`` with ``q = 2F1(-1, 1/beta; 1/beta+1; -z)``.
    Each is bisected on [1e-3, 10]; both come out at beta = 1/2.
    """

    def lower(beta):
        return gauss_2f1(SolutionCurve(SubordCase.LINEAR, beta).params, 1.0).value.real - 1 / 3

    def upper(beta):
        return 5 / 3 - gauss_2f1(SolutionCurve(SubordCase.LINEAR, beta).params, -1.0).value.real

    out = {}
    for name, fn in (("lower", lower), ("upper", upper)):
        lo, hi = 1e-3, 10.0
        if fn(lo) >= 0 or fn(hi) <= 0:
            raise BracketError(f"linear-case {name} inequality has no sign change")
        while hi - lo > xtol:
            mid = 0.5 * (lo + hi)
            lo, hi = (mid, hi) if fn(mid) < 0 else (lo, mid)
        out[name] = 0.5 * (lo + hi)
    out["note"] = (
        f"upper inequality 5/3 - q(1) >= 0 holds for beta >= {out['upper']:.9f}, "
        "not for beta >= -5/2; the sharp value max(...) is 1/2 either way"
    )
    return out


# -- boundary distances --------------------------------------------------------


def boundary_point(case: SubordCase | str, theta: float, beta: float) -> complex:
    """The dominant's boundary value at ``e^{i theta}``."""
    s = SolutionCurve(SubordCase(case), beta)
    return _solution_series(s, complex(math.cos(theta), math.sin(theta))).value


def d2(case: SubordCase | str, theta: float, beta: float) -> float:
    """Squared distance from (1, 0) to the dominant's boundary point at ``theta``."""
    case = SubordCase(case)
    if case is SubordCase.LINEAR:
        return 1.0 / (1.0 + beta) ** 2
    return abs(boundary_point(case, theta, beta) - 1.0) ** 2


def d(case: SubordCase | str, theta: float, beta: float) -> float:
    """``d1(theta) - d2(theta, beta)``; non-negative along [0, pi] iff the criterion holds."""
    return float(nephroid.d1(theta)) - d2(case, theta, beta)


def _golden_min(f, lo: float, hi: float, xtol: float) -> tuple[float, float]:
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    x1 = hi - invphi * (hi - lo)
    x2 = lo + invphi * (hi - lo)
    f1, f2 = f(x1), f(x2)
    while hi - lo > xtol:
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - invphi * (hi - lo)
            f1 = f(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + invphi * (hi - lo)
            f2 = f(x2)
    return (x1, f1) if f1 <= f2 else (x2, f2)


def _classify_points(points) -> tuple[int, int]:
    outside = touching = 0
    for w in points:
        try:
            if nephroid.contains(w):
                continue
        except AmbiguityError:
            touching += 1
            continue
        if nephroid.boundary_distance(w) < TOUCH_TOL:
            touching += 1
        else:
            outside += 1
    return outside, touching


def containment_scan(
    case: SubordCase | str,
    beta: float,
    n: int = THETA_SAMPLES,
    *,
    tol: float = VERDICT_TOL,
    refine_xtol: float = REFINE_XTOL,
    check_contains: bool = True,
) -> ContainmentReport:
    """Scan ``d(theta, beta)`` over [0, pi] and cross-check with nephroid membership.

    The uniform grid's argmin is refined by golden-section search to
    ``refine_xtol``; the refined point is merged into the grid. When
    ``check_contains`` is set, every sampled boundary point of the dominant is
    classified against the nephroid, and disagreement with the distance
    verdict is recorded in ``discrepancy``.
    """
    case = SubordCase(case)
    if n < 64:
        raise ValueError(f"need at least 64 theta samples, got {n}")
    if not beta > 0:
        raise ValueError(f"beta must be positive, got {beta}")
    thetas = np.linspace(0.0, np.pi, n)
    points = np.array([boundary_point(case, t, beta) for t in thetas])
    dist2 = np.abs(points - 1.0) ** 2
    values = nephroid.d1(thetas) - dist2
    k = int(np.argmin(values))
    lo, hi = thetas[max(k - 1, 0)], thetas[min(k + 1, n - 1)]
    t_ref, d_ref = _golden_min(lambda t: d(case, t, beta), lo, hi, refine_xtol)
    grid, dvals, d2vals = list(map(float, thetas)), list(map(float, values)), list(map(float, dist2))
    if d_ref < values[k] and t_ref not in grid:
        pos = int(np.searchsorted(thetas, t_ref))
        grid.insert(pos, float(t_ref))
        dvals.insert(pos, float(d_ref))
        d2vals.insert(pos, float(nephroid.d1(t_ref) - d_ref))
    j = int(np.argmin(dvals))
    min_d, argmin = dvals[j], grid[j]
    verdict = min_d >= -tol

    contains_verdict = None
    outside = touching = 0
    discrepancy = None
    if check_contains:
        extra = [boundary_point(case, argmin, beta)] if argmin not in thetas else []
        outside, touching = _classify_points(list(points) + extra)
        contains_verdict = outside == 0
        if contains_verdict != verdict:
            discrepancy = (
                f"distance criterion verdict={verdict} (min d={min_d:.6e} at theta={argmin:.12f}) "
                f"but membership test finds {outside} boundary points outside and {touching} touching"
            )
    return ContainmentReport(
        case, float(beta), grid, dvals, float(min_d), float(argmin), bool(verdict),
        contains_verdict, outside, touching, discrepancy, d2vals,
    )


# -- starlikeness premises ------------------------------------------------------


def kustner_bounds(a: float, b: float, c: float) -> tuple[float, float]:
    """Bounds on the order of starlikeness of ``z 2F1(a,b;c;z)`` for ``0 < a <= b <= c``."""
    if not 0 < a <= b <= c:
        raise ValueError(f"need 0 < a <= b <= c, got ({a}, {b}, {c})")
    return 1.0 - a * b / (b + c), 1.0 - a * b / (2.0 * c)


def mm_N(a: float) -> float:
    x = abs(a)
    if x >= 1.0 / 3.0:
        return x + 0.5
    return 1.5 * a * a + 2.0 / 3.0


def mm_condition(a: float, c: float) -> bool:
    """``c - 1 >= N(a - 1)``; see ``MM_DIRECTION_NOTE``."""
    return c - 1.0 >= mm_N(a - 1.0)


def theta_function(case: SubordCase | str, beta: float):
    """``Theta = beta z q'`` for the case, and its derivative, as callables."""
    case = SubordCase(case)
    b = 1.0 / beta
    if case is SubordCase.LINEAR:
        k = beta / (1.0 + beta)
        return (lambda z: k * z), (lambda z: k + 0j)
    if case is SubordCase.SQRT:
        k = beta / (2.0 * (1.0 + beta))
        p = HyperParams(0.5, b + 1.0, b + 2.0)

        def f(z):
            return k * z * gauss_2f1(p, -z).value

        def fp(z):
            return k * (gauss_2f1(p, -z).value - z * gauss_2f1_derivative(p, -z).value)

        return f, fp
    k = beta / (1.0 + beta)
    p = HyperParams(b + 1.0, None, b + 2.0)

    def f(z):
        return k * z * kummer_1f1(p, z).value

    def fp(z):
        return k * (kummer_1f1(p, z).value + z * kummer_1f1_derivative(p, z).value)

    return f, fp


def numeric_starlikeness_scan(
    evaluator: Callable[[complex], complex],
    n: int = 256,
    *,
    derivative: Callable[[complex], complex] | None = None,
    rings: int = 8,
    r_max: float = 0.999,
    h: float = 1e-6,
) -> float:
    """Empirical minimum of ``Re(z f'(z) / f(z))`` on ``rings`` circles up to ``r_max``.

    An estimate of the order of starlikeness from below the sampled region,
    not a certificate. Without ``derivative`` a central difference with step
    ``h`` is used.
    """
    if n < 256:
        raise ValueError(f"need n >= 256 points per ring, got {n}")
    best = math.inf
    for i in range(1, rings + 1):
        r = r_max * i / rings
        for k in range(n):
            z = cmath.rect(r, 2.0 * math.pi * k / n)
            fz = evaluator(z)
            if fz == 0:
                raise NumericError(f"evaluator vanishes at z={z}")
            if derivative is not None:
                dz = derivative(z)
            else:
                step = h * z / abs(z)
                dz = (evaluator(z + step) - evaluator(z - step)) / (2.0 * step)
            best = min(best, (z * dz / fz).real)
    return best


def starlikeness_check(case: SubordCase | str, beta: float, n: int = 256) -> StarlikenessCheck:
    """Analytic premise for ``Theta`` plus its empirical order of starlikeness."""
    case = SubordCase(case)
    f, fp = theta_function(case, beta)
    numeric = numeric_starlikeness_scan(f, n, derivative=fp)
    b = 1.0 / beta
    if case is SubordCase.SQRT:
        lo, up = kustner_bounds(0.5, b + 1.0, b + 2.0)
        return StarlikenessCheck(lo, up, None, numeric)
    if case is SubordCase.EXP:
        met = mm_condition(b + 1.0, b + 2.0)
        return StarlikenessCheck(None, None, met, numeric, [MM_DIRECTION_NOTE])
    return StarlikenessCheck(1.0, 1.0, None, numeric, ["Theta is linear: beta/(1+beta) z"])


# -- corollary helpers --------------------------------------------------------


def g_operator(f_coeffs, z) -> complex:
    """``1 - z f'/f + z f''/f'`` for ``f = sum f_coeffs[k] z^k`` (normalised: 0, 1, ...)."""
    coeffs = np.asarray(f_coeffs, dtype=complex)
    if len(coeffs) < 2 or coeffs[0] != 0 or coeffs[1] != 1:
        raise ValueError("f must be normalised: f(0) = 0, f'(0) = 1")
    z = complex(z)
    if z == 0:
        return 0j  # zf'/f -> 1 and zf''/f' -> 0
    poly = np.polynomial.Polynomial(coeffs)
    f, fp, fpp = poly(z), poly.deriv(1)(z), poly.deriv(2)(z) if len(coeffs) > 2 else 0j
    if f == 0 or fp == 0:
        raise NumericError(f"f or f' vanishes at z={z}")
    return 1 - z * fp / f + z * fpp / fp


def target_membership(case: SubordCase | str, w) -> bool:
    """Is ``w`` in the open image of the unit disk under the case's right-hand side?"""
    case = SubordCase(case)
    w = complex(w)
    if case is SubordCase.SQRT:
        return abs(w * w - 1) < 1 and w.real > 0
    if case is SubordCase.LINEAR:
        return abs(w - 1) < 1
    if w.imag == 0 and w.real <= 0:
        raise ValueError(f"log undefined on the branch cut, w={w}")
    return abs(cmath.log(w)) < 1
