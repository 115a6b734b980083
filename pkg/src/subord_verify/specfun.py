"""Gamma, Pochhammer, Gauss 2F1 and Kummer 1F1 for real parameters.

Series are summed directly on the closed unit disk with a rigorous bound on
the truncated remainder. The integral representations are kept as
independent oracles; they never feed the series path.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass

from scipy import integrate

from . import _series
from .errors import (
    ConvergenceError,
    DivergenceError,
    ParameterError,
    PoleError,
)

#: Stop only once the current term is below this fraction of ``max(1, |S|)``.
TERM_RTOL = 1e-14
#: ... and the remainder majorant is below this.
TAIL_TOL = 1e-12
MAX_TERMS = 1_000_000_000
#: Absolute tolerance of the quadrature oracles.
QUAD_TOL = 1e-10
#: Slack when deciding whether ``|z|`` lies on the unit circle.
CIRCLE_EPS = 1e-12

_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)


def _is_nonpositive_int(x: float) -> bool:
    return x <= 0 and x == math.floor(x)


def _lanczos_sum(x: float) -> float:
    # series for Gamma(x + 1), x >= -0.5
    acc = _LANCZOS_COEF[0]
    for i, coef in enumerate(_LANCZOS_COEF[1:], start=1):
        acc += coef / (x + i)
    return acc


def _sinpi(x: float) -> float:
    r = math.fmod(x, 2.0)
    if r == 0.0 or r == 1.0 or r == -1.0:
        return 0.0
    if r == 0.5 or r == -1.5:
        return 1.0
    if r == -0.5 or r == 1.5:
        return -1.0
    return math.sin(math.pi * r)


def gamma(x: float) -> float:
    """Gamma function via a g=7 Lanczos sum; reflection for ``x < 1/2``."""
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"gamma argument must be finite, got {x}")
    if _is_nonpositive_int(x):
        raise PoleError(f"gamma has a pole at {x}")
    if x < 0.5:
        return math.pi / (_sinpi(x) * gamma(1.0 - x))
    if x > 171.6:
        raise OverflowError(f"gamma({x}) overflows a double")
    y = x - 1.0
    t = y + _LANCZOS_G + 0.5
    half = t ** (0.5 * (y + 0.5))  # split so t**(y+1/2) cannot overflow early
    return math.sqrt(2.0 * math.pi) * half * math.exp(-t) * half * _lanczos_sum(y)


def log_gamma(x: float) -> float:
    """``log(Gamma(x))`` for ``x > 0``."""
    x = float(x)
    if not (x > 0 and math.isfinite(x)):
        raise ValueError(f"log_gamma needs a finite positive argument, got {x}")
    if x < 0.5:
        return log_gamma(x + 1.0) - math.log(x)
    y = x - 1.0
    t = y + _LANCZOS_G + 0.5
    return _HALF_LOG_2PI + (y + 0.5) * math.log(t) - t + math.log(_lanczos_sum(y))


def pochhammer(x: float, j: int) -> float:
    """Rising factorial ``x (x+1) ... (x+j-1)``; ``(x)_0 = 1``."""
    if j < 0:
        raise ValueError(f"pochhammer needs j >= 0, got {j}")
    out = 1.0
    for i in range(j):
        out *= x + i
    return out


@dataclass(frozen=True)
class HyperParams:
    """Real parameters ``(a, b; c)``; ``b`` is None for the confluent series."""

    a: float
    b: float | None
    c: float

    def __post_init__(self):
        vals = [self.a, self.c] + ([] if self.b is None else [self.b])
        if not all(math.isfinite(v) for v in vals):
            raise ParameterError(f"non-finite hypergeometric parameter in {self}")
        if _is_nonpositive_int(self.c):
            raise ParameterError(f"c = {self.c} is a non-positive integer")

    @property
    def confluent(self) -> bool:
        return self.b is None

    def shifted(self) -> "HyperParams":
        """Parameters ``(a+1, b+1; c+1)`` of the derivative series."""
        return HyperParams(self.a + 1, None if self.b is None else self.b + 1, self.c + 1)


@dataclass(frozen=True)
class SeriesValue:
    """A truncated series value with the number of terms and a remainder bound."""

    value: complex
    terms_used: int
    tail_bound: float


def _check_z(z) -> complex:
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"non-finite argument {z}")
    if abs(z) > 1.0 + CIRCLE_EPS:
        raise ValueError(f"|z| = {abs(z)} > 1 is outside the supported disk")
    return z


def _run(p: HyperParams, kind: int, z: complex, tail_tol: float, max_terms: int) -> SeriesValue:
    if z == 0:
        return SeriesValue(1.0 + 0.0j, 1, 0.0)
    b = 0.0 if p.b is None else p.b
    re, im, n, tail, status = _series.hyp_sum(
        float(p.a), float(b), float(p.c), kind, z.real, z.imag, TERM_RTOL, tail_tol, max_terms
    )
    if status == 2:
        raise ConvergenceError(f"series for {p} at z={z} became non-finite after {n} terms")
    if status == 1:
        raise ConvergenceError(
            f"series for {p} at z={z} hit the {max_terms}-term cap (tail bound {tail:.3e})"
        )
    return SeriesValue(complex(re, im), int(n), float(tail))


def gauss_2f1(p: HyperParams, z, *, tail_tol: float = TAIL_TOL, max_terms: int = MAX_TERMS) -> SeriesValue:
    """Partial sum of ``sum (a)_j (b)_j / (j! (c)_j) z^j`` on ``|z| <= 1``.

    On the unit circle the series must converge absolutely (``c - a - b > 0``)
    unless it terminates. The series is always summed directly at ``z``; near
    ``z = 1`` that takes up to ~1e8 terms, which is what the compiled kernel is for.
    """
    if p.confluent:
        raise ParameterError("gauss_2f1 needs b")
    z = _check_z(z)
    terminating = _is_nonpositive_int(p.a) or _is_nonpositive_int(p.b)
    if not terminating and abs(z) >= 1.0 - CIRCLE_EPS and p.c - p.a - p.b <= 0:
        raise DivergenceError(
            f"2F1{(p.a, p.b, p.c)} diverges on |z|=1: c-a-b = {p.c - p.a - p.b} <= 0"
        )
    return _run(p, 2, z, tail_tol, max_terms)


def kummer_1f1(p: HyperParams, z, *, tail_tol: float = TAIL_TOL, max_terms: int = MAX_TERMS) -> SeriesValue:
    """Partial sum of ``sum (a)_j / (c)_j z^j / j!`` with a factorial-decay tail bound."""
    if not p.confluent:
        p = HyperParams(p.a, None, p.c)
    return _run(p, 1, _check_z(z), tail_tol, max_terms)


def _scaled(sv: SeriesValue, factor: float) -> SeriesValue:
    return SeriesValue(sv.value * factor, sv.terms_used, sv.tail_bound * abs(factor))


def gauss_2f1_derivative(p: HyperParams, z, *, tail_tol: float = TAIL_TOL) -> SeriesValue:
    """``d/dz 2F1(a,b;c;z) = (ab/c) 2F1(a+1,b+1;c+1;z)``."""
    factor = p.a * p.b / p.c
    if factor == 0:
        _check_z(z)
        return SeriesValue(0j, 0, 0.0)
    return _scaled(gauss_2f1(p.shifted(), z, tail_tol=tail_tol), factor)


def kummer_1f1_derivative(p: HyperParams, z, *, tail_tol: float = TAIL_TOL) -> SeriesValue:
    """``d/dz 1F1(a;c;z) = (a/c) 1F1(a+1;c+1;z)``."""
    factor = p.a / p.c
    if factor == 0:
        _check_z(z)
        return SeriesValue(0j, 0, 0.0)
    return _scaled(kummer_1f1(HyperParams(p.a + 1, None, p.c + 1), z, tail_tol=tail_tol), factor)


def _beta_integral(alpha: float, gam: float, weight, tol: float) -> complex:
    """``int_0^1 t^(alpha-1) (1-t)^(gam-1) weight(t) dt`` for alpha, gam > 0.

    Split at 1/2; on each half ``t = s^(1/alpha)`` (resp. ``1-t = r^(1/gam)``)
    absorbs the algebraic endpoint factor, leaving a bounded integrand.
    """

    def left(s):
        t = s ** (1.0 / alpha)
        return (1.0 - t) ** (gam - 1.0) * weight(t) / alpha

    def right(r):
        u = r ** (1.0 / gam)
        return (1.0 - u) ** (alpha - 1.0) * weight(1.0 - u) / gam

    total = 0j
    for fn, upper in ((left, 0.5**alpha), (right, 0.5**gam)):
        with warnings.catch_warnings():
            warnings.simplefilter("error", integrate.IntegrationWarning)
            try:
                val, err = integrate.quad(
                    fn, 0.0, upper, complex_func=True, epsabs=tol / 4, epsrel=1e-13, limit=400
                )
            except integrate.IntegrationWarning as exc:
                raise ConvergenceError(f"quadrature did not converge: {exc}") from exc
        total += val
    return total


def gauss_2f1_euler_integral(p: HyperParams, z, *, tol: float = QUAD_TOL) -> complex:
    """Euler integral for 2F1, valid for ``c > b > 0``; a quadrature oracle."""
    if p.confluent:
        raise ParameterError("gauss_2f1_euler_integral needs b")
    if not p.c > p.b > 0:
        raise ParameterError(f"Euler integral needs c > b > 0, got b={p.b}, c={p.c}")
    z = _check_z(z)
    log_norm = log_gamma(p.c) - log_gamma(p.b) - log_gamma(p.c - p.b)
    norm = math.exp(log_norm)
    a = p.a
    integral = _beta_integral(p.b, p.c - p.b, lambda t: (1.0 - t * z) ** (-a), tol / norm)
    return norm * integral


def kummer_1f1_integral(p: HyperParams, z, *, tol: float = QUAD_TOL) -> complex:
    """Integral representation of 1F1, valid for ``c > a > 0``; a quadrature oracle."""
    if not p.c > p.a > 0:
        raise ParameterError(f"1F1 integral needs c > a > 0, got a={p.a}, c={p.c}")
    z = _check_z(z)
    norm = math.exp(log_gamma(p.c) - log_gamma(p.a) - log_gamma(p.c - p.a))
    integral = _beta_integral(p.a, p.c - p.a, lambda t: cmath.exp(t * z), tol / norm)
    return norm * integral
