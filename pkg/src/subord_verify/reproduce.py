"""Reference-table reproduction and figure data.

The reference table lists ``d(theta, beta)`` for the sqrt case at nine
``theta`` values approaching pi, for a beta just above the sharp constant
(0.158379) and one just below it (0.1583737).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import nephroid, subord
from .subord import SubordCase

TABLE_BETAS = (0.158379, 0.1583737)
TABLE_THETAS = ("3", "3.14", "3.141", "3.1415", "3.14159", "3.141592", "3.1415926", "3.14159265", "pi")
#: Published values, as printed, one row per theta: (first beta, second beta).
TABLE_REFERENCE = (
    ("0.0893992", "0.0893943"),
    ("0.000230464", "0.000223834"),
    ("0.0000596419", "0.0000530052"),
    ("9.83806e-6", "3.19942e-6"),
    ("6.4166e-6", "-2.22177e-7"),
    ("6.40162e-6", "-2.37156e-7"),
    ("6.39958e-6", "-2.39199e-7"),
    ("6.39953e-6", "-2.39247e-7"),
    ("0", "-2.39248e-7"),
)
SIG_FIGS = 5
#: Agreement required of entries printed as exactly zero.
ZERO_ABS_TOL = 1e-7


@dataclass(frozen=True)
class TableEntry:
    theta_label: str
    theta: float
    beta: float
    computed: float
    reference: float
    deviation: float
    match: bool


def _theta(label: str) -> float:
    return math.pi if label == "pi" else float(label)


def matches_sig_figs(computed: float, reference: float, figs: int = SIG_FIGS) -> bool:
    """Do the values agree to ``figs`` significant figures (half a unit in the last place)?"""
    if reference == 0.0:
        return abs(computed) <= ZERO_ABS_TOL
    unit = 10.0 ** (math.floor(math.log10(abs(reference))) - (figs - 1))
    return abs(computed - reference) <= 0.5 * unit


def table_entries() -> list[TableEntry]:
    """All 18 entries, row by row, each with its absolute deviation from the printed value."""
    out = []
    for label, refs in zip(TABLE_THETAS, TABLE_REFERENCE):
        theta = _theta(label)
        for beta, ref in zip(TABLE_BETAS, refs):
            value = subord.d(SubordCase.SQRT, theta, beta)
            reference = float(ref)
            out.append(
                TableEntry(label, theta, beta, value, reference, abs(value - reference),
                           matches_sig_figs(value, reference))
            )
    return out


def solution_boundary(case: SubordCase | str, beta: float, n: int) -> tuple[np.ndarray, np.ndarray]:
    """``q(e^{i theta})`` at ``theta_k = 2 pi k / n``; the lower half is the conjugate of the upper."""
    case = SubordCase(case)
    if n < 16 or n % 2:
        raise ValueError(f"need an even number of samples >= 16, got {n}")
    thetas = 2.0 * np.pi * np.arange(n) / n
    half = n // 2
    upper = np.array([subord.boundary_point(case, t, beta) for t in thetas[: half + 1]])
    lower = np.conj(upper[1:half][::-1])
    return thetas, np.concatenate([upper, lower])


def criterion_names(case: SubordCase | str) -> tuple[str, str]:
    case = SubordCase(case)
    if case is SubordCase.SQRT:
        return "tau", "delta"
    if case is SubordCase.EXP:
        return "mu", "rho"
    return "lower", "upper"


def criterion_curve(case: SubordCase | str, betas) -> list[tuple[float, float, float]]:
    """``(beta, first, second)`` for the case's two necessity criteria."""
    case = SubordCase(case)
    if case is SubordCase.LINEAR:
        # q(-1) - 1/3 and 5/3 - q(1) for q = 1 + z/(1+beta)
        return [(float(b), 2 / 3 - 1 / (1 + b), 2 / 3 - 1 / (1 + b)) for b in betas]
    f, g = (subord.CRITERIA[name] for name in criterion_names(case))
    return [(float(b), f(b), g(b)) for b in betas]


def nephroid_curve(n: int) -> tuple[np.ndarray, np.ndarray]:
    curve = nephroid.sample_boundary(n)
    return curve.thetas, curve.points
