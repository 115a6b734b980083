"""Numpy fallback for the hypergeometric partial-sum kernel.

Same recurrences, checkpoint schedule and stopping rule as the compiled
``_series_ext`` kernel; terms are generated in growing chunks with
sequential ``multiply.accumulate`` so coefficients match it bit for bit.
"""

from __future__ import annotations

import math

import numpy as np

_MIN_CHUNK = 64
_MAX_CHUNK = 1 << 20


def tail_bound(kind, a, b, c, n, lead, zabs, omz):
    """Upper bound on ``|sum_{k>=n} A_k z^k|`` given ``lead = |A_n| |z|^n``.

    ``n`` and ``lead`` may be arrays. ``omz`` is ``|1 - z|``. Returns inf
    where no bound applies yet (coefficients may still change sign).
    """
    n = np.asarray(n, dtype=float)
    lead = np.asarray(lead, dtype=float)
    inf = np.full(np.broadcast(n, lead).shape, np.inf)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        valid = (n + a > 0) & (n + c > 0)
        if kind == 1:
            q = np.maximum(1.0, (n + a) / (n + 1.0)) / (n + c) * zabs
            best = np.where(valid & (q < 1.0), lead / (1.0 - q), inf)
        else:
            valid &= n + b > 0
            s = c - a - b + 1.0
            if s >= 0.0:
                excess = np.maximum(0.0, a * b - c - s * n) / ((n + 1.0) * (n + c))
            else:
                excess = -s / (n + c) + max(0.0, a * b - c) / ((n + 1.0) * (n + c))
            q = (1.0 + excess) * zabs
            best = np.where(q < 1.0, lead / (1.0 - q), inf)
            if s > 0.0 and omz > 0.0:
                best = np.where(excess == 0.0, np.minimum(best, 2.0 * lead / omz), best)
            if s > 1.0:
                m = min(1.0, c)
                e = np.abs((c - b) * (c - 1.0)) / (n + m - 1.0)
                pser = lead * np.exp(e) * (1.0 + (n + 1.0) / (s - 1.0))
                best = np.where(n + m - 1.0 > 0.0, np.minimum(best, pser), best)
            best = np.where(valid, best, inf)
        best = np.where(lead == 0.0, 0.0, best)
    return best if best.ndim else float(best)


def hyp_sum(a, b, c, kind, zr, zi, rel_tol, tail_tol, max_terms):
    """See ``_series_ext.hyp_sum``; returns ``(re, im, n, tail, status)``."""
    z = complex(zr, zi)
    zabs = abs(z)
    omz = abs(1.0 - z)
    coef = 1.0
    zpow = 1.0 + 0.0j
    acc_re = 0.0
    acc_im = 0.0
    comp_re = 0.0
    comp_im = 0.0
    n = 0
    chunk = _MIN_CHUNK
    tail = math.inf
    while n < max_terms:
        m = int(min(chunk, max_terms - n))
        k = np.arange(n, n + m, dtype=float)
        if kind == 2:
            ratios = ((a + k) * (b + k)) / ((k + 1.0) * (c + k))
        else:
            ratios = (a + k) / ((k + 1.0) * (c + k))
        # coefs[i] = A_{n+i}; nxt[i] = A_{n+i+1}
        seq = np.empty(m + 1)
        seq[0] = coef
        seq[1:] = ratios
        coefs_all = np.multiply.accumulate(seq)
        coefs, nxt = coefs_all[:-1], coefs_all[1:]
        zseq = np.empty(m + 1, dtype=complex)
        zseq[0] = zpow
        zseq[1:] = z
        zp_all = np.multiply.accumulate(zseq)
        zp, zp_next = zp_all[:-1], zp_all[1:]
        terms = coefs * zp

        count = np.arange(n + 1, n + m + 1)  # terms summed after index i
        stop = None
        zero = np.flatnonzero(nxt == 0.0)
        limit = m if zero.size == 0 else int(zero[0]) + 1

        base = complex(acc_re + comp_re, acc_im + comp_im)
        partial = base + np.cumsum(terms[:limit])
        checks = np.flatnonzero((count[:limit] < 64) | (count[:limit] % 32 == 0))
        if checks.size:
            finite = np.isfinite(partial[checks])
            if not finite.all():
                bad = checks[np.argmin(finite)]
                return (partial[bad].real, partial[bad].imag, int(count[bad]), math.inf, 2)
            small = np.abs(terms[checks]) < rel_tol * np.maximum(1.0, np.abs(partial[checks]))
            cand = checks[small]
            if cand.size:
                lead = np.abs(nxt[cand]) * np.abs(zp_next[cand])
                tb = tail_bound(kind, a, b, c, count[cand].astype(float), lead, zabs, omz)
                ok = np.flatnonzero(tb < tail_tol)
                if ok.size:
                    stop = int(cand[ok[0]])
                    tail = float(tb[ok[0]])
                elif cand.size:
                    tail = float(tb[-1])
        if stop is None and zero.size:
            stop = limit - 1
            tail = 0.0
        used = m if stop is None else stop + 1

        part = terms[:used]
        acc_re, comp_re = _neumaier(acc_re, comp_re, float(np.sum(part.real)))
        acc_im, comp_im = _neumaier(acc_im, comp_im, float(np.sum(part.imag)))
        n += used
        if stop is not None:
            return (acc_re + comp_re, acc_im + comp_im, n, tail, 0)
        coef = float(coefs_all[-1])
        zpow = complex(zp_all[-1])
        chunk = min(2 * chunk, _MAX_CHUNK)
    return (acc_re + comp_re, acc_im + comp_im, n, tail, 1)


def _neumaier(acc, comp, x):
    t = acc + x
    if abs(acc) >= abs(x):
        comp += (acc - t) + x
    else:
        comp += (x - t) + acc
    return t, comp
