# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hypergeometric partial-sum kernel.

Mirrors ``_series_py.hyp_sum`` exactly: same recurrences, same checkpoint
schedule, same stopping rule. Only the summation differs (Neumaier here,
pairwise-per-chunk there), so results agree to a few ulp.
"""

from libc.math cimport fabs, hypot, exp, isfinite, INFINITY

cdef inline double _fmax(double x, double y) nogil:
    return x if x > y else y

cdef inline double _fmin(double x, double y) nogil:
    return x if x < y else y


cdef double _tail_bound(int kind, double a, double b, double c, double n,
                        double lead, double zabs, double omz) nogil:
    """Bound |sum_{k>=n} A_k z^k| given lead = |A_n| |z|^n."""
    cdef double q, s, excess, best, m, e
    if lead == 0.0:
        return 0.0
    if n + a <= 0.0 or n + c <= 0.0:
        return INFINITY
    if kind == 1:
        q = _fmax(1.0, (n + a) / (n + 1.0)) / (n + c) * zabs
        if q < 1.0:
            return lead / (1.0 - q)
        return INFINITY
    if n + b <= 0.0:
        return INFINITY
    best = INFINITY
    s = c - a - b + 1.0
    if s >= 0.0:
        excess = _fmax(0.0, a * b - c - s * n) / ((n + 1.0) * (n + c))
    else:
        excess = -s / (n + c) + _fmax(0.0, a * b - c) / ((n + 1.0) * (n + c))
    q = (1.0 + excess) * zabs
    if q < 1.0:
        best = lead / (1.0 - q)
    if s > 0.0 and excess == 0.0 and omz > 0.0:
        best = _fmin(best, 2.0 * lead / omz)
    if s > 1.0:
        m = _fmin(1.0, c)
        if n + m - 1.0 > 0.0:
            e = fabs((c - b) * (c - 1.0)) / (n + m - 1.0)
            best = _fmin(best, lead * exp(e) * (1.0 + (n + 1.0) / (s - 1.0)))
    return best


def tail_bound(int kind, double a, double b, double c, double n,
               double lead, double zabs, double omz):
    return _tail_bound(kind, a, b, c, n, lead, zabs, omz)


def hyp_sum(double a, double b, double c, int kind, double zr, double zi,
            double rel_tol, double tail_tol, long long max_terms):
    """Sum the 2F1 (kind=2) or 1F1 (kind=1) series at z = zr + i zi.

    Returns ``(re, im, terms_used, tail_bound, status)`` with status 0 on
    success, 1 when ``max_terms`` was reached, 2 on a non-finite sum.
    """
    cdef double coef = 1.0, pr = 1.0, pi = 0.0, t
    cdef double sr = 0.0, si = 0.0, cr = 0.0, ci = 0.0
    cdef double tr, ti, k, tail = INFINITY, ssum
    cdef double zabs = hypot(zr, zi)
    cdef double omz = hypot(1.0 - zr, zi)
    cdef long long n = 0
    cdef int status = 1
    with nogil:
        while n < max_terms:
            tr = coef * pr
            ti = coef * pi
            t = sr + tr
            if fabs(sr) >= fabs(tr):
                cr += (sr - t) + tr
            else:
                cr += (tr - t) + sr
            sr = t
            t = si + ti
            if fabs(si) >= fabs(ti):
                ci += (si - t) + ti
            else:
                ci += (ti - t) + si
            si = t
            n += 1
            k = <double>(n - 1)
            if kind == 2:
                coef *= ((a + k) * (b + k)) / ((k + 1.0) * (c + k))
            else:
                coef *= (a + k) / ((k + 1.0) * (c + k))
            t = pr * zr - pi * zi
            pi = pr * zi + pi * zr
            pr = t
            if coef == 0.0:
                tail = 0.0
                status = 0
                break
            if n < 64 or (n & 31) == 0:
                if not (isfinite(sr) and isfinite(si)):
                    tail = INFINITY
                    status = 2
                    break
                ssum = hypot(sr + cr, si + ci)
                if hypot(tr, ti) < rel_tol * _fmax(1.0, ssum):
                    tail = _tail_bound(kind, a, b, c, <double>n,
                                       fabs(coef) * hypot(pr, pi), zabs, omz)
                    if tail < tail_tol:
                        status = 0
                        break
    return (sr + cr, si + ci, n, tail, status)
