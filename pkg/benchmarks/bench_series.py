"""Time the compiled and numpy series kernels on representative workloads.

    python benchmarks/bench_series.py [--repeat N]

Each workload is summed by every available backend; the table reports the
best-of-N wall time, the number of terms and the value spread between
backends (which should be ~0: both use the same recurrences).
"""

from __future__ import annotations

import argparse
import cmath
import time

from subord_verify import _series
from subord_verify.specfun import HyperParams, gauss_2f1, kummer_1f1

WORKLOADS = {
    "2F1 interior |z|=0.5": lambda: gauss_2f1(HyperParams(-0.5, 4.0, 5.0), cmath.rect(0.5, 1.0)),
    "2F1 circle, theta=2.9": lambda: gauss_2f1(HyperParams(-0.5, 1 / 0.1584, 1 / 0.1584 + 1), cmath.rect(1, 2.9)),
    "2F1 at z=1 (slowest point)": lambda: gauss_2f1(HyperParams(-0.5, 1 / 0.1584, 1 / 0.1584 + 1), 1.0),
    "1F1 on the circle": lambda: kummer_1f1(HyperParams(1 / 1.14 + 1, None, 1 / 1.14 + 2), cmath.rect(1, 0.3)),
}


def best_time(fn, repeat: int):
    best, out = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args(argv)

    names = sorted(_series.BACKENDS)
    print(f"backends: {', '.join(names)} (default {_series.BACKEND})")
    header = f"{'workload':28s} {'terms':>10s}" + "".join(f" {n + ' [s]':>12s}" for n in names) + f" {'max |diff|':>11s}"
    print(header)
    previous = _series.BACKEND
    try:
        for label, fn in WORKLOADS.items():
            times, values, terms = [], [], 0
            for name in names:
                _series.use_backend(name)
                t, out = best_time(fn, args.repeat)
                times.append(t)
                values.append(out.value)
                terms = out.terms_used
            spread = max(abs(v - values[0]) for v in values)
            print(f"{label:28s} {terms:10d}" + "".join(f" {t:12.4f}" for t in times) + f" {spread:11.2e}")
    finally:
        _series.use_backend(previous)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
