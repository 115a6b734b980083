"""``subord-verify``: solve, verify, reproduce the reference table, emit figure data, self-check.

Exit codes: 0 success/verified, 1 verification negative, 2 usage or numeric error.
"""

from __future__ import annotations

import argparse
import dataclasses
import io
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import report, reproduce, selfcheck, subord
from .errors import NumericError
from .subord import BetaRoot, SubordCase

EXIT_OK, EXIT_NEGATIVE, EXIT_ERROR = 0, 1, 2
COMMANDS = ("solve", "verify", "table1", "figure", "selfcheck")
FIGURE_KINDS = ("overlay", "nephroid", "solution", "criterion")


@dataclass(frozen=True)
class RunConfig:
    command: str
    case: SubordCase
    beta: float | None = None
    theta_samples: int = subord.THETA_SAMPLES
    tolerance: float | None = None
    output_format: str = "json"
    output_path: Path | None = None
    group: tuple[str, ...] = ()
    kind: str = "overlay"
    cache: Path | None = None

    def __post_init__(self):
        if self.theta_samples < 64:
            raise ValueError(f"--theta-samples must be >= 64, got {self.theta_samples}")
        if self.tolerance is not None and not self.tolerance > 0:
            raise ValueError(f"--tol must be positive, got {self.tolerance}")
        if self.beta is not None and not self.beta > 0:
            raise ValueError(f"--beta must be positive, got {self.beta}")


class CommandError(Exception):
    """A usage problem detected after argument parsing."""


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="subord-verify",
        description="Numerically verify sharp differential-subordination constants for the nephroid.",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--case", choices=[c.value for c in SubordCase], default="sqrt")
    parser.add_argument("--beta", type=float, help="beta to verify/plot (default: the solved sharp constant)")
    parser.add_argument("--theta-samples", type=int, default=subord.THETA_SAMPLES,
                        help="uniform theta samples on [0, pi] (verify) or boundary samples (figure)")
    parser.add_argument("--tol", type=float, default=None,
                        help="verdict tolerance for verify (default 1e-9); check tolerance for selfcheck")
    parser.add_argument("--format", choices=("json", "csv", "svg"), default=None)
    parser.add_argument("--out", type=Path, help="write output here instead of stdout")
    parser.add_argument("--group", action="append", default=[],
                        help=f"selfcheck group (repeatable): {', '.join(selfcheck.GROUPS)}")
    parser.add_argument("--kind", choices=FIGURE_KINDS, default="overlay", help="figure content")
    parser.add_argument("--cache", type=Path, help="BetaRoot JSON reused (or written) for the sharp constant")
    return parser


def _default_format(command: str, kind: str) -> str:
    if command == "figure":
        return "svg" if kind == "overlay" else "csv"
    return "json"


def config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=args.command,
        case=SubordCase(args.case),
        beta=args.beta,
        theta_samples=args.theta_samples,
        tolerance=args.tol,
        output_format=args.format or _default_format(args.command, args.kind),
        output_path=args.out,
        group=tuple(args.group),
        kind=args.kind,
        cache=args.cache,
    )


def _root_from_json(text: str) -> BetaRoot:
    data = json.loads(text)
    return BetaRoot(SubordCase(data["case"]), float(data["beta_star"]), tuple(data["bracket"]),
                    float(data["residual"]), int(data["iterations"]))


def sharp_root(cfg: RunConfig) -> BetaRoot:
    """Solve for the case's sharp constant, or reuse a cached BetaRoot for the same case."""
    if cfg.cache is not None and cfg.cache.exists():
        root = _root_from_json(cfg.cache.read_text())
        if root.case is cfg.case:
            return root
    root = subord.solve_sharp_beta(cfg.case)
    if cfg.cache is not None:
        cfg.cache.write_text(report.to_json(root))
    return root


def _require_format(cfg: RunConfig, allowed: tuple[str, ...]) -> None:
    if cfg.output_format not in allowed:
        raise CommandError(f"{cfg.command} supports --format {'/'.join(allowed)}, not {cfg.output_format}")


def _beta(cfg: RunConfig) -> float:
    return cfg.beta if cfg.beta is not None else sharp_root(cfg).beta_star


def cmd_solve(cfg: RunConfig) -> tuple[str, int]:
    _require_format(cfg, ("json", "csv"))
    root = sharp_root(cfg)
    if cfg.output_format == "json":
        return report.to_json(root), EXIT_OK
    buf = io.StringIO()
    report.write_rows(buf, ("case", "beta_star", "bracket_lo", "bracket_hi", "residual", "iterations"),
                      [(root.case.value, root.beta_star, float(root.bracket[0]), float(root.bracket[1]),
                        root.residual, root.iterations)])
    return buf.getvalue(), EXIT_OK


def cmd_verify(cfg: RunConfig) -> tuple[str, int]:
    _require_format(cfg, ("json", "csv"))
    tol = subord.VERDICT_TOL if cfg.tolerance is None else cfg.tolerance
    rep = subord.containment_scan(cfg.case, _beta(cfg), cfg.theta_samples, tol=tol)
    text = report.to_json(rep) if cfg.output_format == "json" else report.scan_csv(rep)
    if rep.discrepancy:
        print(f"note: {rep.discrepancy}", file=sys.stderr)
    return text, EXIT_OK if rep.verdict else EXIT_NEGATIVE


def cmd_table1(cfg: RunConfig) -> tuple[str, int]:
    _require_format(cfg, ("json", "csv"))
    entries = reproduce.table_entries()
    root = sharp_root(dataclasses.replace(cfg, case=SubordCase.SQRT))
    at_root = subord.d(SubordCase.SQRT, np.pi, root.beta_star)
    all_match = all(e.match for e in entries)
    if cfg.output_format == "json":
        text = report.to_json({
            "entries": entries,
            "all_match": all_match,
            "solved_beta": root.beta_star,
            "d_pi_at_solved_beta": at_root,
        })
    else:
        buf = io.StringIO()
        report.write_rows(
            buf, ("theta", "beta", "computed", "reference", "deviation", "match"),
            [(e.theta_label, e.beta, e.computed, e.reference, e.deviation, str(e.match).lower())
             for e in entries],
        )
        text = buf.getvalue()
    return text, EXIT_OK if all_match else EXIT_NEGATIVE


def cmd_figure(cfg: RunConfig) -> tuple[str, int]:
    n = cfg.theta_samples
    if cfg.kind == "criterion":
        _require_format(cfg, ("csv", "json"))
        rows = reproduce.criterion_curve(cfg.case, np.logspace(-2, 1, 61))
        names = reproduce.criterion_names(cfg.case)
        if cfg.output_format == "json":
            return report.to_json([dict(zip(("beta",) + names, r)) for r in rows]), EXIT_OK
        buf = io.StringIO()
        report.write_rows(buf, ("beta",) + names, rows)
        return buf.getvalue(), EXIT_OK
    if cfg.kind == "nephroid":
        _require_format(cfg, ("csv", "svg"))
        thetas, pts = reproduce.nephroid_curve(n)
        if cfg.output_format == "svg":
            return report.overlay_svg({"nephroid": pts}), EXIT_OK
        return report.curve_csv(thetas, pts), EXIT_OK
    _require_format(cfg, ("csv", "svg") if cfg.kind == "solution" else ("svg",))
    beta = _beta(cfg)
    thetas, pts = reproduce.solution_boundary(cfg.case, beta, n)
    if cfg.kind == "solution":
        if cfg.output_format == "svg":
            return report.overlay_svg({f"{cfg.case.value} beta={beta!r}": pts}), EXIT_OK
        return report.curve_csv(thetas, pts), EXIT_OK
    _, neph = reproduce.nephroid_curve(max(n, 1024))
    return report.overlay_svg({"nephroid": neph, f"{cfg.case.value} beta={beta!r}": pts}), EXIT_OK


def cmd_selfcheck(cfg: RunConfig) -> tuple[str, int]:
    _require_format(cfg, ("json",))
    unknown = [g for g in cfg.group if g not in selfcheck.GROUPS]
    if unknown:
        raise CommandError(f"unknown group(s) {unknown}; choose from {', '.join(selfcheck.GROUPS)}")
    results = selfcheck.run(cfg.group or None, cfg.tolerance)
    passed = all(r.passed for r in results)
    text = report.to_json({"passed": passed, "groups": [r.as_dict() for r in results]})
    return text, EXIT_OK if passed else EXIT_NEGATIVE


HANDLERS = {
    "solve": cmd_solve,
    "verify": cmd_verify,
    "table1": cmd_table1,
    "figure": cmd_figure,
    "selfcheck": cmd_selfcheck,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # exits with 2 on usage errors
    try:
        cfg = config_from_args(args)
        text, code = HANDLERS[cfg.command](cfg)
        if cfg.output_path is not None:
            cfg.output_path.write_text(text)
            return code
    except (CommandError, ValueError, ArithmeticError, NumericError, OSError) as exc:
        print(f"subord-verify: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    try:
        sys.stdout.write(text)
        sys.stdout.flush()
    except BrokenPipeError:  # reader went away, e.g. piped into head
        pass
    return code


if __name__ == "__main__":
    sys.exit(main())
