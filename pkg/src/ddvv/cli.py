"""Command-line front end.

    ddvv check FILE [--which P|Pprime|both]
    ddvv curvature FILE [--c C]
    ddvv search --n N --m M [--restarts R] [--assert-bound B] [--out FILE]
    ddvv sweep --n 2..6 --m 2..3 --trials T --out FILE [--format csv|json]
    ddvv lemmas [--samples K]

Exit codes: 0 success / all inequalities hold, 1 input or precondition
error, 2 an inequality (or asserted bound) failed.
"""
from __future__ import annotations

import argparse
import csv
import io as _io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import curvature, lemma_oracles
from .io import dump_tuple, load_form, load_tuple
from .matrix_core import (DEFAULT_TOL, DomainError, InputError, ddvv_margin,
                          ddvv_residual, energy, pprime_margin, pprime_residual, total)
from .search import SearchOptions, maximize_lambda

EXIT_OK, EXIT_INPUT, EXIT_VIOLATION = 0, 1, 2
BOUND_SLACK = 1e-6

SWEEP_COLUMNS = ["n", "m", "trial", "seed", "S", "C", "ddvv_residual",
                 "pprime_residual", "holds_P", "holds_Pprime"]


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2))


def _error(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return EXIT_INPUT


# -- sweep -------------------------------------------------------------------

@dataclass(frozen=True)
class SweepConfig:
    n_range: tuple[int, int]
    m_range: tuple[int, int]
    trials: int = 1
    seed: int = 0
    distribution: str = "gaussian"
    out_path: str = "sweep.csv"
    format: str = "csv"
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        for name, (lo, hi) in (("n", self.n_range), ("m", self.m_range)):
            if lo < 1 or hi < lo:
                raise InputError(f"{name} range {lo}..{hi} is empty or nonpositive")
        if self.trials < 1:
            raise InputError("trials must be >= 1")
        if self.seed < 0:
            raise InputError("seed must be nonnegative")
        if self.distribution not in ("gaussian", "traceless_gaussian"):
            raise InputError(f"unknown distribution {self.distribution!r}")
        if self.format not in ("csv", "json"):
            raise InputError(f"unknown format {self.format!r}")


def trial_tuple(n: int, m: int, trial: int, seed: int, traceless: bool = False) -> np.ndarray:
    """The tuple for one sweep row; stream ``SeedSequence(seed, spawn_key=(n, m, trial))``."""
    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(n, m, trial)))
    g = rng.standard_normal((m, n, n))
    g = 0.5 * (g + np.swapaxes(g, -1, -2))
    if traceless:
        g = g - (np.trace(g, axis1=-2, axis2=-1) / n)[:, None, None] * np.eye(n)
    return g


def _sweep_block(args) -> list[dict]:
    n, m, cfg = args
    traceless = cfg.distribution == "traceless_gaussian"
    stack = np.stack([trial_tuple(n, m, t, cfg.seed, traceless) for t in range(cfg.trials)])
    s = total(stack)
    c = energy(stack)
    d = ddvv_margin(stack)
    p = pprime_margin(stack)
    slack = cfg.tol * s * s
    return [
        {"n": n, "m": m, "trial": t, "seed": cfg.seed, "S": float(s[t]), "C": float(c[t]),
         "ddvv_residual": float(d[t]), "pprime_residual": float(p[t]),
         "holds_P": bool(d[t] >= -slack[t]), "holds_Pprime": bool(p[t] >= -slack[t])}
        for t in range(cfg.trials)
    ]


def sweep_rows(cfg: SweepConfig, workers: int = 1) -> list[dict]:
    jobs = [(n, m, cfg)
            for n in range(cfg.n_range[0], cfg.n_range[1] + 1)
            for m in range(cfg.m_range[0], cfg.m_range[1] + 1)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            blocks = list(pool.map(_sweep_block, jobs))
    else:
        blocks = [_sweep_block(j) for j in jobs]
    rows = [r for b in blocks for r in b]
    rows.sort(key=lambda r: (r["n"], r["m"], r["trial"]))
    return rows


def render_rows(rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rows) + "\n"
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SWEEP_COLUMNS)
    for r in rows:
        w.writerow([repr(r[k]) if isinstance(r[k], float) else
                    str(r[k]).lower() if isinstance(r[k], bool) else r[k]
                    for k in SWEEP_COLUMNS])
    return buf.getvalue()


def parse_range(text: str) -> tuple[int, int]:
    """``"3"`` or ``"2..6"`` (inclusive)."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return int(lo), int(hi)
        v = int(text)
        return v, v
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid range {text!r}; use N or LO..HI") from None


# -- commands ----------------------------------------------------------------

def cmd_check(args) -> int:
    try:
        T = load_tuple(args.input)
    except InputError as exc:
        return _error(str(exc))
    reports = []
    if args.which in ("P", "both"):
        reports.append(ddvv_residual(T, args.tol))
    if args.which in ("Pprime", "both"):
        reports.append(pprime_residual(T, args.tol))
    _emit({"n": T.n, "m": T.m, "reports": [r.to_dict() for r in reports]})
    return EXIT_OK if all(r.holds for r in reports) else EXIT_VIOLATION


def cmd_curvature(args) -> int:
    try:
        F = load_form(args.input)
        if args.c is not None:
            F = curvature.SecondFundamentalForm(F.h, args.c)
        summary = curvature.summarize(F)
        conj = curvature.conjecture1_residual(F, args.tol)
        eq1a = curvature.eq1a_residual(F, args.tol)
    except (InputError, DomainError) as exc:
        return _error(str(exc))
    out = summary.to_dict()
    out.update({
        "n": F.n,
        "m": F.m,
        "conjecture1": conj.to_dict(),
        "eq1a": eq1a.to_dict(),
        "sign_agreement": curvature.sign_agreement(F, args.tol),
    })
    _emit(out)
    return EXIT_OK if conj.holds and eq1a.holds else EXIT_VIOLATION


def cmd_search(args) -> int:
    try:
        opts = SearchOptions(max_iters=args.max_iters, step_init=args.step,
                             tol_grad=args.tol_grad, tol_stationarity=args.tol_stationarity,
                             restarts=args.restarts, seed=args.seed)
        if args.n < 1 or args.m < 1:
            raise ValueError("n and m must be positive")
    except ValueError as exc:
        return _error(str(exc))
    result = maximize_lambda(args.n, args.m, opts, workers=args.workers)
    out = result.to_dict()
    if args.out:
        try:
            dump_tuple(result.tuple, args.out)
        except OSError as exc:
            return _error(f"cannot write {args.out}: {exc.strerror}")
    if args.assert_bound is not None:
        out["assert_bound"] = args.assert_bound
        out["bound_ok"] = bool(result.lambda_ <= args.assert_bound + BOUND_SLACK)
    _emit(out)
    if args.assert_bound is not None and not out["bound_ok"]:
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_sweep(args) -> int:
    try:
        cfg = SweepConfig(n_range=args.n, m_range=args.m, trials=args.trials, seed=args.seed,
                          distribution=args.distribution, out_path=args.out,
                          format=args.format, tol=args.tol)
    except InputError as exc:
        return _error(str(exc))
    rows = sweep_rows(cfg, workers=args.workers)
    try:
        with open(cfg.out_path, "w", newline="") as fh:
            fh.write(render_rows(rows, cfg.format))
    except OSError as exc:
        return _error(f"cannot write {cfg.out_path}: {exc.strerror}")
    violations = [r for r in rows if not r["holds_P"]]
    _emit({
        "rows": len(rows),
        "out": cfg.out_path,
        "violations_P": len(violations),
        "violations_Pprime": sum(not r["holds_Pprime"] for r in rows),
        "min_normalized_ddvv": min((r["ddvv_residual"] / r["S"] ** 2 for r in rows if r["S"] > 0),
                                   default=0.0),
    })
    return EXIT_OK


def cmd_lemmas(args) -> int:
    if args.samples < 1:
        return _error("samples must be >= 1")
    if args.debug_force_x_lt_y:
        try:
            lemma_oracles.lemma1_max_eigenvalue(0.0, 1.0)
        except DomainError as exc:
            return _error(f"precondition violated: {exc}")
    outcomes = lemma_oracles.run_suite(args.samples, args.seed)
    _emit({"seed": args.seed, "samples": args.samples,
           "oracles": [o.to_dict() for o in outcomes]})
    return EXIT_OK if all(o.passed for o in outcomes) else EXIT_VIOLATION


class _Parser(argparse.ArgumentParser):
    # usage errors are input errors (exit 1); 2 is reserved for violations
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ddvv", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("check", help="evaluate P(n,m) and/or P'(n,m) on a tuple file")
    c.add_argument("input")
    c.add_argument("--which", choices=["P", "Pprime", "both"], default="both")
    c.add_argument("--tol", type=float, default=DEFAULT_TOL)
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("curvature", help="curvature invariants of a second fundamental form")
    c.add_argument("input")
    c.add_argument("--c", type=float, default=None, help="override the ambient curvature")
    c.add_argument("--tol", type=float, default=1e-10)
    c.set_defaults(func=cmd_curvature)

    c = sub.add_parser("search", help="maximize C on the sphere S = 1")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--m", type=int, required=True)
    c.add_argument("--restarts", type=int, default=20)
    c.add_argument("--max-iters", type=int, default=5000)
    c.add_argument("--step", type=float, default=0.1)
    c.add_argument("--tol-grad", type=float, default=1e-8)
    c.add_argument("--tol-stationarity", type=float, default=1e-6)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--workers", type=int, default=1)
    c.add_argument("--assert-bound", type=float, default=None)
    c.add_argument("--out", default=None, help="write the best tuple as a JSON tuple file")
    c.set_defaults(func=cmd_search)

    c = sub.add_parser("sweep", help="random sweep of P and P' residuals")
    c.add_argument("--n", type=parse_range, required=True)
    c.add_argument("--m", type=parse_range, required=True)
    c.add_argument("--trials", type=int, default=1)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--distribution", choices=["gaussian", "traceless_gaussian"],
                   default="gaussian")
    c.add_argument("--out", required=True)
    c.add_argument("--format", choices=["csv", "json"], default="csv")
    c.add_argument("--tol", type=float, default=DEFAULT_TOL)
    c.add_argument("--workers", type=int, default=1)
    c.set_defaults(func=cmd_sweep)

    c = sub.add_parser("lemmas", help="run the lemma oracle sweeps")
    c.add_argument("--samples", type=int, default=10_000)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--debug-force-x-lt-y", action="store_true", help=argparse.SUPPRESS)
    c.set_defaults(func=cmd_lemmas)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
