"""Maximize the commutator energy on the unit sphere ``S = 1``.

Projected gradient ascent with backtracking and multiple random restarts.
A point is certified as (numerically) critical through the Lagrange
stationarity residuals

    res_r = sum_{s != r} ||[A_r, A_s]||^2 - 2 C ||A_r||^2,

which vanish at every constrained critical point: the multiplier of the
sphere constraint equals ``2 C`` once the first-order conditions are paired
with each ``A_r`` and summed.  The best value found is only ever a lower
bound for the maximum.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .matrix_core import (DomainError, SymTuple, TupleLike, _stack, energy,
                          member_norms_sq, pair_commutator_norms_sq)

MIN_STEP = 1e-14


@dataclass(frozen=True)
class SearchOptions:
    max_iters: int = 5000
    step_init: float = 0.1
    tol_grad: float = 1e-8
    tol_stationarity: float = 1e-6
    restarts: int = 20
    seed: int = 0

    def __post_init__(self):
        if self.max_iters < 1 or self.restarts < 1:
            raise ValueError("max_iters and restarts must be positive")
        if not (self.step_init > 0 and self.tol_grad > 0 and self.tol_stationarity > 0):
            raise ValueError("step_init and tolerances must be positive")
        if self.seed < 0:
            raise ValueError("seed must be a nonnegative integer")


@dataclass(frozen=True, eq=False)
class SearchResult:
    tuple: SymTuple
    lambda_: float
    stationarity: list[float]
    iterations: int
    converged: bool
    restart_index: int
    seed: int
    trace: list[float] = field(default_factory=list, repr=False)

    def to_dict(self) -> dict:
        return {
            "n": self.tuple.n,
            "m": self.tuple.m,
            "lambda": self.lambda_,
            "stationarity": list(self.stationarity),
            "iterations": self.iterations,
            "converged": self.converged,
            "restart_index": self.restart_index,
            "seed": self.seed,
            "matrices": self.tuple.mats.tolist(),
        }


def euclidean_gradient(T: TupleLike) -> np.ndarray:
    """Gradient of ``C``: ``G_r = 2 sum_{s != r} [[A_r, A_s], A_s]``, shape ``(m, n, n)``."""
    a = _stack(T)
    # K[r, s] = [A_r, A_s]
    prod = a[:, None] @ a[None, :]
    k = prod - np.swapaxes(prod, 0, 1)
    ks = k @ a[None, :]
    sk = a[None, :] @ k
    return 2.0 * np.sum(ks - sk, axis=1)


def stationarity_residuals(T: TupleLike, norm_tol: float = 1e-8) -> np.ndarray:
    a = _stack(T)
    norms = member_norms_sq(a)
    s = norms.sum()
    if abs(s - 1.0) > norm_tol:
        raise DomainError(f"stationarity residuals need S = 1, got S = {s:.12g}")
    pairs = pair_commutator_norms_sq(a)
    c = pairs.sum() / 2.0
    return pairs.sum(axis=1) - 2.0 * c * norms


def _normalize(a: np.ndarray) -> np.ndarray:
    return a / np.sqrt(np.sum(a * a))


def ascend(start: TupleLike, opts: SearchOptions = SearchOptions(),
           restart_index: int = 0) -> SearchResult:
    """Single ascent run from ``start`` (rescaled onto ``S = 1``)."""
    t = np.array(_stack(start), dtype=float)
    if np.sum(t * t) == 0.0:
        raise DomainError("cannot start the ascent from the zero tuple")
    t = _normalize(t)
    c = float(energy(t))
    trace = [c]
    step = opts.step_init
    it = 0
    while it < opts.max_iters:
        g = euclidean_gradient(t)
        tangential = g - np.sum(g * t) * t
        if np.sqrt(np.sum(tangential * tangential)) < opts.tol_grad:
            break
        while True:
            cand = _normalize(t + step * g)
            c_new = float(energy(cand))
            if c_new > c:
                break
            step *= 0.5
            if step < MIN_STEP:
                break
        if step < MIN_STEP:
            break
        t, c = cand, c_new
        trace.append(c)
        it += 1
        step = min(2.0 * step, opts.step_init)
    res = stationarity_residuals(t)
    return SearchResult(
        tuple=SymTuple(t),
        lambda_=c,
        stationarity=[float(x) for x in res],
        iterations=it,
        converged=bool(np.max(np.abs(res)) < opts.tol_stationarity),
        restart_index=restart_index,
        seed=opts.seed,
        trace=trace,
    )


def restart_rng(seed: int, restart_index: int) -> np.random.Generator:
    """Independent stream per restart: ``SeedSequence(seed, spawn_key=(restart_index,))``.

    Identical to ``SeedSequence(seed).spawn(k)[restart_index]``, so the
    stream does not depend on how restarts are scheduled.
    """
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(restart_index,)))


def initial_tuple(n: int, m: int, seed: int, restart_index: int) -> np.ndarray:
    g = restart_rng(seed, restart_index).standard_normal((m, n, n))
    return _normalize(0.5 * (g + np.swapaxes(g, 1, 2)))


def _run_restart(args) -> SearchResult:
    n, m, opts, k = args
    return ascend(initial_tuple(n, m, opts.seed, k), opts, restart_index=k)


def maximize_lambda(n: int, m: int, opts: SearchOptions = SearchOptions(),
                    workers: int = 1) -> SearchResult:
    """Best of ``opts.restarts`` ascents; ties go to the lowest restart index."""
    if n < 1 or m < 1:
        raise ValueError("n and m must be positive")
    jobs = [(n, m, opts, k) for k in range(opts.restarts)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_restart, jobs))
    else:
        results = [_run_restart(j) for j in jobs]
    best = results[0]
    for r in results[1:]:
        if r.lambda_ > best.lambda_:
            best = r
    return best
