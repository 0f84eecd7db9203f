"""Brute-force oracles for the auxiliary inequalities behind P(n,3) and P'(n,m).

Each inequality has a pointwise residual (nonnegative when the claim holds)
and a randomized or grid sweep returning the worst residual seen.  Index
arguments are 0-based.

* Lemma 1: for ``x >= y >= 0``, a unit vector ``eta`` and index pairs
  ``{i,j} != {k,l}``: ``(eta_i - eta_j)^2 x + (eta_k - eta_l)^2 y <= 2x + y``.
  The overlapping case reduces to the top eigenvalue of
  ``[[x+y, -x, -y], [-x, x, 0], [-y, 0, y]]``, which is
  ``x + y + sqrt(x^2 - xy + y^2)``.
* Rotated pair profile ("Case 1"): two off-diagonal slots rotated by an angle.
* Single off-diagonal slot ("Case 2"): ``4(b^2 + c^2) <= 2x + y`` under the
  orthogonality constraint ``2bc + <diag_b, diag_c> = 0``.
* Quartic reduction of P'(n,m) in the scale ``t`` of the leading member.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .matrix_core import (DomainError, InputError, SymTuple, commutator,
                          frobenius_norm_sq, member_norms_sq, pair_commutator_norms_sq,
                          pprime_residual)

UNIT_TOL = 1e-12
LEMMA1_TOL = 1e-12
CASE2_TOL = 1e-10
QUARTIC_TOL = 1e-10


def _rng(seed):
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


# -- Lemma 1 -----------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Lemma1Instance:
    x: float
    y: float
    eta: np.ndarray
    i: int
    j: int
    k: int
    l: int

    def __post_init__(self):
        eta = np.asarray(self.eta, dtype=float)
        object.__setattr__(self, "eta", eta)
        if not (self.x >= self.y >= 0):
            raise DomainError(f"need x >= y >= 0, got x={self.x}, y={self.y}")
        if abs(float(eta @ eta) - 1.0) > UNIT_TOL:
            raise DomainError("eta must be a unit vector")
        n = eta.size
        idx = (self.i, self.j, self.k, self.l)
        if any(not 0 <= p < n for p in idx):
            raise DomainError(f"indices {idx} out of range for n={n}")
        if self.i == self.j or self.k == self.l:
            raise DomainError("index pairs must have distinct entries")
        if {self.i, self.j} == {self.k, self.l}:
            raise DomainError("index pairs must differ")


def lemma1_residual(inst: Lemma1Instance) -> float:
    e = inst.eta
    lhs = (e[inst.i] - e[inst.j]) ** 2 * inst.x + (e[inst.k] - e[inst.l]) ** 2 * inst.y
    return 2 * inst.x + inst.y - lhs


def lemma1_matrix(x: float, y: float) -> np.ndarray:
    return np.array([[x + y, -x, -y], [-x, x, 0.0], [-y, 0.0, y]])


def lemma1_max_eigenvalue(x: float, y: float) -> float:
    """Largest eigenvalue of ``lemma1_matrix(x, y)`` from the symmetric eigensolver."""
    if x < y:
        raise DomainError(f"need x >= y, got x={x}, y={y}")
    return float(np.linalg.eigvalsh(lemma1_matrix(x, y))[-1])


def lemma1_closed_form(x, y):
    return x + y + np.sqrt(x * x - x * y + y * y)


def lemma1_eigen_grid(points: int = 200, x_max: float = 10.0) -> dict:
    """Eigensolver vs closed form on the triangle ``0 <= y <= x <= x_max``.

    The grid is ``points x points`` over ``x, y in [0, x_max]`` folded onto the
    triangle by ``(max, min)``.
    """
    g = np.linspace(0.0, x_max, points)
    xx, yy = np.meshgrid(g, g, indexing="ij")
    x, y = np.maximum(xx, yy).ravel(), np.minimum(xx, yy).ravel()
    mats = np.zeros((x.size, 3, 3))
    mats[:, 0, 0] = x + y
    mats[:, 0, 1] = mats[:, 1, 0] = -x
    mats[:, 0, 2] = mats[:, 2, 0] = -y
    mats[:, 1, 1] = x
    mats[:, 2, 2] = y
    top = np.linalg.eigvalsh(mats)[:, -1]
    closed = lemma1_closed_form(x, y)
    return {
        "max_abs_diff": float(np.max(np.abs(top - closed))),
        "min_bound_residual": float(np.min(2 * x + y - top)),
        "points": int(x.size),
    }


def _random_pairs(rng, n: int, count: int) -> np.ndarray:
    """``count`` rows ``(i, j, k, l)`` with ``i != j``, ``k != l`` and ``{i,j} != {k,l}``."""
    def distinct(k):
        first = rng.integers(0, n, k)
        return np.stack([first, (first + rng.integers(1, n, k)) % n], axis=1)

    out = np.empty((count, 4), dtype=int)
    filled = 0
    while filled < count:
        ij, kl = distinct(count - filled), distinct(count - filled)
        same = np.sort(ij, axis=1) == np.sort(kl, axis=1)
        ok = ~np.all(same, axis=1)
        take = np.concatenate([ij[ok], kl[ok]], axis=1)
        out[filled:filled + len(take)] = take
        filled += len(take)
    return out


def lemma1_sweep(samples: int = 100_000, seed=0, n_max: int = 8) -> float:
    """Minimum Lemma 1 residual over random instances with ``3 <= n <= n_max``.

    Half of the unit vectors are dense Gaussian directions, half are
    supported on the (at most four) coordinates the index pairs touch, which
    is where equality lives.
    """
    rng = _rng(seed)
    sizes = np.arange(3, n_max + 1)
    per = np.full(sizes.size, samples // sizes.size)
    per[: samples - per.sum()] += 1
    worst = math.inf
    for n, count in zip(sizes, per):
        if count == 0:
            continue
        xy = np.sort(rng.uniform(0, 10, (count, 2)), axis=1)
        y, x = xy[:, 0], xy[:, 1]
        idx = _random_pairs(rng, n, count)
        eta = rng.standard_normal((count, n))
        sparse = rng.random(count) < 0.5
        mask = np.zeros((count, n), dtype=bool)
        rows = np.arange(count)[:, None]
        mask[rows, idx] = True
        eta[sparse] *= mask[sparse]
        eta /= np.linalg.norm(eta, axis=1, keepdims=True)
        r = np.arange(count)
        lhs = ((eta[r, idx[:, 0]] - eta[r, idx[:, 1]]) ** 2 * x
               + (eta[r, idx[:, 2]] - eta[r, idx[:, 3]]) ** 2 * y)
        worst = min(worst, float(np.min(2 * x + y - lhs)))
    return worst


# -- rotated pair profile ----------------------------------------------------

def case1_profile(alpha, x, y, d1, d2):
    """``d1 (x cos^2 a + y sin^2 a) + d2 (x sin^2 a + y cos^2 a)``."""
    c2, s2 = np.cos(alpha) ** 2, np.sin(alpha) ** 2
    return d1 * (x * c2 + y * s2) + d2 * (x * s2 + y * c2)


def case1_grid_excess(x, y, d1, d2, points: int = 101) -> float:
    """Grid maximum over ``[0, pi)`` minus the better endpoint (0 or pi/2); should be <= 0."""
    alpha = np.arange(points) * (np.pi / (points - 1))
    vals = case1_profile(alpha, x, y, d1, d2)
    ends = max(case1_profile(0.0, x, y, d1, d2), case1_profile(np.pi / 2, x, y, d1, d2))
    return float(np.max(vals) - ends)


def case1_sweep(samples: int = 10_000, seed=0, n: int = 5, points: int = 101) -> dict:
    """Endpoint maximality of the profile, and the resulting ``2x + y`` bound.

    ``d1, d2`` come from a random unit vector and two distinct index pairs,
    as in the setting where the profile arises.
    """
    rng = _rng(seed)
    xy = np.sort(rng.uniform(0, 10, (samples, 2)), axis=1)
    y, x = xy[:, 0], xy[:, 1]
    idx = _random_pairs(rng, n, samples)
    eta = rng.standard_normal((samples, n))
    eta /= np.linalg.norm(eta, axis=1, keepdims=True)
    r = np.arange(samples)
    d1 = (eta[r, idx[:, 0]] - eta[r, idx[:, 1]]) ** 2
    d2 = (eta[r, idx[:, 2]] - eta[r, idx[:, 3]]) ** 2
    alpha = np.arange(points) * (np.pi / (points - 1))
    vals = case1_profile(alpha[None, :], x[:, None], y[:, None], d1[:, None], d2[:, None])
    ends = np.maximum(case1_profile(0.0, x, y, d1, d2), case1_profile(np.pi / 2, x, y, d1, d2))
    return {
        "max_grid_excess": float(np.max(vals.max(axis=1) - ends)),
        "min_bound_residual": float(np.min(2 * x + y - vals.max(axis=1))),
    }


# -- single off-diagonal slot -----------------------------------------------

def case2_bound(b, c_, x, y, diag_b, diag_c, tol: float = CASE2_TOL) -> float:
    """``(2x + y) - 4 (b^2 + c_^2)`` for a feasible single-slot configuration.

    Feasibility: ``2 b c_ + <diag_b, diag_c> = 0``, ``2 b^2 + |diag_b|^2 = x``,
    ``2 c_^2 + |diag_c|^2 = y`` and ``x >= y`` (the off-diagonal entry is
    counted twice in the Frobenius norm).
    """
    db = np.asarray(diag_b, dtype=float)
    dc = np.asarray(diag_c, dtype=float)
    scale = 1.0 + abs(x) + abs(y)
    if x < y:
        raise DomainError(f"need x >= y, got x={x}, y={y}")
    if abs(2 * b * c_ + db @ dc) > tol * scale:
        raise DomainError("orthogonality constraint 2bc + <diag_b, diag_c> = 0 violated")
    if abs(2 * b * b + db @ db - x) > tol * scale or abs(2 * c_ * c_ + dc @ dc - y) > tol * scale:
        raise DomainError("norm constraints 2b^2 + |diag_b|^2 = x, 2c^2 + |diag_c|^2 = y violated")
    return 2 * x + y - 4 * (b * b + c_ * c_)


def case2_sample(rng, n: int):
    """A random feasible ``(b, c_, x, y, diag_b, diag_c)``.

    ``c_`` is solved from the orthogonality constraint; the roles are swapped
    if needed so that ``x >= y``.  Some draws shrink the diagonals to push
    the configuration toward the boundary.
    """
    db = rng.standard_normal(n) * rng.choice([1.0, 0.1, 1e-3])
    dc = rng.standard_normal(n) * rng.choice([1.0, 0.1, 1e-3])
    b = rng.standard_normal()
    if abs(b) < 1e-6:
        b = 1e-6
    c_ = -(db @ dc) / (2 * b)
    x = 2 * b * b + db @ db
    y = 2 * c_ * c_ + dc @ dc
    if x < y:
        b, c_, db, dc, x, y = c_, b, dc, db, y, x
    return b, c_, x, y, db, dc


def case2_sweep(samples: int = 10_000, seed=0, n_max: int = 6) -> float:
    rng = _rng(seed)
    worst = math.inf
    for _ in range(samples):
        n = int(rng.integers(2, n_max + 1))
        b, c_, x, y, db, dc = case2_sample(rng, n)
        scale = 2 * x + y
        worst = min(worst, case2_bound(b, c_, x, y, db, dc) / scale)
    return worst


def case3_residual(x: float, y: float) -> float:
    """No off-diagonal entries: the profile vanishes and the bound is ``2x + y >= 0``."""
    return 2 * x + y


# -- quartic reduction of P'(n,m) --------------------------------------------

def _unit_leader(A1_unit) -> np.ndarray:
    a = np.asarray(A1_unit, dtype=float)
    if abs(frobenius_norm_sq(a) - 1.0) > QUARTIC_TOL:
        raise DomainError("leading member must have unit Frobenius norm")
    return a


def reduction_a(A1_unit, rest: SymTuple) -> float:
    """``2 sum_i ||[A1', A_i]||^2 - 3 sum_i ||A_i||^2`` over the remaining members."""
    a1 = _unit_leader(A1_unit)
    if a1.shape != (rest.n, rest.n):
        raise InputError("leading member and remaining members differ in size")
    comm = sum(frobenius_norm_sq(commutator(a1, ai)) for ai in rest)
    return 2.0 * comm - 3.0 * float(member_norms_sq(rest).sum())


def reduction_constant(rest: SymTuple) -> float:
    """The ``t``-independent part of the quartic, which is P'(n, m-1) for ``rest``."""
    norms = member_norms_sq(rest)
    s = float(norms.sum())
    c = float(pair_commutator_norms_sq(rest).sum()) / 2.0
    return 1.5 * s * s - float(np.sum(norms * norms)) - 2.0 * c


def reduction_quartic(t: float, A1_unit, rest: SymTuple) -> float:
    """``t^4 / 2 - a t^2 + const``: the P' margin of ``(t A1', A_2, ..., A_m)``."""
    a = reduction_a(A1_unit, rest)
    return 0.5 * t ** 4 - a * t * t + reduction_constant(rest)


def assemble(t: float, A1_unit, rest: SymTuple) -> SymTuple:
    return SymTuple(np.concatenate([t * np.asarray(A1_unit, dtype=float)[None], rest.mats]))


def quartic_sweep(samples: int = 1000, seed=0, n_max: int = 5, m_max: int = 5) -> dict:
    """Quartic vs direct P' margin, the ``a <= sum ||A_i||^2`` bound, and the minimizer.

    Returns the worst relative disagreement, the largest ``a - sum ||A_i||^2``
    (should be <= 0), and the worst amount by which a ``t``-grid on ``[0, 3]``
    undercuts ``min(q(0), q(sqrt(a)))``.
    """
    rng = _rng(seed)
    worst_rel = 0.0
    worst_a = -math.inf
    worst_min = -math.inf
    grid = np.linspace(0.0, 3.0, 31)
    for _ in range(samples):
        n = int(rng.integers(2, n_max + 1))
        m = int(rng.integers(2, m_max + 1))
        g = rng.standard_normal((m, n, n))
        g = 0.5 * (g + np.swapaxes(g, 1, 2))
        a1 = g[0] / np.sqrt(frobenius_norm_sq(g[0]))
        rest = SymTuple(g[1:] * rng.uniform(0.1, 2.0))
        t = rng.uniform(0.0, 3.0)
        q = reduction_quartic(t, a1, rest)
        direct = pprime_residual(assemble(t, a1, rest)).residual
        s = t * t + float(member_norms_sq(rest).sum())
        worst_rel = max(worst_rel, abs(q - direct) / (s * s))
        a = reduction_a(a1, rest)
        const = reduction_constant(rest)
        worst_a = max(worst_a, a - float(member_norms_sq(rest).sum()))
        vals = 0.5 * grid ** 4 - a * grid ** 2 + const
        floor = const if a <= 0 else min(const, const - 0.5 * a * a)
        worst_min = max(worst_min, floor - float(vals.min()))
    return {"max_rel_diff": worst_rel, "max_a_excess": worst_a, "max_grid_undercut": worst_min}


# -- suite -------------------------------------------------------------------

@dataclass(frozen=True)
class OracleOutcome:
    name: str
    value: float
    tol: float
    passed: bool

    def to_dict(self) -> dict:
        return {"name": self.name, "value": self.value, "tol": self.tol, "passed": self.passed}


def run_suite(samples: int = 10_000, seed: int = 0) -> list[OracleOutcome]:
    """All oracle sweeps; ``value`` is a worst-case residual that must be ``>= -tol``."""
    out = []

    def add(name, value, tol):
        out.append(OracleOutcome(name, float(value), tol, bool(value >= -tol)))

    ss = np.random.SeedSequence(seed).spawn(4)
    add("lemma1_random", lemma1_sweep(samples, np.random.default_rng(ss[0])), LEMMA1_TOL)
    grid = lemma1_eigen_grid()
    add("lemma1_eigen_closed_form", -grid["max_abs_diff"], 1e-10)
    add("lemma1_eigen_bound", grid["min_bound_residual"], 1e-12)
    c1 = case1_sweep(samples, np.random.default_rng(ss[1]))
    add("case1_endpoint_max", -c1["max_grid_excess"], 1e-12)
    add("case1_bound", c1["min_bound_residual"], 1e-12)
    add("case2_bound", case2_sweep(samples, np.random.default_rng(ss[2])), CASE2_TOL)
    add("case3_bound", case3_residual(0.0, 0.0), 0.0)
    q = quartic_sweep(max(1, samples // 10), np.random.default_rng(ss[3]))
    add("quartic_identity", -q["max_rel_diff"], QUARTIC_TOL)
    add("reduction_a_bound", -q["max_a_excess"], 1e-12)
    add("quartic_minimizer", -q["max_grid_undercut"], 1e-9)
    return out
