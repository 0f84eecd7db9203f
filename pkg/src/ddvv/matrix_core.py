"""Symmetric-matrix tuples and the core DDVV functionals.

For a tuple ``T = (A_1, ..., A_m)`` of real symmetric ``n x n`` matrices we use

* ``S(T) = sum_r ||A_r||^2``                      (total squared Frobenius norm)
* ``C(T) = sum_{r<s} ||[A_r, A_s]||^2``          (commutator energy)

The DDVV inequality P(n,m) reads ``S^2 >= 2C`` and the pinched form P'(n,m)
reads ``(3/2) S^2 - sum_r ||A_r||^4 >= 2C``.

The vectorised helpers (``energy``, ``total``, ...) accept stacks of shape
``(..., m, n, n)`` so random sweeps can be evaluated in batches.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator, Union

import numpy as np

SYMMETRY_REJECT = 1e-8
DEFAULT_TOL = 1e-9


class InputError(ValueError):
    """Malformed input data (wrong shape, non-finite, asymmetric)."""


class DomainError(ValueError):
    """An operation was called outside its mathematical domain."""


def sym_matrix(entries) -> np.ndarray:
    """Validate and symmetrize a square matrix; the result is read-only.

    Asymmetry larger than ``1e-8 * (1 + ||M||)`` is rejected rather than
    silently averaged away.
    """
    m = np.array(entries, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise InputError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise InputError("matrix has non-finite entries")
    asym = np.linalg.norm(m - m.T)
    if asym > SYMMETRY_REJECT * (1.0 + np.linalg.norm(m)):
        raise InputError(f"matrix is not symmetric (||M - M^T|| = {asym:.3g})")
    m = 0.5 * (m + m.T)
    m.setflags(write=False)
    return m


@dataclass(frozen=True, eq=False)
class SymTuple:
    """An ordered tuple of ``m`` symmetric ``n x n`` matrices, stored as ``(m, n, n)``."""

    mats: np.ndarray

    def __post_init__(self):
        arr = np.array(self.mats, dtype=float)
        if arr.ndim == 2:
            arr = arr[None]
        if arr.ndim != 3 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise InputError(f"expected m >= 1 matrices of size n x n, got shape {arr.shape}")
        if arr.shape[1] != arr.shape[2]:
            raise InputError(f"matrices must be square, got {arr.shape[1]}x{arr.shape[2]}")
        arr = np.stack([sym_matrix(a) for a in arr])
        arr.setflags(write=False)
        object.__setattr__(self, "mats", arr)

    @property
    def n(self) -> int:
        return self.mats.shape[1]

    @property
    def m(self) -> int:
        return self.mats.shape[0]

    def __len__(self) -> int:
        return self.m

    def __iter__(self) -> Iterator[np.ndarray]:
        return iter(self.mats)

    def __getitem__(self, r: int) -> np.ndarray:
        return self.mats[r]

    def scaled(self, t: float) -> "SymTuple":
        return SymTuple(t * self.mats)

    @classmethod
    def zeros(cls, n: int, m: int) -> "SymTuple":
        return cls(np.zeros((m, n, n)))

    def __repr__(self) -> str:
        return f"SymTuple(n={self.n}, m={self.m})"


TupleLike = Union[SymTuple, np.ndarray]


def _stack(T: TupleLike) -> np.ndarray:
    return T.mats if isinstance(T, SymTuple) else np.asarray(T, dtype=float)


class Inequality(str, enum.Enum):
    P = "P"
    PPRIME = "Pprime"
    CONJECTURE1 = "Conjecture1"
    EQ1A = "Eq1a"


@dataclass(frozen=True)
class InequalityReport:
    """One evaluated inequality; ``residual >= 0`` means it holds.

    ``holds`` is ``residual >= -tol * scale``; the scale is chosen by the
    producing operation so that the test is homogeneous.
    """

    name: Inequality
    lhs: float
    rhs: float
    residual: float
    holds: bool
    tol: float
    scale: float

    def to_dict(self) -> dict:
        return {
            "name": self.name.value,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "residual": self.residual,
            "holds": self.holds,
            "tol": self.tol,
            "scale": self.scale,
        }


def make_report(name, lhs, rhs, scale, tol=DEFAULT_TOL) -> InequalityReport:
    lhs, rhs, scale = float(lhs), float(rhs), float(scale)
    residual = lhs - rhs
    return InequalityReport(
        name=Inequality(name),
        lhs=lhs,
        rhs=rhs,
        residual=residual,
        holds=bool(residual >= -tol * scale),
        tol=tol,
        scale=scale,
    )


# -- single matrices --------------------------------------------------------

def frobenius_norm_sq(M) -> float:
    M = np.asarray(M, dtype=float)
    return float(np.sum(M * M))


def commutator(X, Y) -> np.ndarray:
    """``XY - YX``; antisymmetric when both arguments are symmetric."""
    X = np.asarray(X, dtype=float)
    Y = np.asarray(Y, dtype=float)
    if X.shape != Y.shape or X.ndim < 2 or X.shape[-1] != X.shape[-2]:
        raise InputError(f"dimension mismatch: {X.shape} vs {Y.shape}")
    return X @ Y - Y @ X


def traceless_part(M) -> np.ndarray:
    M = np.asarray(M, dtype=float)
    n = M.shape[-1]
    return M - (np.trace(M) / n) * np.eye(n)


# -- vectorised functionals on (..., m, n, n) stacks -------------------------

def member_norms_sq(T: TupleLike) -> np.ndarray:
    """``||A_r||^2`` for each member, shape ``(..., m)``."""
    a = _stack(T)
    return np.sum(a * a, axis=(-2, -1))


def total(T: TupleLike) -> np.ndarray:
    return member_norms_sq(T).sum(axis=-1)


def pair_commutator_norms_sq(T: TupleLike) -> np.ndarray:
    """``||[A_r, A_s]||^2`` as a symmetric ``(..., m, m)`` array with zero diagonal."""
    a = _stack(T)
    m = a.shape[-3]
    out = np.zeros(a.shape[:-3] + (m, m))
    if m < 2:
        return out
    r, s = np.triu_indices(m, 1)
    ar, as_ = a[..., r, :, :], a[..., s, :, :]
    k = ar @ as_ - as_ @ ar
    vals = np.sum(k * k, axis=(-2, -1))
    out[..., r, s] = vals
    out[..., s, r] = vals
    return out


def energy(T: TupleLike) -> np.ndarray:
    a = _stack(T)
    m = a.shape[-3]
    if m < 2:
        return np.zeros(a.shape[:-3])
    r, s = np.triu_indices(m, 1)
    ar, as_ = a[..., r, :, :], a[..., s, :, :]
    k = ar @ as_ - as_ @ ar
    return np.sum(k * k, axis=(-3, -2, -1))


def ddvv_margin(T: TupleLike) -> np.ndarray:
    """``S^2 - 2C``, batched."""
    s = total(T)
    return s * s - 2.0 * energy(T)


def pprime_margin(T: TupleLike) -> np.ndarray:
    """``(3/2) S^2 - sum ||A_r||^4 - 2C``, batched."""
    norms = member_norms_sq(T)
    s = norms.sum(axis=-1)
    return 1.5 * s * s - np.sum(norms * norms, axis=-1) - 2.0 * energy(T)


# -- scalar operations on a single tuple -------------------------------------

def commutator_energy(T: TupleLike) -> float:
    return float(energy(T))


def total_norm(T: TupleLike) -> float:
    return float(total(T))


def ddvv_residual(T: TupleLike, tol: float = DEFAULT_TOL) -> InequalityReport:
    """P(n,m): ``S^2 >= 2C``; scale ``S^2``."""
    s = total_norm(T)
    return make_report(Inequality.P, s * s, 2.0 * commutator_energy(T), s * s, tol)


def pprime_residual(T: TupleLike, tol: float = DEFAULT_TOL) -> InequalityReport:
    """P'(n,m): ``(3/2) S^2 - sum ||A_r||^4 >= 2C``; scale ``S^2``."""
    norms = member_norms_sq(T)
    s = float(norms.sum())
    lhs = 1.5 * s * s - float(np.sum(norms * norms))
    return make_report(Inequality.PPRIME, lhs, 2.0 * commutator_energy(T), s * s, tol)


def normalized_lambda(T: TupleLike) -> float:
    """Scale-invariant ratio ``C / S^2``."""
    s = total_norm(T)
    if s == 0.0:
        raise DomainError("undefined ratio: zero tuple")
    return commutator_energy(T) / (s * s)


def random_tuples(n: int, m: int, count: int, rng: np.random.Generator,
                  traceless: bool = False) -> np.ndarray:
    """Symmetrized standard Gaussian tuples, shape ``(count, m, n, n)``."""
    g = rng.standard_normal((count, m, n, n))
    g = 0.5 * (g + np.swapaxes(g, -1, -2))
    if traceless:
        tr = np.trace(g, axis1=-2, axis2=-1) / n
        g = g - tr[..., None, None] * np.eye(n)
    return g
