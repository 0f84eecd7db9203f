"""The O(n) x O(m) action on symmetric-matrix tuples.

``Q in O(n)`` conjugates every member, ``Q1 in O(m)`` mixes the members
linearly: ``B_r = sum_s Q1[r, s] * Q A_s Q^T``.  Both ``S`` and ``C`` are
invariant, which is what lets the extremal problem be reduced to tuples
that are Frobenius-orthogonal with a diagonal leading member.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .matrix_core import DomainError, InputError, SymTuple, total_norm

ORTHO_TOL = 1e-10
_ZERO = 1e-12


def _check_orthogonal(q: np.ndarray, label: str) -> np.ndarray:
    q = np.array(q, dtype=float)
    if q.ndim != 2 or q.shape[0] != q.shape[1]:
        raise InputError(f"{label} must be square, got shape {q.shape}")
    err = np.max(np.abs(q.T @ q - np.eye(q.shape[0])))
    if err > ORTHO_TOL:
        raise InputError(f"{label} is not orthogonal (max |Q^T Q - I| = {err:.3g})")
    q.setflags(write=False)
    return q


@dataclass(frozen=True, eq=False)
class OrthogonalPair:
    q_space: np.ndarray
    q_normal: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "q_space", _check_orthogonal(self.q_space, "q_space"))
        object.__setattr__(self, "q_normal", _check_orthogonal(self.q_normal, "q_normal"))

    @classmethod
    def identity(cls, n: int, m: int) -> "OrthogonalPair":
        return cls(np.eye(n), np.eye(m))

    def compose(self, first: "OrthogonalPair") -> "OrthogonalPair":
        """``self o first``: acting by the result equals acting by ``first`` then ``self``."""
        return OrthogonalPair(self.q_space @ first.q_space, self.q_normal @ first.q_normal)


def act(T: SymTuple, g: OrthogonalPair) -> SymTuple:
    n, m = T.n, T.m
    if g.q_space.shape != (n, n) or g.q_normal.shape != (m, m):
        raise InputError(
            f"group element of sizes {g.q_space.shape[0]}, {g.q_normal.shape[0]} "
            f"does not match tuple n={n}, m={m}")
    q = g.q_space
    conj = q @ T.mats @ q.T
    mixed = np.einsum("rs,sij->rij", g.q_normal, conj)
    # symmetrize away rounding before SymTuple validation
    return SymTuple(0.5 * (mixed + np.swapaxes(mixed, 1, 2)))


def random_orthogonal(k: int, seed) -> np.ndarray:
    """Haar-distributed ``k x k`` orthogonal matrix.

    QR of a standard Gaussian matrix, with columns flipped so that R has a
    positive diagonal (without the flip the law is not Haar).
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    z = rng.standard_normal((k, k))
    q, r = np.linalg.qr(z)
    d = np.sign(np.diag(r))
    d[d == 0] = 1.0
    return q * d


def random_pair(n: int, m: int, seed) -> OrthogonalPair:
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    return OrthogonalPair(random_orthogonal(n, rng), random_orthogonal(m, rng))


def _fix_signs(vecs: np.ndarray) -> np.ndarray:
    """Make the first non-negligible entry of each column positive."""
    vecs = vecs.copy()
    for col in range(vecs.shape[1]):
        v = vecs[:, col]
        nz = np.flatnonzero(np.abs(v) > _ZERO)
        if nz.size and v[nz[0]] < 0:
            vecs[:, col] = -v
    return vecs


def _descending_eigh(sym: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    w, v = np.linalg.eigh(sym)
    order = np.argsort(-w, kind="stable")
    return w[order], _fix_signs(v[:, order])


def canonical_frame(T: SymTuple) -> OrthogonalPair:
    """Group element taking ``T`` to its canonical representative.

    The normal factor rotates by the eigenvectors of the Frobenius Gram matrix
    (largest norm first); the space factor then diagonalizes the leading
    member with nonincreasing diagonal.
    """
    if total_norm(T) == 0.0:
        raise DomainError("cannot canonicalize the zero tuple")
    flat = T.mats.reshape(T.m, -1)
    _, v = _descending_eigh(flat @ flat.T)
    q_normal = v.T
    lead = np.einsum("s,sij->ij", q_normal[0], T.mats)
    _, u = _descending_eigh(0.5 * (lead + lead.T))
    return OrthogonalPair(u.T, q_normal)


def canonicalize(T: SymTuple) -> SymTuple:
    return act(T, canonical_frame(T))


def gram(T: SymTuple) -> np.ndarray:
    flat = T.mats.reshape(T.m, -1)
    return flat @ flat.T
