"""Curvature invariants of a submanifold point from its second fundamental form.

The inputs are the coefficients ``h[r, i, j]`` of the second fundamental
form in orthonormal tangent/normal frames and the curvature ``c`` of the
ambient space form.  Everything here is evaluated directly from the
coefficient formulas (index sums), deliberately without going through
``matrix_core``, so the two routes can cross-check one another.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .matrix_core import DomainError, InputError, Inequality, SymTuple, make_report


@dataclass(frozen=True, eq=False)
class SecondFundamentalForm:
    h: np.ndarray
    c: float = 0.0

    def __post_init__(self):
        t = SymTuple(self.h)  # shape and symmetry validation
        c = float(self.c)
        if not np.isfinite(c):
            raise InputError("ambient curvature c must be finite")
        object.__setattr__(self, "h", t.mats)
        object.__setattr__(self, "c", c)

    @property
    def n(self) -> int:
        return self.h.shape[1]

    @property
    def m(self) -> int:
        return self.h.shape[0]

    def as_tuple(self) -> SymTuple:
        return SymTuple(self.h)


@dataclass(frozen=True)
class CurvatureSummary:
    rho: float
    rho_perp: float
    mean_h_sq: float
    c: float

    def to_dict(self) -> dict:
        return {"rho": self.rho, "rho_perp": self.rho_perp,
                "mean_h_sq": self.mean_h_sq, "c": self.c}


def _require_n2(F: SecondFundamentalForm):
    if F.n < 2:
        raise DomainError("curvature invariants need tangent dimension n >= 2")


def mean_curvature_sq(F: SecondFundamentalForm) -> float:
    """``|H|^2 = sum_r ((1/n) tr h^r)^2``."""
    traces = np.trace(F.h, axis1=1, axis2=2)
    return float(np.sum((traces / F.n) ** 2))


def gauss_rho(F: SecondFundamentalForm) -> float:
    """Normalized scalar curvature.

    Sectional curvatures come from the Gauss equation of a submanifold of a
    space form, ``R(e_i,e_j,e_j,e_i) = c + sum_r (h_ii^r h_jj^r - (h_ij^r)^2)``.
    """
    _require_n2(F)
    n = F.n
    iu, ju = np.triu_indices(n, 1)
    diag = np.diagonal(F.h, axis1=1, axis2=2)
    sectional = F.c + np.sum(diag[:, iu] * diag[:, ju] - F.h[:, iu, ju] ** 2, axis=0)
    return float(2.0 / (n * (n - 1)) * np.sum(sectional))


def normal_curvature_components(F: SecondFundamentalForm) -> np.ndarray:
    """``R[r, s, i, j] = sum_k (h_ik^r h_jk^s - h_ik^s h_jk^r)``."""
    prod = np.einsum("rik,sjk->rsij", F.h, F.h)
    return prod - np.swapaxes(prod, 0, 1)


def _normal_sum_sq(F: SecondFundamentalForm) -> float:
    # sum over r<s and i<j of the squared components
    if F.m < 2:
        return 0.0
    comp = normal_curvature_components(F)
    r, s = np.triu_indices(F.m, 1)
    i, j = np.triu_indices(F.n, 1)
    block = comp[r, s][:, i, j]
    return float(np.sum(block * block))


def normal_rho(F: SecondFundamentalForm) -> float:
    """Normalized normal scalar curvature; zero when ``m == 1``."""
    _require_n2(F)
    n = F.n
    return 2.0 / (n * (n - 1)) * float(np.sqrt(_normal_sum_sq(F)))


def summarize(F: SecondFundamentalForm) -> CurvatureSummary:
    return CurvatureSummary(rho=gauss_rho(F), rho_perp=normal_rho(F),
                            mean_h_sq=mean_curvature_sq(F), c=F.c)


def curvature_scale(F: SecondFundamentalForm) -> float:
    return 1.0 + abs(F.c) + mean_curvature_sq(F)


def conjecture1_residual(F: SecondFundamentalForm, tol: float = 1e-10):
    """``|H|^2 + c - rho - rho_perp``; nonnegative when the conjecture holds."""
    _require_n2(F)
    lhs = mean_curvature_sq(F) + F.c
    rhs = gauss_rho(F) + normal_rho(F)
    return make_report(Inequality.CONJECTURE1, lhs, rhs, curvature_scale(F), tol)


def eq1a_sides(F: SecondFundamentalForm) -> tuple[float, float]:
    _require_n2(F)
    n = F.n
    iu, ju = np.triu_indices(n, 1)
    diag = np.diagonal(F.h, axis1=1, axis2=2)
    lhs = np.sum((diag[:, iu] - diag[:, ju]) ** 2) + 2 * n * np.sum(F.h[:, iu, ju] ** 2)
    rhs = 2 * n * np.sqrt(_normal_sum_sq(F))
    return float(lhs), float(rhs)


def eq1a_residual(F: SecondFundamentalForm, tol: float = 1e-10):
    """Coefficient form of the conjecture.

    The residual equals ``n^2 (n-1)`` times the ``conjecture1_residual``
    residual, so the holds-scale is multiplied by the same factor.
    """
    lhs, rhs = eq1a_sides(F)
    n = F.n
    return make_report(Inequality.EQ1A, lhs, rhs, n * n * (n - 1) * curvature_scale(F), tol)


def _sign(report) -> int:
    if abs(report.residual) < report.tol * report.scale:
        return 0
    return 1 if report.residual > 0 else -1


def sign_agreement(F: SecondFundamentalForm, tol: float = 1e-10) -> bool:
    """Whether both forms of the conjecture give the same verdict (zero band ``tol * scale``)."""
    return _sign(conjecture1_residual(F, tol)) == _sign(eq1a_residual(F, tol))
