"""Numerical toolkit for the DDVV inequality and its pinched variant."""
from .curvature import (CurvatureSummary, SecondFundamentalForm, conjecture1_residual,
                        eq1a_residual, gauss_rho, mean_curvature_sq, normal_rho)
from .matrix_core import (DomainError, InequalityReport, InputError, SymTuple, commutator,
                          commutator_energy, ddvv_residual, frobenius_norm_sq,
                          normalized_lambda, pprime_residual, total_norm, traceless_part)
from .search import (SearchOptions, SearchResult, euclidean_gradient, maximize_lambda,
                     stationarity_residuals)
from .symmetry import OrthogonalPair, act, canonicalize, random_orthogonal

__version__ = "0.1.0"
