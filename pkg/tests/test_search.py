import numpy as np
import pytest

from ddvv.matrix_core import DomainError, SymTuple, commutator, commutator_energy, energy, total_norm
from ddvv.search import (SearchOptions, ascend, euclidean_gradient, initial_tuple,
                         maximize_lambda, stationarity_residuals)
from ddvv.symmetry import act, random_pair

from conftest import A_PAIR, B_PAIR, random_sym


def fd_gradient(a, h=1e-5):
    """Central differences of C in every raw entry."""
    grad = np.zeros_like(a)
    for idx in np.ndindex(a.shape):
        up, down = a.copy(), a.copy()
        up[idx] += h
        down[idx] -= h
        grad[idx] = (energy(up) - energy(down)) / (2 * h)
    return grad


def test_gradient_equality_pair(equality_pair):
    g = euclidean_gradient(equality_pair)
    np.testing.assert_allclose(g[0], [[0, 8], [8, 0]])
    np.testing.assert_allclose(g[0], 8 * A_PAIR)
    np.testing.assert_allclose(g[1], 8 * B_PAIR)


def test_gradient_commuting_and_single(rng):
    diag = SymTuple([np.diag(rng.normal(size=3)) for _ in range(3)])
    np.testing.assert_array_equal(euclidean_gradient(diag), 0)
    np.testing.assert_array_equal(euclidean_gradient(SymTuple([random_sym(rng, 3)])), 0)


def test_gradient_symmetric(rng):
    g = euclidean_gradient(SymTuple(random_sym(rng, 4, 3)))
    np.testing.assert_allclose(g, np.swapaxes(g, 1, 2), atol=1e-12)


def test_gradient_finite_differences(rng):
    for _ in range(30):
        n, m = int(rng.integers(1, 6)), int(rng.integers(1, 5))
        a = random_sym(rng, n, m)
        g = euclidean_gradient(a)
        fd = fd_gradient(a)
        assert np.all(np.abs(fd - g) <= 1e-5 * (1 + np.abs(g)))


def test_gradient_directional(rng):
    a = random_sym(rng, 3, 3)
    v = random_sym(rng, 3, 3)
    h = 1e-5
    directional = (energy(a + h * v) - energy(a - h * v)) / (2 * h)
    assert np.sum(euclidean_gradient(a) * v) == pytest.approx(directional, rel=1e-7)


def test_stationarity_examples(equality_pair, rng):
    np.testing.assert_allclose(stationarity_residuals(equality_pair.scaled(0.5)), [0, 0], atol=1e-15)
    diag = np.array([np.diag(rng.normal(size=3)) for _ in range(3)])
    diag /= np.sqrt(np.sum(diag ** 2))
    np.testing.assert_array_equal(stationarity_residuals(diag), 0)
    generic = random_sym(rng, 4, 3)
    generic /= np.sqrt(np.sum(generic ** 2))
    assert np.max(np.abs(stationarity_residuals(generic))) > 1e-3
    with pytest.raises(DomainError):
        stationarity_residuals(equality_pair)


def test_stationarity_sum_rule(rng):
    for _ in range(100):
        a = random_sym(rng, int(rng.integers(1, 6)), int(rng.integers(1, 6)))
        a /= np.sqrt(np.sum(a ** 2))
        assert abs(np.sum(stationarity_residuals(a))) <= 1e-10


def test_single_matrix_search():
    res = maximize_lambda(2, 1, SearchOptions(restarts=3))
    assert res.lambda_ == 0 and res.converged
    assert commutator_energy(res.tuple) == 0


def test_search_2x2():
    res = maximize_lambda(2, 2, SearchOptions())
    assert res.lambda_ == pytest.approx(0.5, abs=1e-6)
    assert max(abs(x) for x in res.stationarity) < 1e-6
    assert res.converged
    assert total_norm(res.tuple) == pytest.approx(1, abs=1e-10)
    assert res.lambda_ == pytest.approx(commutator_energy(res.tuple), abs=1e-10)


def test_search_upper_bound_4x3():
    res = maximize_lambda(4, 3, SearchOptions(restarts=5))
    assert 0 <= res.lambda_ <= 0.5 + 1e-6


def test_monotone_trace(rng):
    for k in range(5):
        res = ascend(initial_tuple(4, 3, 9, k), SearchOptions())
        assert np.all(np.diff(res.trace) >= -1e-12)
        assert len(res.trace) == res.iterations + 1


def test_equivariance():
    opts = SearchOptions()
    for n, m in [(2, 2), (3, 3)]:
        t0 = initial_tuple(n, m, 3, 0)
        g = random_pair(n, m, 17)
        base = ascend(t0, opts)
        moved = ascend(act(SymTuple(t0), g), opts)
        assert moved.lambda_ == pytest.approx(base.lambda_, abs=1e-6)


def test_lemma2_specialization_m3():
    opts = SearchOptions(restarts=5)
    for n in (3, 4):
        res = maximize_lambda(n, 3, opts)
        assert res.converged
        a = res.tuple.mats
        order = np.argsort(-np.sum(a ** 2, axis=(1, 2)), kind="stable")
        A, B, C = a[order]
        lhs = 2 * res.lambda_ * np.sum(A ** 2)
        rhs = np.sum(commutator(A, B) ** 2) + np.sum(commutator(A, C) ** 2)
        assert abs(lhs - rhs) <= opts.tol_stationarity


def test_deterministic_and_parallel_agree():
    opts = SearchOptions(restarts=4, seed=12)
    r1 = maximize_lambda(3, 2, opts)
    r2 = maximize_lambda(3, 2, opts)
    r3 = maximize_lambda(3, 2, opts, workers=2)
    np.testing.assert_array_equal(r1.tuple.mats, r2.tuple.mats)
    np.testing.assert_array_equal(r1.tuple.mats, r3.tuple.mats)
    assert r1.restart_index == r3.restart_index


def test_stall_reports_honestly():
    # a cap on iterations leaves a non-critical point marked unconverged
    res = ascend(initial_tuple(4, 3, 1, 0), SearchOptions(max_iters=1))
    assert res.iterations == 1
    assert not res.converged


def test_options_validation():
    with pytest.raises(ValueError):
        SearchOptions(step_init=0)
    with pytest.raises(ValueError):
        SearchOptions(restarts=0)
    with pytest.raises(ValueError):
        SearchOptions(seed=-1)
    with pytest.raises(DomainError):
        ascend(np.zeros((2, 2, 2)))
