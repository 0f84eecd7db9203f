import numpy as np
import pytest

from ddvv.matrix_core import DomainError, InputError, SymTuple, commutator_energy, total_norm
from ddvv.symmetry import (OrthogonalPair, act, canonical_frame, canonicalize, gram,
                           random_orthogonal, random_pair)

from conftest import random_sym


def test_identity_action(equality_pair):
    out = act(equality_pair, OrthogonalPair.identity(2, 2))
    np.testing.assert_array_equal(out.mats, equality_pair.mats)


def test_swap_action(rng):
    T = SymTuple(random_sym(rng, 3, 3))
    swap = np.array([[0.0, 1, 0], [1, 0, 0], [0, 0, 1]])
    out = act(T, OrthogonalPair(np.eye(3), swap))
    np.testing.assert_allclose(out.mats, T.mats[[1, 0, 2]], atol=1e-15)


def test_equality_pair_invariants(equality_pair):
    for seed in range(10):
        out = act(equality_pair, random_pair(2, 2, seed))
        assert commutator_energy(out) == pytest.approx(8, rel=1e-12)
        assert total_norm(out) == pytest.approx(4, rel=1e-12)


def test_random_orthogonal():
    assert random_orthogonal(1, 3)[0, 0] in (1.0, -1.0)
    np.testing.assert_array_equal(random_orthogonal(4, 11), random_orthogonal(4, 11))
    for seed in range(20):
        q = random_orthogonal(5, seed)
        assert np.max(np.abs(q.T @ q - np.eye(5))) < 1e-10


def test_random_orthogonal_is_haar_like():
    # first column of a Haar matrix is uniform on the sphere: E[q_00^2] = 1/k
    rng = np.random.default_rng(5)
    vals = [random_orthogonal(3, rng)[0, 0] for _ in range(4000)]
    assert np.mean(vals) == pytest.approx(0, abs=0.03)
    assert np.mean(np.square(vals)) == pytest.approx(1 / 3, abs=0.02)
    dets = [np.linalg.det(random_orthogonal(3, rng)) for _ in range(2000)]
    assert np.mean(np.array(dets) > 0) == pytest.approx(0.5, abs=0.05)


def test_act_errors(rng):
    T = SymTuple(random_sym(rng, 3, 2))
    with pytest.raises(InputError):
        act(T, OrthogonalPair.identity(2, 2))
    with pytest.raises(InputError, match="not orthogonal"):
        OrthogonalPair(np.eye(3) * 1.1, np.eye(2))


def test_group_invariance(rng):
    for _ in range(200):
        n, m = int(rng.integers(1, 6)), int(rng.integers(1, 5))
        T = SymTuple(random_sym(rng, n, m))
        out = act(T, random_pair(n, m, rng))
        c, s = commutator_energy(T), total_norm(T)
        assert abs(commutator_energy(out) - c) <= 1e-9 * (1 + c)
        assert abs(total_norm(out) - s) <= 1e-10 * (1 + s)


def test_action_composition(rng):
    for _ in range(50):
        n, m = int(rng.integers(1, 5)), int(rng.integers(1, 5))
        T = SymTuple(random_sym(rng, n, m))
        g1, g2 = random_pair(n, m, rng), random_pair(n, m, rng)
        lhs = act(act(T, g1), g2)
        rhs = act(T, g2.compose(g1))
        np.testing.assert_allclose(lhs.mats, rhs.mats, atol=1e-9)


def check_canonical(T, out):
    s = total_norm(T)
    g = gram(out)
    off = g - np.diag(np.diag(g))
    assert np.max(np.abs(off)) <= 1e-9 * s
    norms = np.diag(g)
    assert np.all(np.diff(norms) <= 1e-12 * s)
    lead = out.mats[0]
    assert np.max(np.abs(lead - np.diag(np.diag(lead)))) <= 1e-9 * np.sqrt(s)
    assert np.all(np.diff(np.diag(lead)) <= 1e-12 * np.sqrt(s))
    assert total_norm(out) == pytest.approx(s, rel=1e-9)
    assert commutator_energy(out) == pytest.approx(commutator_energy(T), rel=1e-9, abs=1e-12)


def test_canonicalize_random(rng):
    for _ in range(100):
        n, m = int(rng.integers(1, 6)), int(rng.integers(1, 5))
        T = SymTuple(random_sym(rng, n, m))
        check_canonical(T, canonicalize(T))


def test_canonicalize_premixed_pair(equality_pair):
    mixed = act(equality_pair, OrthogonalPair(np.eye(2), random_orthogonal(2, 4)))
    check_canonical(mixed, canonicalize(mixed))


def test_canonicalize_idempotent(rng):
    T = SymTuple(random_sym(rng, 4, 3))
    once = canonicalize(T)
    twice = canonicalize(once)
    np.testing.assert_allclose(twice.mats, once.mats, atol=1e-9)


def test_canonicalize_zero_member_last(rng):
    mats = random_sym(rng, 3, 3)
    mats[0] = 0
    out = canonicalize(SymTuple(mats))
    assert np.sum(out.mats[-1] ** 2) < 1e-20


def test_canonicalize_zero_tuple():
    with pytest.raises(DomainError):
        canonicalize(SymTuple.zeros(2, 2))


def test_frame_is_group_element(rng):
    T = SymTuple(random_sym(rng, 4, 3))
    g = canonical_frame(T)
    assert isinstance(g, OrthogonalPair)
