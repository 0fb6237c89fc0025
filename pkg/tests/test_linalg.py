import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from deltafilt import linalg as la
from deltafilt.oracles import brute_rank_gf2


def matrices(p, max_rows=5, max_cols=5):
    return st.tuples(st.integers(0, max_rows), st.integers(0, max_cols)).flatmap(
        lambda s: st.lists(st.integers(0, p - 1), min_size=s[0] * s[1], max_size=s[0] * s[1]).map(
            lambda xs: np.array(xs, dtype=np.int64).reshape(s)))


def test_prime_field_rejects_composites():
    with pytest.raises(ValueError):
        la.PrimeField(4)
    with pytest.raises(ValueError):
        la.PrimeField(1)
    assert la.PrimeField(5).inv(2) == 3


def test_rref_identity_and_zero():
    r, k, piv = la.rref(la.identity(2), 2)
    assert np.array_equal(r, np.eye(2)) and k == 2 and piv == [0, 1]
    r, k, piv = la.rref(la.zeros(3, 3), 5)
    assert not r.any() and k == 0 and piv == []


def test_rref_rank_one_gf2():
    m = np.array([[1, 1], [1, 1]])
    r, k, piv = la.rref(m, 2)
    assert r.tolist() == [[1, 1], [0, 0]]
    assert k == 1 == brute_rank_gf2(m)


def test_kernel_examples():
    assert la.kernel(la.identity(3), 3).shape[0] == 0
    assert la.kernel(la.zeros(1, 2), 2).shape[0] == 2
    # enumerate GF(2)^2 for the kernel of [[1, 1]]
    m = np.array([[1, 1]])
    sols = [v for v in la.iter_vectors(2, 2) if not np.mod(m @ v, 2).any()]
    assert la.Subspace.span(la.kernel(m, 2), 2, 2) == la.Subspace.span(np.array(sols), 2, 2)
    assert la.kernel(m, 2).tolist() == [[1, 1]]


def test_solve_examples():
    b = np.array([[1, 2], [0, 4]])
    assert np.array_equal(la.solve(la.identity(2), b, 5), b)
    assert la.solve(la.zeros(2, 2), np.array([[1], [0]]), 3) is None
    a, b = np.array([[1], [1]]), np.array([[1], [0]])
    assert not any(np.array_equal(np.mod(a * x, 3), b) for x in range(3))
    assert la.solve(a, b, 3) is None


def test_subspace_examples():
    u = la.Subspace.span([[1, 0]], 2, 2)
    v = la.Subspace.span([[0, 1]], 2, 2)
    assert u + la.Subspace.zero(2, 2) == u
    assert u & u == u
    assert u + v == la.Subspace.full(2, 2)
    with pytest.raises(la.AmbientMismatch):
        u + la.Subspace.zero(3, 2)


@settings(max_examples=60, deadline=None)
@given(matrices(2))
def test_rank_matches_enumeration_gf2(m):
    if m.size:
        assert la.rank(m, 2) == brute_rank_gf2(m)


@pytest.mark.parametrize("p", [2, 3, 5])
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_rank_nullity_and_idempotence(p, data):
    m = data.draw(matrices(p))
    r, k, _ = la.rref(m, p)
    assert k + la.kernel(m, p).shape[0] == m.shape[1]
    assert np.array_equal(la.rref(r, p)[0], r)
    ker = la.kernel(m, p)
    assert not np.mod(m @ ker.T, p).any()


@pytest.mark.parametrize("p", [2, 3, 5])
def test_canonical_form_under_basis_change(p):
    rng = np.random.default_rng(p)
    for _ in range(50):
        n, k = int(rng.integers(1, 6)), int(rng.integers(0, 4))
        vecs = rng.integers(0, p, size=(k, n))
        u = la.Subspace.span(vecs, n, p)
        while True:
            t = rng.integers(0, p, size=(k, k))
            if la.is_invertible(t, p):
                break
        assert la.Subspace.span(np.mod(t @ vecs, p), n, p) == u


@pytest.mark.parametrize("p", [2, 3, 5])
def test_inclusion_exclusion(p):
    rng = np.random.default_rng(10 + p)
    for _ in range(50):
        n = int(rng.integers(1, 6))
        u = la.Subspace.span(rng.integers(0, p, size=(int(rng.integers(0, 4)), n)), n, p)
        v = la.Subspace.span(rng.integers(0, p, size=(int(rng.integers(0, 4)), n)), n, p)
        assert (u + v).dim == u.dim + v.dim - (u & v).dim
        assert u.issubset(u + v) and (u & v).issubset(v)


def test_image_and_preimage():
    p = 3
    m = np.array([[1, 0, 0], [0, 1, 0]])
    full = la.Subspace.full(3, p)
    assert la.subspace_image(m, full) == la.Subspace.full(2, p)
    pre = la.subspace_preimage(m, la.Subspace.zero(2, p))
    assert pre == la.Subspace.span([[0, 0, 1]], 3, p)


def test_inverse_roundtrip():
    rng = np.random.default_rng(0)
    for p in (2, 3, 5):
        for _ in range(20):
            m = rng.integers(0, p, size=(3, 3))
            inv = la.inverse(m, p)
            if inv is None:
                assert la.rank(m, p) < 3
            else:
                assert np.array_equal(la.matmul(m, inv, p=p), np.eye(3, dtype=np.int64))
