import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from phantomlab import ffmatrix as ff

PRIMES = [2, 3, 5]


@st.composite
def matrices(draw, p=None, max_side=5):
    p = draw(st.sampled_from(PRIMES)) if p is None else p
    r = draw(st.integers(0, max_side))
    c = draw(st.integers(1, max_side))
    a = draw(arrays(np.int64, (r, c), elements=st.integers(0, p - 1)))
    return a, p


def brute_kernel_size(a, p):
    n = a.shape[1]
    count = 0
    for v in itertools.product(range(p), repeat=n):
        if not np.any((a @ np.array(v, dtype=np.int64)) % p):
            count += 1
    return count


@given(matrices(max_side=4))
def test_rank_matches_kernel_count(ap):
    a, p = ap
    # |ker a| = p^(cols - rank), counted by enumeration
    assert brute_kernel_size(a, p) == p ** (a.shape[1] - ff.rank(a, p))


@given(matrices())
def test_rank_nullity_and_kernel(ap):
    a, p = ap
    k = ff.kernel_basis(a, p)
    assert ff.rank(a, p) + k.shape[0] == a.shape[1]
    if k.shape[0]:
        assert ff.rank(k, p) == k.shape[0]
        assert not np.any(ff.matmul(a, k.T, p))


@given(matrices())
def test_rref_is_reduced(ap):
    a, p = ap
    red, piv = ff.rref(a, p)
    assert piv == sorted(set(piv))
    for i, c in enumerate(piv):
        assert red[i, c] == 1
        assert np.count_nonzero(red[:, c]) == 1
    assert not np.any(red[len(piv):])
    # same row space
    assert ff.rank(np.vstack([a, red]), p) == len(piv)


@given(matrices(), st.data())
def test_solve_consistent(ap, data):
    a, p = ap
    x0 = data.draw(arrays(np.int64, a.shape[1], elements=st.integers(0, p - 1)))
    b = ff.matmul(a, x0.reshape(-1, 1), p).reshape(-1)
    x = ff.solve(a, b, p)
    assert x is not None
    assert np.array_equal(ff.matmul(a, x.reshape(-1, 1), p).reshape(-1), b)


def test_solve_inconsistent():
    a = np.array([[1, 1], [1, 1]])
    assert ff.solve(a, np.array([0, 1]), 2) is None
    assert ff.solve_matrix(a, np.array([[1, 0], [1, 1]]), 3) is None


@given(st.sampled_from(PRIMES), st.integers(1, 5), st.data())
def test_inverse(p, n, data):
    a = data.draw(arrays(np.int64, (n, n), elements=st.integers(0, p - 1)))
    if ff.rank(a, p) < n:
        with pytest.raises(ValueError):
            ff.inverse(a, p)
        return
    inv = ff.inverse(a, p)
    assert np.array_equal(ff.matmul(a, inv, p), ff.identity(n))
    assert np.array_equal(ff.matmul(inv, a, p), ff.identity(n))


@given(matrices(max_side=5), matrices(max_side=5))
def test_subspace_dimension_formula(a1, a2):
    (a, p), (b, _) = a1, a2
    n = min(a.shape[1], b.shape[1])
    u = ff.Subspace.span(a[:, :n] % p, n, p)
    v = ff.Subspace.span(b[:, :n] % p, n, p)
    s, i = ff.subspace_sum(u, v), ff.subspace_intersect(u, v)
    assert s.dim + i.dim == u.dim + v.dim
    assert s.contains_all(u) and s.contains_all(v)
    assert u.contains_all(i) and v.contains_all(i)


@given(matrices(max_side=5), st.data())
def test_coset_coordinates_roundtrip(ap, data):
    a, p = ap
    n = a.shape[1]
    big = ff.Subspace.full(n, p)
    small = ff.Subspace.span(a, n, p)
    cc = ff.CosetCoordinates(big, small)
    assert cc.dim == n - small.dim
    c = data.draw(arrays(np.int64, cc.dim, elements=st.integers(0, p - 1)))
    v = cc.vector(c)
    assert np.array_equal(cc.coords(v), c % p)
    if small.dim:
        w = (v + small.basis[0]) % p
        assert np.array_equal(cc.coords(w), c % p)


def test_coordinates_in_subspace():
    sub = ff.Subspace.span([[1, 2, 0], [0, 1, 1]], 3, 5)
    v = np.array([3, (3 * 2 + 4) % 5, 4])
    c = sub.coordinates(v)
    assert c is not None
    assert np.array_equal(ff.matmul(c.reshape(1, -1), sub.basis, 5).reshape(-1), v)
    assert sub.coordinates([0, 0, 1]) is None
