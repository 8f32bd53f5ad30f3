"""Dense exact linear algebra over a prime field GF(p).

Matrices are plain ``numpy`` int64 arrays with entries in ``[0, p)``; the
characteristic is passed explicitly.  Pivoting always takes the first nonzero
entry, so every result is reproducible bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def as_ff(a, p: int) -> np.ndarray:
    arr = np.array(a, dtype=np.int64)
    return arr % p


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.int64)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    if a.shape[1] == 0 or a.shape[0] == 0 or b.shape[1] == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    return (a @ b) % p


def rref(m, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of ``m`` and its strictly increasing pivot columns."""
    a = as_ff(m, p)
    if a.ndim != 2:
        raise ValueError("rref expects a 2-d array")
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), -1, p)
        if inv != 1:
            a[r] = (a[r] * inv) % p
        col = a[:, c].copy()
        col[r] = 0
        others = np.flatnonzero(col)
        if others.size:
            a[others] = (a[others] - np.outer(col[others], a[r])) % p
        pivots.append(c)
        r += 1
    return a, pivots


def rank(m, p: int) -> int:
    m = np.asarray(m)
    if m.size == 0:
        return 0
    return len(rref(m, p)[1])


def solve_matrix(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray | None:
    """Solve ``a @ x = b`` (``b`` may have several columns); ``None`` if inconsistent.

    Free variables are set to zero.
    """
    a = as_ff(a, p)
    b = as_ff(b, p)
    squeeze = b.ndim == 1
    if squeeze:
        b = b.reshape(-1, 1)
    if a.shape[0] != b.shape[0]:
        raise ValueError(f"dimension mismatch: {a.shape[0]} rows vs {b.shape[0]}")
    n = a.shape[1]
    x = np.zeros((n, b.shape[1]), dtype=np.int64)
    if a.shape[0] == 0:
        return x[:, 0] if squeeze else x
    red, piv = rref(np.hstack([a, b]), p)
    if piv and piv[-1] >= n:
        return None
    k = len(piv)
    if np.any(red[k:, n:]):
        return None
    for i, c in enumerate(piv):
        x[c] = red[i, n:]
    return x[:, 0] if squeeze else x


def solve(a: np.ndarray, b, p: int) -> np.ndarray | None:
    """Solve ``a @ x = b`` for a single vector ``b``."""
    b = np.asarray(b)
    if b.ndim != 1:
        raise ValueError("solve expects a vector right-hand side")
    return solve_matrix(a, b, p)


def kernel_basis(a: np.ndarray, p: int) -> np.ndarray:
    """Rows form a basis of ``{x : a @ x = 0}``."""
    a = np.asarray(a)
    n = a.shape[1]
    if a.shape[0] == 0:
        return identity(n)
    red, piv = rref(a, p)
    free = [c for c in range(n) if c not in set(piv)]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for j, f in enumerate(free):
        basis[j, f] = 1
        for i, c in enumerate(piv):
            basis[j, c] = (-red[i, f]) % p
    return basis


def inverse(a: np.ndarray, p: int) -> np.ndarray:
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    red, piv = rref(np.hstack([as_ff(a, p), identity(n)]), p)
    if piv[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return red[:, n:]


@dataclass(frozen=True, eq=False)
class Subspace:
    """Row space of ``basis`` inside GF(p)^ambient_dim, kept in rref."""

    ambient_dim: int
    basis: np.ndarray
    p: int

    @classmethod
    def span(cls, vectors, ambient_dim: int, p: int) -> "Subspace":
        v = np.asarray(vectors, dtype=np.int64)
        if v.size == 0 or ambient_dim == 0:
            return cls(ambient_dim, np.zeros((0, ambient_dim), dtype=np.int64), p)
        v = v.reshape(-1, ambient_dim)
        if v.shape[0] == 0:
            return cls(ambient_dim, np.zeros((0, ambient_dim), dtype=np.int64), p)
        red, piv = rref(v, p)
        return cls(ambient_dim, red[: len(piv)], p)

    @classmethod
    def zero(cls, ambient_dim: int, p: int) -> "Subspace":
        return cls.span(np.zeros((0, ambient_dim)), ambient_dim, p)

    @classmethod
    def full(cls, ambient_dim: int, p: int) -> "Subspace":
        return cls(ambient_dim, identity(ambient_dim), p)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def _pivots(self) -> list[int]:
        return [int(np.flatnonzero(row)[0]) for row in self.basis]

    def reduce(self, v) -> np.ndarray:
        """Remainder of ``v`` after eliminating the pivot columns."""
        w = as_ff(v, self.p).reshape(-1)
        for row, c in zip(self.basis, self._pivots()):
            if w[c]:
                w = (w - w[c] * row) % self.p
        return w

    def contains(self, v) -> bool:
        return not np.any(self.reduce(v))

    def contains_all(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.basis)

    def coordinates(self, v) -> np.ndarray | None:
        """Coefficients of ``v`` in ``self.basis`` (``None`` when not contained)."""
        if not self.contains(v):
            return None
        w = as_ff(v, self.p).reshape(-1)
        return np.array([w[c] for c in self._pivots()], dtype=np.int64)

    def __add__(self, other: "Subspace") -> "Subspace":
        return subspace_sum(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.ambient_dim == other.ambient_dim
            and self.dim == other.dim
            and np.array_equal(self.basis, other.basis)
        )

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.basis.tobytes()))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim}, p={self.p})"


def image_basis(a: np.ndarray, p: int) -> Subspace:
    """Column space of ``a`` as a subspace of GF(p)^rows."""
    a = np.asarray(a)
    return Subspace.span(a.T, a.shape[0], p)


def kernel_subspace(a: np.ndarray, p: int) -> Subspace:
    a = np.asarray(a)
    return Subspace.span(kernel_basis(a, p), a.shape[1], p)


def subspace_sum(u: Subspace, v: Subspace) -> Subspace:
    if u.ambient_dim != v.ambient_dim:
        raise ValueError("ambient dimensions differ")
    return Subspace.span(np.vstack([u.basis, v.basis]), u.ambient_dim, u.p)


def subspace_intersect(u: Subspace, v: Subspace) -> Subspace:
    if u.ambient_dim != v.ambient_dim:
        raise ValueError("ambient dimensions differ")
    p = u.p
    if u.dim == 0 or v.dim == 0:
        return Subspace.zero(u.ambient_dim, p)
    # x u_basis = y v_basis  <=>  [u; -v]^T (x, y) = 0
    stacked = np.vstack([u.basis, (-v.basis) % p]).T
    ker = kernel_basis(stacked, p)
    vecs = matmul(ker[:, : u.dim], u.basis, p)
    return Subspace.span(vecs, u.ambient_dim, p)


def contains(sub: Subspace, v) -> bool:
    return sub.contains(v)


def quotient_dim(big: Subspace, small: Subspace) -> int:
    if not big.contains_all(small):
        raise ValueError("quotient_dim: small subspace is not contained in big")
    return big.dim - small.dim


def complement_basis(big: Subspace, small: Subspace) -> np.ndarray:
    """Rows of ``big.basis`` (deterministically chosen) spanning a complement of ``small``."""
    if not big.contains_all(small):
        raise ValueError("complement_basis: small subspace is not contained in big")
    chosen = []
    cur = small
    for row in big.basis:
        if not cur.contains(row):
            chosen.append(row)
            cur = Subspace.span(np.vstack([cur.basis, row]), big.ambient_dim, big.p)
    if not chosen:
        return np.zeros((0, big.ambient_dim), dtype=np.int64)
    return np.array(chosen, dtype=np.int64)


class CosetCoordinates:
    """Coordinates of vectors modulo ``small`` relative to a fixed complement.

    ``reps`` spans a complement of ``small`` inside ``big``; ``coords(v)``
    returns the coefficients of ``v`` on ``reps`` after discarding the
    ``small`` part.  Uses one precomputed inverse, so lookups are cheap.
    """

    def __init__(self, big: Subspace, small: Subspace, reps: np.ndarray | None = None):
        self.p = big.p
        self.big = big
        self.small = small
        self.reps = complement_basis(big, small) if reps is None else reps
        stacked = np.vstack([self.reps, small.basis]) if small.dim else self.reps
        self._stacked = stacked
        self.dim = self.reps.shape[0]
        if stacked.shape[0] == 0:
            self._piv = []
            self._inv = np.zeros((0, 0), dtype=np.int64)
        else:
            _, piv = rref(stacked, self.p)
            if len(piv) != stacked.shape[0]:
                raise ValueError("representatives are not independent modulo the subspace")
            self._piv = piv
            self._inv = inverse(stacked[:, piv], self.p)

    def coords(self, v) -> np.ndarray:
        w = as_ff(v, self.p).reshape(-1)
        if not self._piv:
            if np.any(w):
                raise ValueError("vector outside the ambient subspace")
            return np.zeros(0, dtype=np.int64)
        c = matmul(w[self._piv].reshape(1, -1), self._inv, self.p).reshape(-1)
        if not np.array_equal(matmul(c.reshape(1, -1), self._stacked, self.p).reshape(-1), w):
            raise ValueError("vector outside the ambient subspace")
        return c[: self.dim]

    def vector(self, coords) -> np.ndarray:
        c = as_ff(coords, self.p).reshape(1, -1)
        if self.dim == 0:
            return np.zeros(self.big.ambient_dim, dtype=np.int64)
        return matmul(c, self.reps, self.p).reshape(-1)
