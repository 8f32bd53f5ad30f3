"""Finite-dimensional algebras with a distinguished basis and their modules.

An algebra is stored by structure constants ``mult[i, j] = b_i * b_j``.  A
module is a left module given by one action matrix per basis element, and a
morphism is a matrix intertwining the actions.  Everything here is exact over
GF(p) and delegates linear algebra to :mod:`phantomlab.ffmatrix`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import ffmatrix as ff


class AlgebraError(ValueError):
    """Invalid algebra, module or morphism data."""


# ---------------------------------------------------------------------------
# algebras


@dataclass(eq=False)
class Algebra:
    p: int
    labels: list[str]
    mult: np.ndarray
    unit: np.ndarray
    idempotents: list[np.ndarray]
    radical: np.ndarray
    name: str = ""
    _opposite: "Algebra | None" = field(default=None, repr=False)
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.mult = ff.as_ff(self.mult, self.p)
        self.unit = ff.as_ff(self.unit, self.p)
        self.idempotents = [ff.as_ff(e, self.p) for e in self.idempotents]
        self.radical = ff.as_ff(self.radical, self.p).reshape(-1, self.dim)

    @property
    def dim(self) -> int:
        return len(self.labels)

    def left_matrix(self, i: int) -> np.ndarray:
        """Matrix of left multiplication by basis element ``i`` on the regular module."""
        return self.mult[i].T.copy()

    def right_matrix(self, i: int) -> np.ndarray:
        return self.mult[:, i, :].T.copy()

    def product(self, x, y) -> np.ndarray:
        x = ff.as_ff(x, self.p)
        y = ff.as_ff(y, self.p)
        return np.einsum("i,j,ijk->k", x, y, self.mult) % self.p

    def basis_vector(self, i: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        v[i] = 1
        return v

    @property
    def num_vertices(self) -> int:
        return len(self.idempotents)

    def check(self) -> None:
        p, d = self.p, self.dim
        if self.mult.shape != (d, d, d):
            raise AlgebraError(f"mult must have shape {(d, d, d)}, got {self.mult.shape}")
        lefts = [self.left_matrix(i) for i in range(d)]
        for i, j in itertools.product(range(d), repeat=2):
            lhs = ff.matmul(lefts[i], lefts[j], p)
            rhs = np.einsum("k,kab->ab", self.mult[i, j], np.array(lefts)) % p
            if not np.array_equal(lhs, rhs):
                raise AlgebraError(f"associativity fails for basis pair ({self.labels[i]}, {self.labels[j]})")
        for i in range(d):
            b = self.basis_vector(i)
            if not (np.array_equal(self.product(self.unit, b), b) and np.array_equal(self.product(b, self.unit), b)):
                raise AlgebraError(f"unit law fails on {self.labels[i]}")
        total = np.zeros(d, dtype=np.int64)
        for a, e in enumerate(self.idempotents):
            total = (total + e) % p
            for b, f in enumerate(self.idempotents):
                prod = self.product(e, f)
                want = e if a == b else np.zeros(d, dtype=np.int64)
                if not np.array_equal(prod, want):
                    raise AlgebraError(f"idempotents {a} and {b} are not orthogonal idempotents")
        if not np.array_equal(total, self.unit):
            raise AlgebraError("idempotents do not sum to the unit")
        rad = ff.Subspace.span(self.radical, d, p)
        for r in rad.basis:
            for i in range(d):
                b = self.basis_vector(i)
                if not (rad.contains(self.product(b, r)) and rad.contains(self.product(r, b))):
                    raise AlgebraError("radical is not a two-sided ideal")
        if rad.dim + len(self.idempotents) != d:
            raise AlgebraError("radical codimension must equal the number of vertices (basic split algebra)")

    def opposite(self) -> "Algebra":
        if self._opposite is None:
            op = Algebra(
                self.p,
                [f"{lab}^op" for lab in self.labels],
                np.transpose(self.mult, (1, 0, 2)).copy(),
                self.unit.copy(),
                [e.copy() for e in self.idempotents],
                self.radical.copy(),
                name=f"{self.name}^op",
            )
            op._opposite = self
            self._opposite = op
        return self._opposite


def _paths(vertices, arrows, relations, max_length):
    """Nonzero paths of a quiver with monomial relations, shortest first.

    A path is a tuple of arrow indices in travel order; trivial paths are
    ``("e", v)``.
    """
    rel = [tuple(r) for r in relations]

    def is_zero(path):
        if max_length is not None and len(path) > max_length:
            return True
        for r in rel:
            for s in range(len(path) - len(r) + 1):
                if path[s : s + len(r)] == r:
                    return True
        return False

    out = [("e", v) for v in range(len(vertices))]
    frontier = [(a,) for a in range(len(arrows)) if not is_zero((a,))]
    length = 1
    while frontier:
        if length > 64:
            raise AlgebraError("path basis is infinite; supply relations or a truncation bound")
        out.extend(frontier)
        nxt = []
        for path in frontier:
            end = arrows[path[-1]][1]
            for a, (src, _tgt) in enumerate(arrows):
                if src == end and not is_zero(path + (a,)):
                    nxt.append(path + (a,))
        frontier = nxt
        length += 1
    return out


def algebra_from_quiver(
    vertices: Sequence[str],
    arrows: Sequence[tuple[int, int, str]],
    p: int,
    relations: Sequence[Sequence[int]] = (),
    max_length: int | None = None,
    name: str = "",
) -> Algebra:
    """Path algebra of a quiver modulo monomial relations.

    ``arrows`` are ``(source, target, label)``.  The product ``b_i * b_j`` is
    "``b_j`` then ``b_i``" so that left modules are quiver representations.
    """
    arrows = [tuple(a) for a in arrows]
    paths = _paths(vertices, [(s, t) for s, t, _ in arrows], relations, max_length)
    index = {path: i for i, path in enumerate(paths)}
    d = len(paths)

    def src(path):
        return path[1] if path[0] == "e" else arrows[path[0]][0]

    def tgt(path):
        return path[1] if path[0] == "e" else arrows[path[-1]][1]

    def label(path):
        if path[0] == "e":
            return f"e{vertices[path[1]]}"
        return "".join(arrows[a][2] for a in reversed(path))

    mult = np.zeros((d, d, d), dtype=np.int64)
    for (qi, q), (pj, pp) in itertools.product(enumerate(paths), repeat=2):
        # q * pp : travel pp, then q
        if tgt(pp) != src(q):
            continue
        if q[0] == "e":
            prod = pp
        elif pp[0] == "e":
            prod = q
        else:
            prod = pp + q
        if prod in index:
            mult[qi, pj, index[prod]] = 1
    idem = []
    for v in range(len(vertices)):
        e = np.zeros(d, dtype=np.int64)
        e[index[("e", v)]] = 1
        idem.append(e)
    unit = np.sum(idem, axis=0) % p
    radical = np.array([np.eye(d, dtype=np.int64)[i] for i, path in enumerate(paths) if path[0] != "e"]).reshape(-1, d)
    alg = Algebra(p, [label(q) for q in paths], mult, unit, idem, radical, name=name)
    alg.check()
    return alg


def tensor_algebra(a: Algebra, b: Algebra, name: str = "") -> Algebra:
    """``a ⊗ b`` over GF(p); idempotents ``e_i ⊗ f_j`` ordered with ``i`` outermost."""
    if a.p != b.p:
        raise AlgebraError("tensor factors must share the characteristic")
    p = a.p
    da, db = a.dim, b.dim
    d = da * db
    mult = np.einsum("ijk,abc->iajbkc", a.mult, b.mult).reshape(d, d, d) % p
    labels = [f"{la}⊗{lb}" for la in a.labels for lb in b.labels]
    idem = [np.kron(e, f) % p for e in a.idempotents for f in b.idempotents]
    unit = np.kron(a.unit, b.unit) % p
    rad_vecs = [np.kron(r, np.eye(db, dtype=np.int64)[j]) for r in a.radical for j in range(db)]
    rad_vecs += [np.kron(np.eye(da, dtype=np.int64)[i], s) for i in range(da) for s in b.radical]
    radical = ff.Subspace.span(np.array(rad_vecs).reshape(-1, d), d, p).basis
    alg = Algebra(p, labels, mult, unit, idem, radical, name=name)
    alg.check()
    return alg


# ---------------------------------------------------------------------------
# modules and morphisms


@dataclass(eq=False)
class Module:
    """Left module: ``action[i]`` is the matrix of basis element ``i``.

    Projective modules built by :func:`projective_module` also remember how
    they decompose as a sum of ``Λe_v``: ``proj_vertices[j]`` is the vertex of
    generator ``j``, ``proj_gens[:, j]`` its coordinates, and
    ``proj_basis[s] = (j, l)`` says basis vector ``s`` is ``b_l * gen_j``.
    """

    algebra: Algebra
    action: np.ndarray
    name: str = ""
    proj_vertices: list[int] | None = None
    proj_gens: np.ndarray | None = None
    proj_basis: list[tuple[int, int]] | None = None
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.action = ff.as_ff(self.action, self.algebra.p)

    @property
    def dim(self) -> int:
        return self.action.shape[1]

    @property
    def p(self) -> int:
        return self.algebra.p

    @property
    def is_projective_presented(self) -> bool:
        return self.proj_vertices is not None

    def act(self, element) -> np.ndarray:
        """Matrix of an algebra element given in basis coordinates."""
        element = ff.as_ff(element, self.p)
        return np.einsum("k,kab->ab", element, self.action) % self.p

    def idempotent(self, v: int) -> np.ndarray:
        key = ("idem", v)
        if key not in self._cache:
            self._cache[key] = self.act(self.algebra.idempotents[v])
        return self._cache[key]

    def vertex_dims(self) -> tuple[int, ...]:
        return tuple(ff.rank(self.idempotent(v), self.p) for v in range(self.algebra.num_vertices))

    def check(self) -> None:
        alg, p, n = self.algebra, self.p, self.dim
        if self.action.shape != (alg.dim, n, n):
            raise AlgebraError(f"module action has shape {self.action.shape}, expected {(alg.dim, n, n)}")
        for i, j in itertools.product(range(alg.dim), repeat=2):
            lhs = ff.matmul(self.action[i], self.action[j], p)
            rhs = self.act(alg.mult[i, j])
            if not np.array_equal(lhs, rhs):
                raise AlgebraError(
                    f"module action does not respect the product {alg.labels[i]}*{alg.labels[j]}"
                )
        if not np.array_equal(self.act(alg.unit), ff.identity(n)):
            raise AlgebraError("unit does not act as the identity")

    def __repr__(self) -> str:
        label = self.name or "Module"
        return f"<{label} dim={self.dim} dims={self.vertex_dims()}>"


def make_module(algebra: Algebra, action, name: str = "", check: bool = True) -> Module:
    action = ff.as_ff(action, algebra.p)
    if action.ndim != 3:
        raise AlgebraError("action must be a 3-d array")
    m = Module(algebra, action, name=name)
    if check:
        m.check()
    return m


def zero_module(algebra: Algebra) -> Module:
    return Module(algebra, np.zeros((algebra.dim, 0, 0), dtype=np.int64), name="0",
                  proj_vertices=[], proj_gens=np.zeros((0, 0), dtype=np.int64), proj_basis=[])


@dataclass(eq=False)
class Morphism:
    source: Module
    target: Module
    matrix: np.ndarray
    check: bool = field(default=True, repr=False)

    def __post_init__(self):
        p = self.source.p
        self.matrix = ff.as_ff(self.matrix, p).reshape(self.target.dim, self.source.dim)
        if self.check:
            self.verify()

    @property
    def p(self) -> int:
        return self.source.p

    def verify(self) -> None:
        if self.source.algebra is not self.target.algebra:
            raise AlgebraError("morphism between modules over different algebras")
        p = self.p
        for i in range(self.source.algebra.dim):
            lhs = ff.matmul(self.matrix, self.source.action[i], p)
            rhs = ff.matmul(self.target.action[i], self.matrix, p)
            if not np.array_equal(lhs, rhs):
                raise AlgebraError(f"matrix does not intertwine the action of {self.source.algebra.labels[i]}")

    def __matmul__(self, other: "Morphism") -> "Morphism":
        """``self @ other`` is the composite ``self ∘ other``."""
        if other.target is not self.source:
            raise AlgebraError("composition of non-composable morphisms")
        return Morphism(other.source, self.target, ff.matmul(self.matrix, other.matrix, self.p), check=False)

    def __add__(self, other: "Morphism") -> "Morphism":
        if other.source is not self.source or other.target is not self.target:
            raise AlgebraError("adding morphisms with different endpoints")
        return Morphism(self.source, self.target, (self.matrix + other.matrix) % self.p, check=False)

    def __neg__(self) -> "Morphism":
        return Morphism(self.source, self.target, (-self.matrix) % self.p, check=False)

    def __sub__(self, other: "Morphism") -> "Morphism":
        return self + (-other)

    def scale(self, c: int) -> "Morphism":
        return Morphism(self.source, self.target, (c * self.matrix) % self.p, check=False)

    def is_zero(self) -> bool:
        return not np.any(self.matrix)

    def rank(self) -> int:
        return ff.rank(self.matrix, self.p) if self.matrix.size else 0

    def is_injective(self) -> bool:
        return self.rank() == self.source.dim

    def is_surjective(self) -> bool:
        return self.rank() == self.target.dim

    def is_iso(self) -> bool:
        return self.source.dim == self.target.dim and self.is_injective()

    def equals(self, other: "Morphism") -> bool:
        return np.array_equal(self.matrix, other.matrix)


def identity_morphism(m: Module) -> Morphism:
    return Morphism(m, m, ff.identity(m.dim), check=False)


def zero_morphism(m: Module, n: Module) -> Morphism:
    return Morphism(m, n, ff.zeros(n.dim, m.dim), check=False)


def linear_combination(basis: Sequence[Morphism], coeffs, source: Module, target: Module) -> Morphism:
    p = source.p
    mat = ff.zeros(target.dim, source.dim)
    for c, f in zip(coeffs, basis):
        if c:
            mat = (mat + int(c) * f.matrix) % p
    return Morphism(source, target, mat, check=False)


@dataclass(eq=False)
class Conflation:
    """Short exact sequence ``A → B → C``."""

    inflation: Morphism
    deflation: Morphism

    def __post_init__(self):
        if self.inflation.target is not self.deflation.source:
            raise AlgebraError("conflation maps are not composable")

    @property
    def left(self) -> Module:
        return self.inflation.source

    @property
    def middle(self) -> Module:
        return self.inflation.target

    @property
    def right(self) -> Module:
        return self.deflation.target

    def is_exact(self) -> bool:
        p = self.inflation.p
        if not (self.inflation.is_injective() and self.deflation.is_surjective()):
            return False
        if np.any(ff.matmul(self.deflation.matrix, self.inflation.matrix, p)):
            return False
        return self.inflation.rank() + self.deflation.rank() == self.middle.dim


# ---------------------------------------------------------------------------
# hom spaces


def _intertwining_system(m: Module, n: Module) -> np.ndarray:
    """Rows encode ``X A_M(b) - A_N(b) X = 0`` on row-major ``vec(X)``."""
    p = m.p
    im, in_ = ff.identity(m.dim), ff.identity(n.dim)
    rows = []
    for i in range(m.algebra.dim):
        a, b = m.action[i], n.action[i]
        rows.append((np.kron(in_, a.T) - np.kron(b, im)) % p)
    return np.vstack(rows) if rows else ff.zeros(0, m.dim * n.dim)


def hom_space(m: Module, n: Module) -> list[Morphism]:
    """A basis of ``Hom(M, N)``."""
    if m.algebra is not n.algebra:
        raise AlgebraError("modules over different algebras")
    if m.dim == 0 or n.dim == 0:
        return []
    key = ("hom", id(n))
    cached = m._cache.get(key)
    if cached is not None and cached[0] is n:
        return cached[1]
    if m.is_projective_presented:
        basis = _projective_hom_basis(m, n)
    else:
        ker = ff.kernel_basis(_intertwining_system(m, n), m.p)
        basis = [Morphism(m, n, row.reshape(n.dim, m.dim), check=False) for row in ker]
    m._cache[key] = (n, basis)
    return basis


def hom_dim(m: Module, n: Module) -> int:
    return len(hom_space(m, n))


# ---------------------------------------------------------------------------
# submodules, kernels, cokernels


def _closure(m: Module, vectors: np.ndarray) -> ff.Subspace:
    p = m.p
    sub = ff.Subspace.span(np.asarray(vectors), m.dim, p)
    while True:
        if sub.dim == 0:
            return sub
        images = [ff.matmul(m.action[i], sub.basis.T, p).T for i in range(m.algebra.dim)]
        bigger = ff.Subspace.span(np.vstack([sub.basis] + images), m.dim, p)
        if bigger.dim == sub.dim:
            return sub
        sub = bigger


def submodule_from_basis(m: Module, basis_cols: np.ndarray, name: str = "") -> tuple[Module, Morphism]:
    """Module structure on an invariant subspace with the given column basis."""
    p = m.p
    w = ff.as_ff(basis_cols, p)
    k = w.shape[1] if w.size else 0
    if k == 0:
        z = zero_module(m.algebra)
        return z, Morphism(z, m, ff.zeros(m.dim, 0), check=False)
    rhs = np.hstack([ff.matmul(m.action[i], w, p) for i in range(m.algebra.dim)])
    sol = ff.solve_matrix(w, rhs, p)
    if sol is None:
        raise AlgebraError("subspace is not a submodule")
    action = np.stack([sol[:, i * k : (i + 1) * k] for i in range(m.algebra.dim)])
    sub = Module(m.algebra, action, name=name)
    return sub, Morphism(sub, m, w, check=False)


def submodule(m: Module, vectors, name: str = "") -> tuple[Module, Morphism]:
    """Submodule generated by ``vectors`` (rows), with its inclusion."""
    sub = _closure(m, np.asarray(vectors, dtype=np.int64))
    return submodule_from_basis(m, sub.basis.T, name=name)


def quotient_by_subspace(m: Module, sub: ff.Subspace, name: str = "") -> tuple[Module, Morphism]:
    """``M / sub`` (``sub`` must be invariant) with the quotient map."""
    p = m.p
    comp = ff.complement_basis(ff.Subspace.full(m.dim, p), sub)
    c = comp.T  # m.dim x q
    q = c.shape[1]
    if q == 0:
        z = zero_module(m.algebra)
        return z, Morphism(m, z, ff.zeros(0, m.dim), check=False)
    full = np.hstack([c, sub.basis.T]) if sub.dim else c
    inv = ff.inverse(full, p)
    proj = inv[:q]
    action = np.stack([ff.matmul(ff.matmul(proj, m.action[i], p), c, p) for i in range(m.algebra.dim)])
    quo = Module(m.algebra, action, name=name)
    return quo, Morphism(m, quo, proj, check=False)


def quotient(m: Module, vectors, name: str = "") -> tuple[Module, Morphism]:
    return quotient_by_subspace(m, _closure(m, np.asarray(vectors, dtype=np.int64)), name=name)


def kernel(f: Morphism) -> tuple[Module, Morphism]:
    if f.source.dim == 0:
        return submodule_from_basis(f.source, ff.zeros(0, 0))
    ker = ff.kernel_basis(f.matrix, f.p)
    return submodule_from_basis(f.source, ker.T)


def cokernel(f: Morphism) -> tuple[Module, Morphism]:
    return quotient_by_subspace(f.target, ff.image_basis(f.matrix, f.p))


def image(f: Morphism) -> tuple[Module, Morphism, Morphism]:
    """``(Im f, f̄: M ↠ Im f, ι: Im f ↪ N)``."""
    sub = ff.image_basis(f.matrix, f.p)
    im, incl = submodule_from_basis(f.target, sub.basis.T)
    factor = factor_through_mono(f, incl)
    return im, factor, incl


def factor_through_mono(f: Morphism, mono: Morphism) -> Morphism:
    """The unique ``g`` with ``mono ∘ g = f`` (raises if ``f`` does not factor)."""
    sol = ff.solve_matrix(mono.matrix, f.matrix, f.p) if mono.source.dim else ff.zeros(0, f.source.dim)
    if sol is None:
        raise AlgebraError("morphism does not factor through the monomorphism")
    return Morphism(f.source, mono.source, sol, check=False)


def factor_through_epi(f: Morphism, epi: Morphism) -> Morphism:
    """The unique ``g`` with ``g ∘ epi = f`` (``f`` must vanish on ``ker epi``)."""
    p = f.p
    if epi.target.dim == 0:
        if f.matrix.size and np.any(f.matrix):
            raise AlgebraError("morphism does not factor through the epimorphism")
        return Morphism(epi.target, f.target, ff.zeros(f.target.dim, 0), check=False)
    sol = ff.solve_matrix(epi.matrix.T, f.matrix.T, p)
    if sol is None:
        raise AlgebraError("morphism does not factor through the epimorphism")
    return Morphism(epi.target, f.target, sol.T, check=False)


def direct_sum(mods: Sequence[Module], name: str = "") -> tuple[Module, list[Morphism], list[Morphism]]:
    """``⊕ mods`` with injections and projections."""
    if not mods:
        raise AlgebraError("direct_sum of an empty list")
    alg = mods[0].algebra
    p = alg.p
    total = sum(m.dim for m in mods)
    action = np.zeros((alg.dim, total, total), dtype=np.int64)
    offs = np.cumsum([0] + [m.dim for m in mods])
    for m, o in zip(mods, offs):
        action[:, o : o + m.dim, o : o + m.dim] = m.action
    proj_data = all(m.is_projective_presented for m in mods)
    out = Module(alg, action, name=name or "⊕".join(m.name or "?" for m in mods))
    if proj_data:
        verts, gens, basis = [], [], []
        for m, o in zip(mods, offs):
            shift = len(verts)
            verts.extend(m.proj_vertices)
            g = np.zeros((total, len(m.proj_vertices)), dtype=np.int64)
            g[o : o + m.dim] = m.proj_gens
            gens.append(g)
            basis.extend((j + shift, l) for j, l in m.proj_basis)
        out.proj_vertices = verts
        out.proj_gens = np.hstack(gens) if gens else np.zeros((total, 0), dtype=np.int64)
        out.proj_basis = basis
    inj, prj = [], []
    for m, o in zip(mods, offs):
        e = np.zeros((total, m.dim), dtype=np.int64)
        e[o : o + m.dim] = ff.identity(m.dim)
        inj.append(Morphism(m, out, e, check=False))
        prj.append(Morphism(out, m, e.T.copy(), check=False))
    return out, inj, prj


def morphism_into_sum(target: Module, injections: Sequence[Morphism], parts: Sequence[Morphism]) -> Morphism:
    """``Σ inj_i ∘ part_i``."""
    src = parts[0].source
    mat = ff.zeros(target.dim, src.dim)
    for i, f in zip(injections, parts):
        mat = (mat + ff.matmul(i.matrix, f.matrix, target.p)) % target.p
    return Morphism(src, target, mat, check=False)


def morphism_from_sum(source: Module, projections: Sequence[Morphism], parts: Sequence[Morphism]) -> Morphism:
    """``Σ part_i ∘ proj_i``."""
    tgt = parts[0].target
    mat = ff.zeros(tgt.dim, source.dim)
    for pr, f in zip(projections, parts):
        mat = (mat + ff.matmul(f.matrix, pr.matrix, source.p)) % source.p
    return Morphism(source, tgt, mat, check=False)


# ---------------------------------------------------------------------------
# projectives, simples, injectives


def _left_ideal_basis(alg: Algebra, v: int) -> list[int]:
    """Basis indices ``l`` with ``{b_l e_v}`` a basis of ``Λ e_v``."""
    key = ("left_ideal", v)
    if key not in alg._cache:
        e = alg.idempotents[v]
        chosen, vecs = [], []
        cur = ff.Subspace.zero(alg.dim, alg.p)
        for l in range(alg.dim):
            w = alg.product(alg.basis_vector(l), e)
            if np.any(w) and not cur.contains(w):
                chosen.append(l)
                vecs.append(w)
                cur = ff.Subspace.span(np.array(vecs), alg.dim, alg.p)
        alg._cache[key] = (chosen, np.array(vecs).T.reshape(alg.dim, -1))
    return alg._cache[key]


def indecomposable_projective(alg: Algebra, v: int) -> Module:
    key = ("P", v)
    if key not in alg._cache:
        idx, w = _left_ideal_basis(alg, v)
        k = len(idx)
        p = alg.p
        rhs = np.hstack([ff.matmul(alg.left_matrix(i), w, p) for i in range(alg.dim)])
        sol = ff.solve_matrix(w, rhs, p)
        action = np.stack([sol[:, i * k : (i + 1) * k] for i in range(alg.dim)])
        gen = ff.solve(w, alg.idempotents[v], p)
        mod = Module(alg, action, name=f"P{v + 1}", proj_vertices=[v],
                     proj_gens=gen.reshape(k, 1), proj_basis=[(0, l) for l in idx])
        alg._cache[key] = mod
    return alg._cache[key]


def projective_module(alg: Algebra, vertices: Sequence[int]) -> Module:
    """``⊕ Λ e_v`` (a fresh module object, generators recorded)."""
    if not vertices:
        return zero_module(alg)
    mods = [indecomposable_projective(alg, v) for v in vertices]
    out, _, _ = direct_sum(mods, name="⊕".join(f"P{v + 1}" for v in vertices))
    return out


def map_from_projective(pmod: Module, target: Module, images: np.ndarray) -> Morphism:
    """Module map sending generator ``j`` of ``pmod`` to column ``j`` of ``images``.

    Column ``j`` must lie in ``e_v · target`` for the generator's vertex ``v``.
    """
    p = pmod.p
    images = ff.as_ff(images, p).reshape(target.dim, len(pmod.proj_vertices))
    mat = ff.zeros(target.dim, pmod.dim)
    for s, (j, l) in enumerate(pmod.proj_basis):
        mat[:, s] = ff.matmul(target.action[l], images[:, j : j + 1], p)[:, 0]
    return Morphism(pmod, target, mat, check=False)


def _projective_hom_basis(pmod: Module, n: Module) -> list[Morphism]:
    out = []
    for j, v in enumerate(pmod.proj_vertices):
        ev = ff.image_basis(n.idempotent(v), n.p)
        for vec in ev.basis:
            imgs = ff.zeros(n.dim, len(pmod.proj_vertices))
            imgs[:, j] = vec
            out.append(map_from_projective(pmod, n, imgs))
    return out


def lift_through_epi_from_projective(pmod: Module, epi: Morphism, f: Morphism) -> Morphism:
    """``g`` with ``epi ∘ g = f`` for ``f: P → C``, ``epi: B ↠ C`` (or onto ``im f``)."""
    p = pmod.p
    b = epi.source
    if pmod.dim == 0:
        return zero_morphism(pmod, b)
    z = ff.matmul(f.matrix, pmod.proj_gens, p)
    if b.dim == 0:
        if np.any(z):
            raise AlgebraError("cannot lift a nonzero map into the zero module")
        return zero_morphism(pmod, b)
    y = ff.solve_matrix(epi.matrix, z, p)
    if y is None:
        raise AlgebraError("lift does not exist: image not contained in the image of epi")
    for j, v in enumerate(pmod.proj_vertices):
        y[:, j] = ff.matmul(b.idempotent(v), y[:, j : j + 1], p)[:, 0]
    return map_from_projective(pmod, b, y)


def radical_subspace(m: Module) -> ff.Subspace:
    p = m.p
    if m.dim == 0:
        return ff.Subspace.zero(0, p)
    cols = [ff.matmul(m.act(r), ff.identity(m.dim), p) for r in m.algebra.radical]
    if not cols:
        return ff.Subspace.zero(m.dim, p)
    return ff.image_basis(np.hstack(cols), p)


def top_generators(m: Module) -> list[tuple[int, np.ndarray]]:
    """Vectors in ``e_v M`` whose classes form a basis of ``top M``, vertex by vertex."""
    p = m.p
    rad = radical_subspace(m)
    out = []
    cur = rad
    for v in range(m.algebra.num_vertices):
        ev = ff.image_basis(m.idempotent(v), p)
        for vec in ev.basis:
            if not cur.contains(vec):
                out.append((v, vec))
                cur = ff.Subspace.span(np.vstack([cur.basis, vec]), m.dim, p)
    return out


def projective_cover(m: Module) -> Conflation:
    """Minimal ``ΩM ↪ P ↠ M`` (memoized on ``m``, so iterated syzygies share objects)."""
    if "cover" not in m._cache:
        m._cache["cover"] = _projective_cover(m)
    return m._cache["cover"]


def _projective_cover(m: Module) -> Conflation:
    alg = m.algebra
    gens = top_generators(m) if m.dim else []
    pmod = projective_module(alg, [v for v, _ in gens])
    if m.dim == 0:
        z = zero_module(alg)
        return Conflation(zero_morphism(z, pmod), zero_morphism(pmod, m))
    imgs = np.array([vec for _, vec in gens]).T
    eps = map_from_projective(pmod, m, imgs)
    omega, incl = kernel(eps)
    omega.name = f"Ω({m.name})" if m.name else ""
    return Conflation(incl, eps)


def simple_module(alg: Algebra, v: int) -> Module:
    key = ("S", v)
    if key not in alg._cache:
        pm = indecomposable_projective(alg, v)
        s, _ = quotient_by_subspace(pm, radical_subspace(pm), name=f"S{v + 1}")
        alg._cache[key] = s
    return alg._cache[key]


def dual_module(m: Module) -> Module:
    """``D M = Hom_k(M, k)`` as a left module over the opposite algebra.

    Memoized both ways, so ``dual_module(dual_module(m)) is m``.
    """
    if "dual" not in m._cache:
        op = m.algebra.opposite()
        d = Module(op, np.transpose(m.action, (0, 2, 1)).copy(), name=f"D{m.name}" if m.name else "")
        d._cache["dual"] = m
        m._cache["dual"] = d
    return m._cache["dual"]


def dual_morphism(f: Morphism, source: Module | None = None, target: Module | None = None) -> Morphism:
    """``D f : D N → D M``; ``source``/``target`` may name existing modules with the dual data."""
    src = source if source is not None else dual_module(f.target)
    tgt = target if target is not None else dual_module(f.source)
    return Morphism(src, tgt, f.matrix.T.copy(), check=False)


def injective_module(alg: Algebra, v: int) -> Module:
    key = ("I", v)
    if key not in alg._cache:
        inj = dual_module(indecomposable_projective(alg.opposite(), v))
        inj.name = f"I{v + 1}"
        alg._cache[key] = inj
    return alg._cache[key]


def injective_hull(m: Module) -> Conflation:
    """Minimal ``M ↪ I ↠ Ω⁻¹M`` (dual of the projective cover over the opposite algebra)."""
    if "hull" not in m._cache:
        m._cache["hull"] = _injective_hull(m)
    return m._cache["hull"]


def _injective_hull(m: Module) -> Conflation:
    dm = dual_module(m)
    cover = projective_cover(dm)
    i_mod = dual_module(cover.middle)
    cosyz = dual_module(cover.left)
    infl = Morphism(m, i_mod, cover.deflation.matrix.T.copy(), check=False)
    defl = Morphism(i_mod, cosyz, cover.inflation.matrix.T.copy(), check=False)
    return Conflation(infl, defl)


def is_projective(m: Module) -> bool:
    return projective_cover(m).left.dim == 0


def is_injective(m: Module) -> bool:
    return injective_hull(m).right.dim == 0


# ---------------------------------------------------------------------------
# isomorphism


def module_invariants(m: Module) -> tuple:
    alg = m.algebra
    simples = [simple_module(alg, v) for v in range(alg.num_vertices)]
    return (
        m.dim,
        m.vertex_dims(),
        radical_subspace(m).dim,
        tuple(hom_dim(s, m) for s in simples),
        tuple(hom_dim(m, s) for s in simples),
    )


def find_isomorphism(m: Module, n: Module, rng: np.random.Generator | None = None,
                     tries: int = 200, exhaustive_limit: int = 4096) -> Morphism | None:
    if m.dim != n.dim:
        return None
    if m.dim == 0:
        return zero_morphism(m, n)
    basis = hom_space(m, n)
    if not basis:
        return None
    p = m.p
    if p ** len(basis) <= exhaustive_limit:
        for coeffs in itertools.product(range(p), repeat=len(basis)):
            f = linear_combination(basis, coeffs, m, n)
            if f.is_iso():
                return f
        return None
    rng = rng if rng is not None else np.random.default_rng(0)
    for _ in range(tries):
        f = linear_combination(basis, rng.integers(0, p, len(basis)), m, n)
        if f.is_iso():
            return f
    return None


def isomorphism_status(m: Module, n: Module, rng: np.random.Generator | None = None) -> str:
    """``"isomorphic"``, ``"distinct"`` or ``"undetermined"``."""
    if module_invariants(m) != module_invariants(n):
        return "distinct"
    if hom_dim(m, m) != hom_dim(m, n):
        return "distinct"
    if find_isomorphism(m, n, rng) is not None:
        return "isomorphic"
    p = m.p
    if p ** hom_dim(m, n) <= 4096:
        return "distinct"
    return "undetermined"


# ---------------------------------------------------------------------------
# test family


def _random_quotient(alg: Algebra, rng: np.random.Generator, max_summands: int) -> Module:
    k = int(rng.integers(1, max_summands + 1))
    verts = [int(v) for v in rng.integers(0, alg.num_vertices, k)]
    pm = projective_module(alg, verts)
    nrel = int(rng.integers(0, 3))
    rels = []
    for _ in range(nrel):
        v = int(rng.integers(0, alg.num_vertices))
        ev = ff.image_basis(pm.idempotent(v), alg.p)
        if ev.dim == 0:
            continue
        coeffs = rng.integers(0, alg.p, ev.dim)
        rels.append(ff.matmul(coeffs.reshape(1, -1), ev.basis, alg.p)[0])
    rad = radical_subspace(pm)
    # relations inside the radical keep the top, so the quotient is generated in the chosen vertices
    rels = [r for r in rels if rad.contains(r)]
    if not rels:
        return pm
    q, _ = quotient(pm, np.array(rels))
    return q


def module_zoo(alg: Algebra, dim_bound: int, seed: int = 0, n_random: int = 60,
               syzygy_depth: int = 3, extra: Sequence[Module] = (), sums: bool = False) -> list[Module]:
    """Deterministic family of modules of dimension ``<= dim_bound``, up to isomorphism.

    Order: ``extra``, simples, projectives, injectives, their syzygies and
    cosyzygies, then seeded random quotients of projectives.  With ``sums``
    the family is closed under direct sums within the bound.
    """
    if dim_bound < 1:
        return []
    rng = np.random.default_rng(seed)
    out: list[Module] = []

    def add(m: Module) -> None:
        if m.dim == 0 or m.dim > dim_bound:
            return
        for old in out:
            if isomorphism_status(old, m, rng) == "isomorphic":
                return
        out.append(m)

    for m in extra:
        add(m)
    nv = alg.num_vertices
    base = [simple_module(alg, v) for v in range(nv)]
    base += [indecomposable_projective(alg, v) for v in range(nv)]
    base += [injective_module(alg, v) for v in range(nv)]
    for m in base:
        add(m)
    for m in base:
        cur = m
        for depth in range(syzygy_depth):
            cur = projective_cover(cur).left
            if cur.dim == 0:
                break
            cur.name = f"Ω^{depth + 1}{m.name}"
            add(cur)
        cur = m
        for depth in range(syzygy_depth):
            cur = injective_hull(cur).right
            if cur.dim == 0:
                break
            cur.name = f"Ω^-{depth + 1}{m.name}"
            add(cur)
    for i in range(n_random):
        m = _random_quotient(alg, rng, max_summands=3)
        if m.dim <= dim_bound:
            m.name = m.name if m.name and not m.name.startswith("P") else f"R{i}"
            add(m)
    if sums:
        i = 0
        while i < len(out):
            for j in range(i + 1):
                if out[i].dim + out[j].dim <= dim_bound:
                    add(direct_sum([out[j], out[i]], name=f"{out[j].name}⊕{out[i].name}")[0])
            i += 1
    for i, m in enumerate(out):
        if not m.name:
            m.name = f"Z{i}"
    return out
