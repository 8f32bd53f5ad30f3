"""Yoneda Ext over a finite-dimensional algebra.

An element of ``Ext^k(M, N)`` is stored as a cocycle ``P_k → N`` on the
minimal projective resolution of ``M`` (a flattened ``N.dim × P_k.dim``
matrix).  Resolutions are chains of memoized projective covers, so the
resolution of ``Ω^j M`` is literally the tail of the resolution of ``M`` and
cocycles can be shifted between the two without conversion.

The n-fold extension view (:class:`Extension`) is kept alongside for
reporting and as an independent check of the cocycle formulas.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import ffmatrix as ff
from . import quivalg as qa
from .quivalg import Conflation, Module, Morphism


class ExtError(ValueError):
    """Incompatible Ext data."""


# ---------------------------------------------------------------------------
# resolutions


class ProjectiveResolution:
    """Minimal projective resolution ``⋯ → P_1 → P_0 → M``, computed on demand.

    ``pi(k): P_k ↠ Ω^k M`` and ``iota(k): Ω^k M ↪ P_{k-1}``; ``d_k = iota(k) ∘ pi(k)``.
    """

    direction = "projective"

    def __init__(self, base: Module):
        self.base = base

    def syzygy(self, k: int) -> Module:
        m = self.base
        for _ in range(k):
            m = qa.projective_cover(m).left
        return m

    def cover(self, k: int) -> Conflation:
        return qa.projective_cover(self.syzygy(k))

    def term(self, k: int) -> Module:
        return self.cover(k).middle

    def pi(self, k: int) -> Morphism:
        return self.cover(k).deflation

    def iota(self, k: int) -> Morphism:
        if k < 1:
            raise ExtError("iota is defined for k >= 1")
        return self.cover(k - 1).inflation

    def diff(self, k: int) -> Morphism:
        return self.iota(k) @ self.pi(k)

    @property
    def augmentation(self) -> Morphism:
        return self.pi(0)

    def length(self, bound: int) -> int | None:
        """Projective dimension if it is at most ``bound``."""
        for k in range(bound + 1):
            if self.syzygy(k + 1).dim == 0:
                return k if self.base.dim else 0
        return None

    def check(self, length: int) -> None:
        p = self.base.p
        if not self.augmentation.is_surjective():
            raise ExtError("augmentation is not surjective")
        for k in range(1, length + 1):
            d = self.diff(k)
            prev = self.augmentation if k == 1 else self.diff(k - 1)
            if np.any(ff.matmul(prev.matrix, d.matrix, p)):
                raise ExtError(f"d∘d ≠ 0 at degree {k}")
            if d.rank() + (self.augmentation.rank() if k == 1 else prev.rank()) != self.term(k - 1).dim:
                raise ExtError(f"resolution not exact at degree {k - 1}")
            if not qa.radical_subspace(self.term(k - 1)).contains_all(ff.image_basis(d.matrix, p)):
                raise ExtError(f"resolution not minimal at degree {k}")


class InjectiveCoresolution:
    """Minimal injective coresolution ``M → I^0 → I^1 → ⋯``.

    ``iota(k): Ω^{-k} M ↪ I^k`` and ``pi(k): I^{k-1} ↠ Ω^{-k} M``.
    """

    direction = "injective"

    def __init__(self, base: Module):
        self.base = base

    def cosyzygy(self, k: int) -> Module:
        m = self.base
        for _ in range(k):
            m = qa.injective_hull(m).right
        return m

    def hull(self, k: int) -> Conflation:
        return qa.injective_hull(self.cosyzygy(k))

    def term(self, k: int) -> Module:
        return self.hull(k).middle

    def iota(self, k: int) -> Morphism:
        return self.hull(k).inflation

    def pi(self, k: int) -> Morphism:
        return self.hull(k - 1).deflation

    def diff(self, k: int) -> Morphism:
        """``I^{k-1} → I^k``."""
        return self.iota(k) @ self.pi(k)


def resolution(m: Module) -> ProjectiveResolution:
    if "res" not in m._cache:
        m._cache["res"] = ProjectiveResolution(m)
    return m._cache["res"]


def coresolution(m: Module) -> InjectiveCoresolution:
    if "cores" not in m._cache:
        m._cache["cores"] = InjectiveCoresolution(m)
    return m._cache["cores"]


def syzygy(m: Module, k: int = 1) -> Module:
    return resolution(m).syzygy(k)


def cosyzygy(m: Module, k: int = 1) -> Module:
    return coresolution(m).cosyzygy(k)


# ---------------------------------------------------------------------------
# comparison lifts


def random_morphism(m: Module, n: Module, rng: np.random.Generator) -> Morphism:
    basis = qa.hom_space(m, n)
    if not basis:
        return qa.zero_morphism(m, n)
    return qa.linear_combination(basis, rng.integers(0, m.p, len(basis)), m, n)


class ComparisonLift:
    """Chain map ``f_j: P_j(M) → P_j(N)`` over ``f: M → N``.

    ``restriction(j)`` is the induced map ``Ω^j M → Ω^j N``.  With ``rng`` the
    lift is perturbed at every degree by a random null-homotopic term, which
    exercises independence of the choice.
    """

    def __init__(self, f: Morphism, rng: np.random.Generator | None = None):
        self.f = f
        self.rng = rng
        self.src = resolution(f.source)
        self.tgt = resolution(f.target)
        self._restr = [f]
        self._comp: list[Morphism] = []

    def restriction(self, j: int) -> Morphism:
        while len(self._restr) <= j:
            self.component(len(self._restr) - 1)
            k = len(self._comp) - 1
            g = qa.factor_through_mono(self._comp[k] @ self.src.iota(k + 1), self.tgt.iota(k + 1))
            self._restr.append(g)
        return self._restr[j]

    def component(self, j: int) -> Morphism:
        while len(self._comp) <= j:
            k = len(self._comp)
            g = self.restriction(k) if k < len(self._restr) else None
            if g is None:
                g = self.restriction(k)
            pm = self.src.term(k)
            comp = qa.lift_through_epi_from_projective(pm, self.tgt.pi(k), g @ self.src.pi(k))
            if self.rng is not None:
                h = random_morphism(pm, self.tgt.syzygy(k + 1), self.rng)
                comp = comp + self.tgt.iota(k + 1) @ h
            self._comp.append(comp)
        return self._comp[j]


def comparison_lift(f: Morphism, rng: np.random.Generator | None = None) -> ComparisonLift:
    return ComparisonLift(f, rng)


# ---------------------------------------------------------------------------
# Ext spaces and classes


class ExtSpace:
    """``Ext^k(M, N)`` as cocycles modulo coboundaries in ``Hom_k(P_k, N)``."""

    def __init__(self, m: Module, n: Module, k: int):
        if m.algebra is not n.algebra:
            raise ExtError("modules over different algebras")
        if k < 0:
            raise ExtError("degree must be non-negative")
        self.M, self.N, self.k = m, n, k
        self.p = m.p
        res = resolution(m)
        self.resolution = res
        self.P = res.term(k)
        self.ambient_dim = n.dim * self.P.dim
        pi = res.pi(k)
        cyc = [(t @ pi).matrix.reshape(-1) for t in qa.hom_space(res.syzygy(k), n)]
        self.cocycles = ff.Subspace.span(np.array(cyc), self.ambient_dim, self.p)
        if k == 0:
            self.coboundaries = ff.Subspace.zero(self.ambient_dim, self.p)
        else:
            d = res.diff(k)
            cob = [(s @ d).matrix.reshape(-1) for s in qa.hom_space(res.term(k - 1), n)]
            self.coboundaries = ff.Subspace.span(np.array(cob), self.ambient_dim, self.p)
        self._coset = ff.CosetCoordinates(self.cocycles, self.coboundaries)

    @property
    def dim(self) -> int:
        return self._coset.dim

    @property
    def shape(self) -> tuple[int, int]:
        return (self.N.dim, self.P.dim)

    def coords(self, cocycle) -> np.ndarray:
        return self._coset.coords(np.asarray(cocycle).reshape(-1))

    def basis(self) -> list["ExtClass"]:
        return [ExtClass(self, row) for row in self._coset.reps]

    def element(self, coeffs) -> "ExtClass":
        return ExtClass(self, self._coset.vector(coeffs))

    def zero(self) -> "ExtClass":
        return ExtClass(self, np.zeros(self.ambient_dim, dtype=np.int64))

    def random(self, rng: np.random.Generator, with_coboundary: bool = True) -> "ExtClass":
        v = self._coset.vector(rng.integers(0, self.p, self.dim))
        if with_coboundary and self.coboundaries.dim:
            c = rng.integers(0, self.p, self.coboundaries.dim)
            v = (v + ff.matmul(c.reshape(1, -1), self.coboundaries.basis, self.p)[0]) % self.p
        return ExtClass(self, v)

    def from_matrix(self, mat, check: bool = True) -> "ExtClass":
        v = ff.as_ff(mat, self.p).reshape(-1)
        if v.size != self.ambient_dim:
            raise ExtError(f"cocycle has {v.size} entries, expected {self.ambient_dim}")
        if check and not self.cocycles.contains(v):
            raise ExtError("matrix is not a cocycle")
        return ExtClass(self, v)

    def __repr__(self) -> str:
        return f"Ext^{self.k}({self.M.name or '?'}, {self.N.name or '?'}) dim={self.dim}"


def ext_space(m: Module, n: Module, k: int) -> ExtSpace:
    key = ("ext", k, id(n))
    cached = m._cache.get(key)
    if cached is None or cached[0] is not n:
        cached = (n, ExtSpace(m, n, k))
        m._cache[key] = cached
    return cached[1]


def ext_dim(m: Module, n: Module, k: int) -> int:
    return ext_space(m, n, k).dim


@dataclass(eq=False)
class ExtClass:
    space: ExtSpace
    cocycle: np.ndarray

    def __post_init__(self):
        self.cocycle = ff.as_ff(self.cocycle, self.space.p).reshape(-1)

    @property
    def degree(self) -> int:
        return self.space.k

    @property
    def matrix(self) -> np.ndarray:
        return self.cocycle.reshape(self.space.shape)

    @property
    def source(self) -> Module:
        """The first argument ``M`` of ``Ext(M, N)`` (the right end of the sequence)."""
        return self.space.M

    @property
    def target(self) -> Module:
        return self.space.N

    def coords(self) -> np.ndarray:
        return self.space.coords(self.cocycle)

    def is_zero(self) -> bool:
        return not np.any(self.coords())

    def equals(self, other: "ExtClass") -> bool:
        if other.space is not self.space:
            raise ExtError("comparing classes in different Ext spaces")
        return self.space.coboundaries.contains((self.cocycle - other.cocycle) % self.space.p)

    def __add__(self, other: "ExtClass") -> "ExtClass":
        return baer_sum(self, other)

    def __neg__(self) -> "ExtClass":
        return ExtClass(self.space, (-self.cocycle) % self.space.p)

    def __sub__(self, other: "ExtClass") -> "ExtClass":
        return self + (-other)

    def scale(self, c: int) -> "ExtClass":
        return ExtClass(self.space, (c * self.cocycle) % self.space.p)

    def as_morphism(self) -> Morphism:
        """The cocycle as a module map ``P_k → N``."""
        return Morphism(self.space.P, self.space.N, self.matrix, check=False)

    def factored(self) -> Morphism:
        """``θ: Ω^k M → N`` with cocycle ``θ ∘ π_k``."""
        return qa.factor_through_epi(self.as_morphism(), self.space.resolution.pi(self.degree))


def class_of_morphism(f: Morphism) -> ExtClass:
    """``f`` as an element of ``Ext^0``."""
    space = ext_space(f.source, f.target, 0)
    return ExtClass(space, (f @ resolution(f.source).augmentation).matrix)


def class_from_factored(theta: Morphism, m: Module, k: int) -> ExtClass:
    """Class in ``Ext^k(M, N)`` of ``θ: Ω^k M → N``."""
    space = ext_space(m, theta.target, k)
    return ExtClass(space, (theta @ space.resolution.pi(k)).matrix)


def pullback(gamma: ExtClass, f: Morphism, lift: ComparisonLift | None = None) -> ExtClass:
    """``γ f`` for ``f: A → M``."""
    if f.target is not gamma.source:
        raise ExtError("pullback: morphism does not end at the class's source")
    k = gamma.degree
    lift = lift if lift is not None else comparison_lift(f)
    space = ext_space(f.source, gamma.target, k)
    return ExtClass(space, ff.matmul(gamma.matrix, lift.component(k).matrix, space.p))


def pushout(g: Morphism, gamma: ExtClass) -> ExtClass:
    """``g γ`` for ``g: N → B``."""
    if g.source is not gamma.target:
        raise ExtError("pushout: morphism does not start at the class's target")
    space = ext_space(gamma.source, g.target, gamma.degree)
    return ExtClass(space, ff.matmul(g.matrix, gamma.matrix, space.p))


def baer_sum(a: ExtClass, b: ExtClass) -> ExtClass:
    if a.space is not b.space:
        raise ExtError("Baer sum of classes in different Ext spaces")
    return ExtClass(a.space, (a.cocycle + b.cocycle) % a.space.p)


def shift_class(gamma: ExtClass, m: Module, j: int) -> ExtClass:
    """Read ``γ ∈ Ext^i(Ω^j M, N)`` (``i ≥ 1``) as an element of ``Ext^{i+j}(M, N)``."""
    i = gamma.degree
    if i < 1 and j > 0:
        raise ExtError("dimension shift needs a class of positive degree")
    if gamma.source is not syzygy(m, j):
        raise ExtError("class does not live on the j-th syzygy")
    space = ext_space(m, gamma.target, i + j)
    if space.P is not gamma.space.P:
        raise ExtError("resolution tails are not shared")
    return ExtClass(space, gamma.cocycle)


def splice(gamma: ExtClass, delta: ExtClass) -> ExtClass:
    """Yoneda product ``γ·δ`` for ``δ ∈ Ext^j(M, K)`` and ``γ ∈ Ext^i(K, N)``."""
    if gamma.source is not delta.target:
        raise ExtError("splice: endpoints do not match")
    i, j = gamma.degree, delta.degree
    m = delta.source
    if i == 0:
        return pushout(gamma.factored(), delta)
    if j == 0:
        return pullback(gamma, delta.factored())
    theta = delta.factored()
    return shift_class(pullback(gamma, theta), m, j)


# ---------------------------------------------------------------------------
# n-fold extensions


@dataclass(eq=False)
class Square:
    """A pushout or pullback square together with its presentation."""

    corner: Module
    first: Morphism
    second: Morphism
    summ: Module
    inj: list[Morphism]
    prj: list[Morphism]
    quotient: Morphism | None = None
    inclusion: Morphism | None = None

    def induce_out(self, parts: Sequence[Morphism]) -> Morphism:
        """For a pushout: the map out of the corner restricting to ``parts``."""
        return qa.factor_through_epi(qa.morphism_from_sum(self.summ, self.prj, parts), self.quotient)

    def induce_in(self, parts: Sequence[Morphism]) -> Morphism:
        """For a pullback: the map into the corner with components ``parts``."""
        return qa.factor_through_mono(qa.morphism_into_sum(self.summ, self.inj, parts), self.inclusion)


def pushout_square(f: Morphism, g: Morphism) -> Square:
    """Pushout of ``f: A → B`` and ``g: A → C``; ``first: C → E``, ``second: B → E``."""
    b, c = f.target, g.target
    summ, inj, prj = qa.direct_sum([c, b])
    emb = qa.morphism_into_sum(summ, inj, [-g, f])
    e, q = qa.cokernel(emb)
    return Square(e, q @ inj[0], q @ inj[1], summ, inj, prj, quotient=q)


def pullback_square(f: Morphism, g: Morphism) -> Square:
    """Pullback of ``f: B → D`` and ``g: C → D``; ``first: E → B``, ``second: E → C``."""
    b, c = f.source, g.source
    summ, inj, prj = qa.direct_sum([b, c])
    diff = qa.morphism_from_sum(summ, prj, [f, -g])
    e, incl = qa.kernel(diff)
    return Square(e, prj[0] @ incl, prj[1] @ incl, summ, inj, prj, inclusion=incl)


@dataclass(eq=False)
class Extension:
    """Exact ``0 → Y → E_1 → ⋯ → E_n → Z → 0`` given by its ``n + 1`` maps."""

    maps: list[Morphism]
    _cls: ExtClass | None = field(default=None, repr=False)

    def __post_init__(self):
        if not self.maps:
            raise ExtError("extension needs at least one map")
        for u, v in zip(self.maps, self.maps[1:]):
            if u.target is not v.source:
                raise ExtError("extension maps are not composable")

    @property
    def degree(self) -> int:
        return len(self.maps) - 1

    @property
    def left(self) -> Module:
        return self.maps[0].source

    @property
    def right(self) -> Module:
        return self.maps[-1].target

    @property
    def middles(self) -> list[Module]:
        return [f.target for f in self.maps[:-1]]

    def is_exact(self) -> bool:
        p = self.left.p
        if not self.maps[0].is_injective() or not self.maps[-1].is_surjective():
            return False
        for u, v in zip(self.maps, self.maps[1:]):
            if np.any(ff.matmul(v.matrix, u.matrix, p)):
                return False
            if u.rank() + v.rank() != u.target.dim:
                return False
        return True

    def cocycle_class(self) -> ExtClass:
        """Class in ``Ext^n(Z, Y)`` obtained by lifting ``id_Z`` along the resolution of ``Z``."""
        if self._cls is None:
            n = self.degree
            z = self.right
            res = resolution(z)
            h = qa.lift_through_epi_from_projective(res.term(0), self.maps[n], res.augmentation)
            for j in range(1, n + 1):
                h = qa.lift_through_epi_from_projective(res.term(j), self.maps[n - j], h @ res.diff(j))
            self._cls = ExtClass(ext_space(z, self.left, n), h.matrix)
        return self._cls


def to_extension(gamma: ExtClass) -> Extension:
    """Pushout of the truncated minimal resolution along the factored cocycle."""
    n = gamma.degree
    if n < 1:
        raise ExtError("n-fold extensions need degree >= 1")
    res = gamma.space.resolution
    theta = gamma.factored()
    sq = pushout_square(res.iota(n), theta)
    nxt = res.augmentation if n == 1 else res.diff(n - 1)
    out = sq.induce_out([qa.zero_morphism(theta.target, nxt.target), nxt])
    maps = [sq.first, out] + [res.diff(j) for j in range(n - 2, 0, -1)]
    if n >= 2:
        maps.append(res.augmentation)
    return Extension(maps)


def extension_pullback(ext: Extension, f: Morphism) -> Extension:
    """Base change of the last conflation along ``f: A → Z``."""
    n = ext.degree
    sq = pullback_square(ext.maps[n], f)
    prev = ext.maps[n - 1]
    into = sq.induce_in([prev, qa.zero_morphism(prev.source, f.source)])
    return Extension(ext.maps[: n - 1] + [into, sq.second])


def extension_pushout(g: Morphism, ext: Extension) -> Extension:
    """Cobase change of the first conflation along ``g: Y → B``."""
    sq = pushout_square(ext.maps[0], g)
    nxt = ext.maps[1]
    out = sq.induce_out([qa.zero_morphism(g.target, nxt.target), nxt])
    return Extension([sq.first, out] + ext.maps[2:])


def extension_sum(a: Extension, b: Extension) -> tuple[Extension, tuple, tuple]:
    """Termwise direct sum; also returns the injections/projections at both ends."""
    if a.degree != b.degree:
        raise ExtError("direct sum of extensions of different length")
    objs_a = [a.left] + a.middles + [a.right]
    objs_b = [b.left] + b.middles + [b.right]
    sums = [qa.direct_sum([x, y]) for x, y in zip(objs_a, objs_b)]
    maps = []
    for i, (u, v) in enumerate(zip(a.maps, b.maps)):
        (s0, inj0, prj0), (s1, inj1, _) = sums[i], sums[i + 1]
        maps.append(qa.morphism_from_sum(s0, prj0, [inj1[0] @ u, inj1[1] @ v]))
    return Extension(maps), sums[0], sums[-1]


def extension_baer_sum(a: Extension, b: Extension) -> Extension:
    """Pull back the direct sum along the diagonal and push out along the codiagonal."""
    if a.left is not b.left or a.right is not b.right:
        raise ExtError("Baer sum needs equal end terms")
    total, (ys, yinj, yprj), (zs, zinj, zprj) = extension_sum(a, b)
    z, y = a.right, a.left
    diag = qa.morphism_into_sum(zs, zinj, [qa.identity_morphism(z), qa.identity_morphism(z)])
    codiag = qa.morphism_from_sum(ys, yprj, [qa.identity_morphism(y), qa.identity_morphism(y)])
    return extension_pushout(codiag, extension_pullback(total, diag))


# ---------------------------------------------------------------------------
# unit factorizations


def canonical_down_class(m: Module, n: int) -> ExtClass:
    """Class of ``0 → Ω^n M → P_{n-1} → ⋯ → P_0 → M → 0``; its cocycle is ``π_n``."""
    res = resolution(m)
    space = ext_space(m, res.syzygy(n), n)
    return ExtClass(space, res.pi(n).matrix)


def canonical_down_extension(m: Module, n: int) -> Extension:
    res = resolution(m)
    return Extension([res.iota(n)] + [res.diff(j) for j in range(n - 1, 0, -1)] + [res.augmentation])


def canonical_up_extension(y: Module, n: int) -> Extension:
    """``0 → Y → I^0 → ⋯ → I^{n-1} → Ω^{-n} Y → 0``."""
    cores = coresolution(y)
    return Extension([cores.iota(0)] + [cores.diff(j) for j in range(1, n)] + [cores.pi(n)])


def luf(gamma: ExtClass) -> tuple[Morphism, ExtClass]:
    """``γ = g δ'`` with ``δ'`` the canonical class in ``U_n(M)`` and ``g: Ω^n M → Y``."""
    if gamma.degree < 1:
        raise ExtError("luf needs degree >= 1")
    g = gamma.factored()
    return g, canonical_down_class(gamma.source, gamma.degree)


def ruf(gamma: ExtClass, unit: Extension | None = None,
        rng: np.random.Generator | None = None) -> tuple[Extension, Morphism]:
    """``γ = δ f`` with ``δ`` beginning at ``Y`` (canonical injective coresolution by default).

    Solves for ``f: M → Z`` over a basis of ``Hom(M, Z)``; with ``rng`` a random
    element of the solution set is returned.
    """
    n = gamma.degree
    if n < 1:
        raise ExtError("ruf needs degree >= 1")
    y, m = gamma.target, gamma.source
    delta = unit if unit is not None else canonical_up_extension(y, n)
    if delta.left is not y or delta.degree != n:
        raise ExtError("unit conflation does not begin at the class's target")
    dcls = delta.cocycle_class()
    z = delta.right
    basis = qa.hom_space(m, z)
    space = ext_space(m, y, n)
    p = space.p
    cols = [pullback(dcls, h).cocycle for h in basis]
    cols += list(space.coboundaries.basis)
    if not cols:
        if np.any(gamma.cocycle):
            raise ExtError("ruf: no solution")
        return delta, qa.zero_morphism(m, z)
    a = np.array(cols).T
    sol = ff.solve(a, gamma.cocycle, p)
    if sol is None:
        raise ExtError("ruf: class is not a pullback of the unit conflation (is the context Gorenstein?)")
    coeffs = sol[: len(basis)]
    if rng is not None:
        ker = ff.kernel_basis(a, p)
        if ker.shape[0]:
            extra = ff.matmul(rng.integers(0, p, ker.shape[0]).reshape(1, -1), ker, p)[0]
            coeffs = (coeffs + extra[: len(basis)]) % p
    return delta, qa.linear_combination(basis, coeffs, m, z)
