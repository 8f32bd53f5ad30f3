"""n-projectives, unit conflations, the subgroup 𝔭 ⊆ Extⁿ and phantom tests.

Verdicts are three-valued.  A ``Yes`` carries a certificate (a membership or
vanishing computation), a ``No`` carries a witness, and ``Unknown`` means
neither was found.  Completeness claims are gated by two flags on the
context: ``registry_complete`` (the registry lists every indecomposable
n-projective) and ``gorenstein_mode`` (injective dimension of the algebra is
at most n, so n-projective means projective dimension at most n).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from . import extcalc as ec
from . import ffmatrix as ff
from . import quivalg as qa
from .extcalc import ExtClass, Extension
from .quivalg import Module, Morphism


class ContextError(ValueError):
    """Operation not supported by the given context."""


class SolverError(RuntimeError):
    """A mod-𝔭 linear solve had no solution."""


class Verdict(str, enum.Enum):
    YES = "Yes"
    NO = "No"
    UNKNOWN = "Unknown"

    def __str__(self) -> str:
        return self.value


@dataclass
class PhantomVerdict:
    answer: Verdict
    witness: Any = None
    certificate: Any = None

    def __post_init__(self):
        if self.answer is Verdict.YES and self.certificate is None:
            raise ValueError("a Yes verdict needs a certificate")
        if self.answer is Verdict.NO and self.witness is None:
            raise ValueError("a No verdict needs a witness")


@dataclass(eq=False)
class FrobeniusContext:
    algebra: qa.Algebra
    n: int
    registry: list[Module]
    registry_complete: bool = False
    gorenstein_mode: bool = False
    test_family: list[Module] = field(default_factory=list)
    seed: int = 0
    name: str = ""
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.n < 0:
            raise ContextError("n must be non-negative")
        for m in self.registry:
            if m.algebra is not self.algebra:
                raise ContextError(f"registry member {m.name} lives over another algebra")
            v = is_n_projective(m, self)
            if v is Verdict.NO:
                raise ContextError(f"registry member {m.name} is not {self.n}-projective")
        if self.n == 0:
            for v in range(self.algebra.num_vertices):
                pv = qa.indecomposable_projective(self.algebra, v)
                if not any(qa.isomorphism_status(pv, m) == "isomorphic" for m in self.registry):
                    raise ContextError("at n = 0 the registry must contain every indecomposable projective")

    def with_n(self, n: int) -> "FrobeniusContext":
        """Same data with a larger ``n`` (an n-Frobenius category is k-Frobenius for k > n)."""
        return FrobeniusContext(self.algebra, n, list(self.registry), self.registry_complete,
                                self.gorenstein_mode, list(self.test_family), self.seed, self.name)

    def rng(self, salt: int = 0) -> np.random.Generator:
        return np.random.default_rng([self.seed, salt])


# ---------------------------------------------------------------------------
# recognition


def is_n_projective(m: Module, ctx: FrobeniusContext, depth: int = 2) -> Verdict:
    n = ctx.n
    if m.dim == 0 or qa.is_projective(m):
        return Verdict.YES
    if ctx.gorenstein_mode:
        alg = m.algebra
        for v in range(alg.num_vertices):
            if ec.ext_dim(m, qa.simple_module(alg, v), n + 1):
                return Verdict.NO
        return Verdict.YES
    for x in ctx.test_family:
        for i in range(n + 1, n + 1 + depth):
            if ec.ext_dim(m, x, i):
                return Verdict.NO
    return Verdict.UNKNOWN


def is_n_injective(m: Module, ctx: FrobeniusContext, depth: int = 2) -> Verdict:
    n = ctx.n
    if m.dim == 0 or qa.is_injective(m):
        return Verdict.YES
    if ctx.gorenstein_mode:
        alg = m.algebra
        for v in range(alg.num_vertices):
            if ec.ext_dim(qa.simple_module(alg, v), m, n + 1):
                return Verdict.NO
        return Verdict.YES
    for x in ctx.test_family:
        for i in range(n + 1, n + 1 + depth):
            if ec.ext_dim(x, m, i):
                return Verdict.NO
    return Verdict.UNKNOWN


def n_projective_witness(m: Module, ctx: FrobeniusContext) -> Module | None:
    """A simple ``S`` with ``Ext^{n+1}(M, S) ≠ 0`` if there is one."""
    alg = m.algebra
    for v in range(alg.num_vertices):
        s = qa.simple_module(alg, v)
        if ec.ext_dim(m, s, ctx.n + 1):
            return s
    return None


# ---------------------------------------------------------------------------
# unit conflations


@dataclass(eq=False)
class UnitConflation:
    """An element of ``U_k(N)`` (``direction == "down"``) or ``U^k(N)`` (``"up"``).

    ``end`` is the far end: ``Ω^k N`` going down, ``Ω^{-k} N`` going up.  The
    class lives in ``Ext^k(N, end)`` resp. ``Ext^k(end, N)``.
    """

    base: Module
    degree: int
    direction: str
    extension: Extension | None
    end: Module
    _cls: ExtClass | None = field(default=None, repr=False)

    @property
    def cls(self) -> ExtClass:
        if self._cls is None:
            if self.degree == 0:
                self._cls = ec.class_of_morphism(qa.identity_morphism(self.base))
            else:
                self._cls = self.extension.cocycle_class()
        return self._cls


def _identity_unit(n_mod: Module, direction: str) -> UnitConflation:
    return UnitConflation(n_mod, 0, direction, None, n_mod)


def _random_down_extension(n_mod: Module, k: int, rng: np.random.Generator, extra: int) -> Extension:
    """Resolution-like sequence with random extra projective summands."""
    alg = n_mod.algebra
    cur = n_mod
    epis, incls = [], []
    for _ in range(k):
        cover = qa.projective_cover(cur)
        verts = [int(v) for v in rng.integers(0, alg.num_vertices, int(rng.integers(0, extra + 1)))]
        if verts:
            extra_mod = qa.projective_module(alg, verts)
            e, _, prj = qa.direct_sum([cover.middle, extra_mod])
            eps = qa.morphism_from_sum(e, prj, [cover.deflation, ec.random_morphism(extra_mod, cur, rng)])
        else:
            e = cover.middle
            eps = cover.deflation
        ker, incl = qa.kernel(eps)
        epis.append(eps)
        incls.append(incl)
        cur = ker
    maps = [incls[-1]] + [incls[j - 1] @ epis[j] for j in range(k - 1, 0, -1)] + [epis[0]]
    return Extension(maps)


def unit_conflation_down(n_mod: Module, k: int, ctx: FrobeniusContext | None = None,
                         rng: np.random.Generator | None = None, extra: int = 1) -> UnitConflation:
    """Canonical element of ``U_k(N)`` from the minimal resolution, or a random non-minimal one."""
    if k == 0:
        return _identity_unit(n_mod, "down")
    if rng is None:
        ext = ec.canonical_down_extension(n_mod, k)
        return UnitConflation(n_mod, k, "down", ext, ec.syzygy(n_mod, k), ec.canonical_down_class(n_mod, k))
    ext = _random_down_extension(n_mod, k, rng, extra)
    return UnitConflation(n_mod, k, "down", ext, ext.left)


def dual_extension(ext: Extension) -> Extension:
    """``D`` applied termwise; reverses the direction of the sequence."""
    return Extension([qa.dual_morphism(f) for f in reversed(ext.maps)])


def unit_conflation_up(n_mod: Module, k: int, ctx: FrobeniusContext | None = None,
                       rng: np.random.Generator | None = None, extra: int = 1) -> UnitConflation:
    """Canonical element of ``U^k(N)`` from the minimal injective coresolution, or a random one."""
    if ctx is not None and k > 0 and not ctx.gorenstein_mode:
        raise ContextError("unit conflations going up use injectives, which needs gorenstein_mode")
    if k == 0:
        return _identity_unit(n_mod, "up")
    if rng is None:
        ext = ec.canonical_up_extension(n_mod, k)
    else:
        ext = dual_extension(_random_down_extension(qa.dual_module(n_mod), k, rng, extra))
    return UnitConflation(n_mod, k, "up", ext, ext.right)


def down_as_up(unit: UnitConflation) -> UnitConflation:
    """``δ_N ∈ U_n(N)`` read as an element of ``U^n(Ω^n N)`` (its middle terms are projective)."""
    if unit.direction != "down":
        raise ValueError("expected a down unit conflation")
    return UnitConflation(unit.end, unit.degree, "up", unit.extension, unit.base, unit._cls)


# ---------------------------------------------------------------------------
# the subgroup 𝔭


@dataclass(eq=False)
class PSubspace:
    """𝔭(X, Y) inside ``Extⁿ(X, Y)``; ``lift`` contains the coboundaries."""

    space: ec.ExtSpace
    lift: ff.Subspace
    complete: bool
    side: str
    _q: ff.CosetCoordinates | None = field(default=None, repr=False)

    @property
    def dim(self) -> int:
        return self.lift.dim - self.space.coboundaries.dim

    def contains(self, gamma: ExtClass) -> bool:
        if gamma.space is not self.space:
            raise ValueError("class lives in another Ext space")
        return self.lift.contains(gamma.cocycle)

    def quotient(self) -> ff.CosetCoordinates:
        """Coordinates on ``Extⁿ(X, Y) / 𝔭(X, Y)``."""
        if self._q is None:
            self._q = ff.CosetCoordinates(self.space.cocycles, self.lift)
        return self._q


def _span_with_coboundaries(space: ec.ExtSpace, vecs: list) -> ff.Subspace:
    rows = list(space.coboundaries.basis) + [np.asarray(v).reshape(-1) for v in vecs]
    return ff.Subspace.span(np.array(rows), space.ambient_dim, space.p)


def p_subspace(x: Module, y: Module, ctx: FrobeniusContext, side: str = "pullback") -> PSubspace:
    """Registry-generated 𝔭(X, Y).

    ``pullback``: span of ``γ g`` with ``g: X → P``, ``γ ∈ Extⁿ(P, Y)``.
    ``pushout``: span of ``h γ`` with ``γ ∈ Extⁿ(X, Q)``, ``h: Q → Y``.
    """
    key = ("p", side, id(x), id(y))
    hit = ctx._cache.get(key)
    if hit is not None and hit[0] is x and hit[1] is y:
        return hit[2]
    n = ctx.n
    space = ec.ext_space(x, y, n)
    vecs = []
    if side == "pullback":
        for pm in ctx.registry:
            gammas = ec.ext_space(pm, y, n).basis()
            if not gammas:
                continue
            for g in qa.hom_space(x, pm):
                comp = ec.comparison_lift(g).component(n).matrix
                for gam in gammas:
                    vecs.append(ff.matmul(gam.matrix, comp, space.p))
    elif side == "pushout":
        for qm in ctx.registry:
            hs = qa.hom_space(qm, y)
            if not hs:
                continue
            for gam in ec.ext_space(x, qm, n).basis():
                for h in hs:
                    vecs.append(ff.matmul(h.matrix, gam.matrix, space.p))
    else:
        raise ValueError(f"unknown side {side!r}")
    out = PSubspace(space, _span_with_coboundaries(space, vecs), ctx.registry_complete, side)
    ctx._cache[key] = (x, y, out)
    return out


def is_p_conflation(gamma: ExtClass, ctx: FrobeniusContext) -> Verdict:
    """``Yes`` on membership; ``No`` only when the registry is complete."""
    ps = p_subspace(gamma.source, gamma.target, ctx)
    if ps.contains(gamma):
        return Verdict.YES
    return Verdict.NO if ctx.registry_complete else Verdict.UNKNOWN


# ---------------------------------------------------------------------------
# phantom and invertible morphisms


def t_class(f: Morphism, ctx: FrobeniusContext) -> ExtClass:
    """``δ_N f`` for the canonical ``δ_N ∈ U_n(N)``."""
    return ec.pullback(ec.canonical_down_class(f.target, ctx.n), f)


def ext_map_matrix(x: Module, f: Morphism, degree: int) -> np.ndarray:
    """Matrix of ``Ext^d(X, f): Ext^d(X, M) → Ext^d(X, N)`` in coset coordinates."""
    src = ec.ext_space(x, f.source, degree)
    tgt = ec.ext_space(x, f.target, degree)
    cols = [ec.pushout(f, g).coords() for g in src.basis()]
    if not cols:
        return np.zeros((tgt.dim, 0), dtype=np.int64)
    return np.array(cols).T.reshape(tgt.dim, src.dim)


def witness_family(f: Morphism, ctx: FrobeniusContext) -> list[Module]:
    """Test family for ``Ext^{n+1}(−, f)``, led by the cosyzygies ``Ω^{-(n+1)}`` of both ends."""
    out = []
    if ctx.gorenstein_mode:
        for m in (f.source, f.target):
            c = ec.cosyzygy(m, ctx.n + 1)
            if c.dim:
                out.append(c)
    return out + list(ctx.test_family)


def ext_witness(f: Morphism, ctx: FrobeniusContext, family: Sequence[Module] | None = None):
    """``(X, class)`` with ``Ext^{n+1}(X, f)(class) ≠ 0``, or ``None``."""
    fam = witness_family(f, ctx) if family is None else family
    for x in fam:
        for g in ec.ext_space(x, f.source, ctx.n + 1).basis():
            if not ec.pushout(f, g).is_zero():
                return x, g
    return None


def is_phantom(f: Morphism, ctx: FrobeniusContext, family: Sequence[Module] | None = None) -> PhantomVerdict:
    t = t_class(f, ctx)
    ps = p_subspace(f.source, ec.syzygy(f.target, ctx.n), ctx)
    if ps.contains(t):
        return PhantomVerdict(Verdict.YES, certificate={"route": "p-membership", "cocycle": t.cocycle})
    wit = ext_witness(f, ctx, family)
    if wit is not None:
        return PhantomVerdict(Verdict.NO, witness={"route": "ext-witness", "X": wit[0], "class": wit[1]})
    if ctx.n == 0 and ctx.registry_complete:
        # at n = 0 membership is exactly "factors through a projective"
        return PhantomVerdict(Verdict.NO, witness={"route": "no-factorization", "cocycle": t.cocycle})
    return PhantomVerdict(Verdict.UNKNOWN)


def phantom_routes(f: Morphism, ctx: FrobeniusContext, family: Sequence[Module] | None = None) -> dict:
    """Both routes evaluated independently (used for consistency checks)."""
    t = t_class(f, ctx)
    member = p_subspace(f.source, ec.syzygy(f.target, ctx.n), ctx).contains(t)
    wit = ext_witness(f, ctx, family)
    return {"member": member, "witness": wit is not None, "conflict": member and wit is not None}


def left_phantom_member(f: Morphism, ctx: FrobeniusContext) -> bool:
    """``f δ' ∈ 𝔭`` for the canonical ``δ' ∈ Uⁿ(M)``."""
    up = unit_conflation_up(f.source, ctx.n, ctx)
    cls = ec.pushout(f, up.cls)
    return p_subspace(up.end, f.target, ctx).contains(cls)


def is_invertible(f: Morphism, ctx: FrobeniusContext,
                  family: Sequence[Module] | None = None) -> PhantomVerdict:
    ker, _ = qa.kernel(f)
    cok, _ = qa.cokernel(f)
    kv, cv = is_n_projective(ker, ctx), is_n_projective(cok, ctx)
    if kv is Verdict.YES and cv is Verdict.YES:
        return PhantomVerdict(Verdict.YES, certificate={"route": "kernel-cokernel", "kernel_dim": ker.dim,
                                                        "cokernel_dim": cok.dim})
    fam = witness_family(f, ctx) if family is None else family
    deg = ctx.n + 1
    for x in fam:
        mat = ext_map_matrix(x, f, deg)
        r = ff.rank(mat, f.p) if mat.size else 0
        if not (mat.shape[0] == mat.shape[1] == r):
            return PhantomVerdict(Verdict.NO, witness={"route": "ext-witness", "X": x, "shape": mat.shape, "rank": r})
    if ctx.registry_complete and ctx.gorenstein_mode:
        return PhantomVerdict(Verdict.YES, certificate={"route": "ext-bijective", "family_size": len(fam)})
    return PhantomVerdict(Verdict.UNKNOWN)


# ---------------------------------------------------------------------------
# angled and co-angled pairs


@dataclass(eq=False)
class AngledPair:
    a1: Morphism
    a2: Morphism
    unit: UnitConflation


def _angled_core(e1: Extension, e2: Extension, rng: np.random.Generator | None,
                 extra: int = 1) -> tuple[Morphism, Morphism, Extension]:
    """Termwise sum of two exact sequences over the same right end, topped up by covers."""
    n = e1.degree
    base = e1.right
    alg = base.algebra
    k_prev = base
    k_incl = qa.identity_morphism(base)
    inj_prev = None
    epis, incls = [], []
    for j in range(n):
        s1, s2 = e1.maps[n - j], e2.maps[n - j]
        if j == 0:
            u1, u2 = s1, s2
        else:
            u1 = qa.factor_through_mono(inj_prev[0] @ s1, k_incl)
            u2 = qa.factor_through_mono(inj_prev[1] @ s2, k_incl)
        summands = [u1.source, u2.source]
        parts = [u1, u2]
        img = ff.image_basis(np.hstack([u1.matrix, u2.matrix]), base.p) if k_prev.dim else None
        if k_prev.dim and img.dim < k_prev.dim:
            cover = qa.projective_cover(k_prev)
            summands.append(cover.middle)
            parts.append(cover.deflation)
        if rng is not None and extra:
            verts = [int(v) for v in rng.integers(0, alg.num_vertices, int(rng.integers(0, extra + 1)))]
            if verts:
                pm = qa.projective_module(alg, verts)
                summands.append(pm)
                parts.append(ec.random_morphism(pm, k_prev, rng))
        e, inj, prj = qa.direct_sum(summands)
        eps = qa.morphism_from_sum(e, prj, parts)
        ker, incl = qa.kernel(eps)
        epis.append(eps)
        incls.append(incl)
        inj_prev = inj
        k_prev, k_incl = ker, incl
    a1 = qa.factor_through_mono(inj_prev[0] @ e1.maps[0], k_incl)
    a2 = qa.factor_through_mono(inj_prev[1] @ e2.maps[0], k_incl)
    maps = [incls[-1]] + [incls[j - 1] @ epis[j] for j in range(n - 1, 0, -1)] + [epis[0]]
    return a1, a2, Extension(maps)


def angled_pair(d1: UnitConflation, d2: UnitConflation, ctx: FrobeniusContext,
                rng: np.random.Generator | None = None, check: bool = True) -> AngledPair:
    """Inflations ``a_i`` with n-projective cokernels and ``a1 δ1 = a2 δ2``."""
    if d1.base is not d2.base or d1.direction != "down" or d2.direction != "down":
        raise ValueError("angled_pair needs two down unit conflations ending at the same object")
    if d1.degree == 0:
        idm = qa.identity_morphism(d1.base)
        return AngledPair(idm, idm, _identity_unit(d1.base, "down"))
    a1, a2, ext = _angled_core(d1.extension, d2.extension, rng)
    unit = UnitConflation(d1.base, d1.degree, "down", ext, ext.left)
    pair = AngledPair(a1, a2, unit)
    if check:
        _check_angled(pair, d1, d2, ctx)
    return pair


def _check_angled(pair: AngledPair, d1: UnitConflation, d2: UnitConflation, ctx: FrobeniusContext) -> None:
    for a, d in ((pair.a1, d1), (pair.a2, d2)):
        if not a.is_injective():
            raise AssertionError("angled pair: a map is not injective")
        cok, _ = qa.cokernel(a)
        if is_n_projective(cok, ctx) is Verdict.NO:
            raise AssertionError("angled pair: cokernel is not n-projective")
        if not ec.pushout(a, d.cls).equals(pair.unit.cls):
            raise AssertionError("angled pair: a δ differs from δ''")


def coangled_pair(d1: UnitConflation, d2: UnitConflation, ctx: FrobeniusContext,
                  rng: np.random.Generator | None = None, check: bool = True) -> AngledPair:
    """Deflations ``a_i`` with n-projective kernels and ``δ1 a1 = δ2 a2`` (by duality)."""
    if d1.base is not d2.base or d1.direction != "up" or d2.direction != "up":
        raise ValueError("coangled_pair needs two up unit conflations beginning at the same object")
    if d1.degree == 0:
        idm = qa.identity_morphism(d1.base)
        return AngledPair(idm, idm, _identity_unit(d1.base, "up"))
    b1, b2, ext_op = _angled_core(dual_extension(d1.extension), dual_extension(d2.extension), rng)
    ext = dual_extension(ext_op)
    a1 = qa.dual_morphism(b1)
    a2 = qa.dual_morphism(b2)
    unit = UnitConflation(d1.base, d1.degree, "up", ext, ext.right)
    pair = AngledPair(a1, a2, unit)
    if check:
        for a, d in ((a1, d1), (a2, d2)):
            if not a.is_surjective():
                raise AssertionError("co-angled pair: a map is not surjective")
            ker, _ = qa.kernel(a)
            if is_n_projective(ker, ctx) is Verdict.NO:
                raise AssertionError("co-angled pair: kernel is not n-projective")
            if not ec.pullback(d.cls, a).equals(unit.cls):
                raise AssertionError("co-angled pair: δ a differs from δ''")
    return pair


# ---------------------------------------------------------------------------
# inverses modulo 𝔭


def _solve_mod(space: ec.ExtSpace, psub: PSubspace, images: list[np.ndarray], target: np.ndarray):
    p = space.p
    cols = [np.asarray(v).reshape(-1) for v in images] + list(psub.lift.basis)
    if not cols:
        return np.zeros(0, dtype=np.int64) if not np.any(target) else None
    sol = ff.solve(np.array(cols).T, target, p)
    return None if sol is None else sol[: len(images)]


def solve_mod_p_right(gamma: ExtClass, a: Morphism, ctx: FrobeniusContext) -> ExtClass:
    """``γ' ∈ Extⁿ(X', Y)`` with ``γ − γ' a ∈ 𝔭(X, Y)`` for ``a: X → X'`` and ``γ ∈ Extⁿ(X, Y)``."""
    if a.source is not gamma.source:
        raise ValueError("a must start at the source of γ")
    y = gamma.target
    tgt_space = ec.ext_space(a.target, y, ctx.n)
    lift = ec.comparison_lift(a)
    basis = tgt_space.basis()
    images = [ec.pullback(b, a, lift).cocycle for b in basis]
    psub = p_subspace(a.source, y, ctx)
    coeffs = _solve_mod(gamma.space, psub, images, gamma.cocycle)
    if coeffs is None:
        inv = is_invertible(a, ctx)
        reason = "a is not invertible" if inv.answer is Verdict.NO else "registry incomplete or a not invertible"
        raise SolverError(f"solve_mod_p_right: no solution ({reason})")
    return tgt_space.element(coeffs) if basis else tgt_space.zero()


def solve_mod_p_left(beta: ExtClass, a: Morphism, ctx: FrobeniusContext) -> ExtClass:
    """``β' ∈ Extⁿ(Y, X)`` with ``β − a β' ∈ 𝔭(Y, X')`` for ``a: X → X'`` and ``β ∈ Extⁿ(Y, X')``."""
    if a.target is not beta.target:
        raise ValueError("a must end at the target of β")
    y = beta.source
    src_space = ec.ext_space(y, a.source, ctx.n)
    basis = src_space.basis()
    images = [ec.pushout(a, b).cocycle for b in basis]
    psub = p_subspace(y, a.target, ctx)
    coeffs = _solve_mod(beta.space, psub, images, beta.cocycle)
    if coeffs is None:
        inv = is_invertible(a, ctx)
        reason = "a is not invertible" if inv.answer is Verdict.NO else "registry incomplete or a not invertible"
        raise SolverError(f"solve_mod_p_left: no solution ({reason})")
    return src_space.element(coeffs) if basis else src_space.zero()
