"""The phantom stable category and the syzygy functor on it.

``hom(M, N)`` is ``Extⁿ(M, Ωⁿ N) / 𝔭`` anchored at the canonical unit
conflation ``δ_N`` of the minimal resolution.  A stable morphism is stored as
a cocycle in that Ext space; two cocycles are equal when they differ by an
element of the registry-generated 𝔭 (which contains the coboundaries).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import extcalc as ec
from . import ffmatrix as ff
from . import nfrob as nf
from . import quivalg as qa
from .extcalc import ExtClass
from .nfrob import FrobeniusContext, UnitConflation
from .quivalg import Module, Morphism


class StableHomSpace:
    def __init__(self, m: Module, n: Module, ctx: FrobeniusContext):
        self.M, self.N, self.ctx = m, n, ctx
        k = ctx.n
        self.anchor = nf.unit_conflation_down(n, k, ctx)
        self.target = ec.syzygy(n, k)
        self.ext = ec.ext_space(m, self.target, k)
        self.psub = nf.p_subspace(m, self.target, ctx)
        self._coset = self.psub.quotient()

    @property
    def dim(self) -> int:
        return self._coset.dim

    def coords(self, cocycle) -> np.ndarray:
        return self._coset.coords(np.asarray(cocycle).reshape(-1))

    def element(self, coeffs) -> "StableMorphism":
        return StableMorphism(self, self._coset.vector(coeffs))

    def basis(self) -> list["StableMorphism"]:
        return [StableMorphism(self, row) for row in self._coset.reps]

    def zero(self) -> "StableMorphism":
        return StableMorphism(self, np.zeros(self.ext.ambient_dim, dtype=np.int64))

    def from_class(self, gamma: ExtClass) -> "StableMorphism":
        if gamma.space is not self.ext:
            raise ValueError("class lives in another Ext space")
        return StableMorphism(self, gamma.cocycle)

    def random(self, rng: np.random.Generator) -> "StableMorphism":
        """A random element, with a random 𝔭 component added to the representative."""
        v = self._coset.vector(rng.integers(0, self.ext.p, self.dim))
        lift = self.psub.lift
        if lift.dim:
            v = (v + ff.matmul(rng.integers(0, self.ext.p, lift.dim).reshape(1, -1), lift.basis, self.ext.p)[0]) % self.ext.p
        return StableMorphism(self, v)

    def all_elements(self):
        import itertools

        for coeffs in itertools.product(range(self.ext.p), repeat=self.dim):
            yield self.element(coeffs)

    def __repr__(self) -> str:
        return f"stable_hom({self.M.name or '?'}, {self.N.name or '?'}) dim={self.dim}"


@dataclass(eq=False)
class StableMorphism:
    space: StableHomSpace
    cocycle: np.ndarray

    def __post_init__(self):
        self.cocycle = ff.as_ff(self.cocycle, self.space.ext.p).reshape(-1)

    @property
    def source(self) -> Module:
        return self.space.M

    @property
    def target(self) -> Module:
        return self.space.N

    @property
    def ext_class(self) -> ExtClass:
        return ExtClass(self.space.ext, self.cocycle)

    def coords(self) -> np.ndarray:
        return self.space.coords(self.cocycle)

    def is_zero(self) -> bool:
        return not np.any(self.coords())

    def equals(self, other: "StableMorphism") -> bool:
        if other.space is not self.space:
            raise ValueError("comparing stable morphisms between different objects")
        return self.space.psub.lift.contains((self.cocycle - other.cocycle) % self.space.ext.p)

    def __add__(self, other: "StableMorphism") -> "StableMorphism":
        return add(self, other)

    def __neg__(self) -> "StableMorphism":
        return StableMorphism(self.space, -self.cocycle)

    def __sub__(self, other: "StableMorphism") -> "StableMorphism":
        return self + (-other)

    def scale(self, c: int) -> "StableMorphism":
        return StableMorphism(self.space, c * self.cocycle)


def stable_hom(m: Module, n: Module, ctx: FrobeniusContext) -> StableHomSpace:
    key = ("stable", id(m), id(n))
    hit = ctx._cache.get(key)
    if hit is None or hit[0] is not m or hit[1] is not n:
        hit = (m, n, StableHomSpace(m, n, ctx))
        ctx._cache[key] = hit
    return hit[2]


def stable_dim(m: Module, n: Module, ctx: FrobeniusContext) -> int:
    return stable_hom(m, n, ctx).dim


# ---------------------------------------------------------------------------
# free pairs and the equivalence relation


@dataclass(eq=False)
class FreePair:
    """``(γ, δ')`` with ``δ' ∈ U_n(N)`` and ``γ ∈ Extⁿ(M, end(δ'))``."""

    gamma: ExtClass
    unit: UnitConflation

    def __post_init__(self):
        if self.gamma.target is not self.unit.end:
            raise ValueError("the class must land at the far end of the unit conflation")


def as_free_pair(x: StableMorphism) -> FreePair:
    return FreePair(x.ext_class, x.space.anchor)


def random_free_pair(space: StableHomSpace, rng: np.random.Generator) -> FreePair:
    """A random pair anchored at a random non-minimal unit conflation."""
    ctx = space.ctx
    unit = nf.unit_conflation_down(space.N, ctx.n, ctx, rng=rng)
    return FreePair(ec.ext_space(space.M, unit.end, ctx.n).random(rng), unit)


def normalize(pair: FreePair, ctx: FrobeniusContext, rng: np.random.Generator | None = None) -> StableMorphism:
    """Coset in the canonical hom space equivalent to ``pair``."""
    m, n = pair.gamma.source, pair.unit.base
    space = stable_hom(m, n, ctx)
    if pair.unit is space.anchor or ctx.n == 0:
        return space.from_class(pair.gamma)
    ap = nf.angled_pair(space.anchor, pair.unit, ctx, rng=rng)
    x = nf.solve_mod_p_left(ec.pushout(ap.a2, pair.gamma), ap.a1, ctx)
    return space.from_class(x)


def denormalize(x: StableMorphism, unit: UnitConflation, rng: np.random.Generator | None = None) -> FreePair:
    """A pair anchored at ``unit`` equivalent to ``x`` (solve back along one angled pair)."""
    ctx = x.space.ctx
    if unit is x.space.anchor or ctx.n == 0:
        return FreePair(x.ext_class, x.space.anchor)
    ap = nf.angled_pair(x.space.anchor, unit, ctx, rng=rng)
    g = nf.solve_mod_p_left(ec.pushout(ap.a1, x.ext_class), ap.a2, ctx)
    return FreePair(g, unit)


def equivalent(x: FreePair, y: FreePair, ctx: FrobeniusContext, rng: np.random.Generator | None = None) -> bool:
    """``a γ − b γ'`` lies in 𝔭 for an angled pair ``(a, b)`` of the two anchors."""
    if x.unit.base is not y.unit.base or x.gamma.source is not y.gamma.source:
        raise ValueError("pairs have different endpoints")
    ap = nf.angled_pair(x.unit, y.unit, ctx, rng=rng)
    diff = ec.pushout(ap.a1, x.gamma) - ec.pushout(ap.a2, y.gamma)
    return nf.p_subspace(diff.source, diff.target, ctx).contains(diff)


# ---------------------------------------------------------------------------
# composition and addition


@dataclass(eq=False)
class _RightData:
    """Choices made once for ``γ̄``: ``γ = δ f`` and a co-angled pair ``δ_N a1 = δ a2``."""

    f: Morphism
    a1: Morphism
    a2: Morphism


def _right_data(g: StableMorphism, rng: np.random.Generator | None) -> _RightData:
    ctx = g.space.ctx
    n = ctx.n
    omega = g.space.target
    unit = nf.unit_conflation_up(omega, n, ctx, rng=rng) if rng is not None else None
    delta, f = ec.ruf(g.ext_class, unit.extension if unit is not None else None, rng=rng)
    u_delta = UnitConflation(omega, n, "up", delta, delta.right)
    anchor = nf.down_as_up(g.space.anchor)
    pair = nf.coangled_pair(anchor, u_delta, ctx, rng=rng)
    return _RightData(f, pair.a1, pair.a2)


def _apply_right(beta: StableMorphism, data: _RightData, target_space: StableHomSpace) -> StableMorphism:
    ctx = target_space.ctx
    ba = ec.pullback(beta.ext_class, data.a1)
    b_inv = nf.solve_mod_p_right(ba, data.a2, ctx)
    return target_space.from_class(ec.pullback(b_inv, data.f))


def compose(b: StableMorphism, g: StableMorphism, rng: np.random.Generator | None = None,
            paranoid: bool = False) -> StableMorphism:
    """``b̄ ∘ ḡ`` for ``ḡ: M → N`` and ``b̄: N → K``."""
    if g.target is not b.source:
        raise ValueError("stable morphisms are not composable")
    ctx = g.space.ctx
    out_space = stable_hom(g.source, b.target, ctx)
    if ctx.n == 0:
        res = ec.pullback(b.ext_class, g.ext_class.factored())
        return out_space.from_class(res)
    out = _apply_right(b, _right_data(g, rng), out_space)
    if paranoid:
        again = _apply_right(b, _right_data(g, ctx.rng(1) if rng is None else rng), out_space)
        if not again.equals(out):
            raise AssertionError("composition depends on the unit factorization chosen")
    return out


def precompose_matrix(g: StableMorphism, k: Module, rng: np.random.Generator | None = None) -> np.ndarray:
    """Matrix of ``b̄ ↦ b̄ ∘ ḡ`` from ``hom(N, K)`` to ``hom(M, K)`` in coset coordinates."""
    ctx = g.space.ctx
    src = stable_hom(g.target, k, ctx)
    dst = stable_hom(g.source, k, ctx)
    if ctx.n == 0:
        cols = [compose(b, g).coords() for b in src.basis()]
    else:
        data = _right_data(g, rng)
        cols = [_apply_right(b, data, dst).coords() for b in src.basis()]
    if not cols:
        return np.zeros((dst.dim, 0), dtype=np.int64)
    return np.array(cols).T.reshape(dst.dim, src.dim)


def add(x: StableMorphism, y: StableMorphism) -> StableMorphism:
    if x.space is not y.space:
        raise ValueError("adding stable morphisms between different objects")
    return StableMorphism(x.space, x.cocycle + y.cocycle)


def add_free(x: FreePair, y: FreePair, ctx: FrobeniusContext, rng: np.random.Generator | None = None) -> FreePair:
    """``(a γ + b γ', δ'')`` for an angled pair of the two anchors."""
    ap = nf.angled_pair(x.unit, y.unit, ctx, rng=rng)
    return FreePair(ec.pushout(ap.a1, x.gamma) + ec.pushout(ap.a2, y.gamma), ap.unit)


# ---------------------------------------------------------------------------
# the functor T


def functor_T(f: Morphism, ctx: FrobeniusContext) -> StableMorphism:
    """``T(f) = (δ_N f, δ_N)``."""
    return stable_hom(f.source, f.target, ctx).from_class(nf.t_class(f, ctx))


def identity(m: Module, ctx: FrobeniusContext) -> StableMorphism:
    space = stable_hom(m, m, ctx)
    return space.from_class(ec.canonical_down_class(m, ctx.n))


def stable_inverse(x: StableMorphism, rng: np.random.Generator | None = None) -> StableMorphism | None:
    """Two-sided inverse of ``x`` in the stable category, or ``None``."""
    ctx = x.space.ctx
    m, n = x.source, x.target
    back = stable_hom(n, m, ctx)
    mat = precompose_matrix(x, m, rng)
    one = identity(m, ctx).coords()
    if back.dim == 0:
        sol = np.zeros(0, dtype=np.int64) if not np.any(one) else None
    else:
        sol = ff.solve_matrix(mat, one, x.space.ext.p) if mat.shape[0] else np.zeros(back.dim, dtype=np.int64)
    if sol is None:
        return None
    y = back.element(sol)
    if not compose(x, y, rng).equals(identity(n, ctx)):
        return None
    return y


def is_iso_stable(x: StableMorphism, rng: np.random.Generator | None = None) -> bool:
    return stable_inverse(x, rng) is not None


# ---------------------------------------------------------------------------
# syzygies


def _lift_to_cover(f: Morphism, unit: UnitConflation, rng: np.random.Generator | None) -> Morphism:
    """``f': Ω'M → ΩN`` over ``f`` for ``unit: Ω'M ↪ E ↠ M`` and the minimal cover of ``N``."""
    ext = unit.extension
    incl, eps = ext.maps[0], ext.maps[1]
    res = ec.resolution(f.target)
    e = eps.source
    f0 = qa.lift_through_epi_from_projective(e, res.pi(0), f @ eps)
    if rng is not None:
        f0 = f0 + res.iota(1) @ ec.random_morphism(e, res.syzygy(1), rng)
    return qa.factor_through_mono(f0 @ incl, res.iota(1))


def phantom_square(f: Morphism, ctx: FrobeniusContext, rng: np.random.Generator | None = None):
    """Square ``Ω'M ↪ P ↠ M`` over ``ΩN ↪ Q ↠ N`` lifting ``f``; returns ``(f', lift)``.

    With ``rng`` the top row is a random non-minimal cover and the lift is random.
    """
    unit = nf.unit_conflation_down(f.source, 1, ctx, rng=rng)
    fp = _lift_to_cover(f, unit, rng)
    return fp, unit


def syz_on_morphism(f: Morphism, ctx: FrobeniusContext, rng: np.random.Generator | None = None) -> StableMorphism:
    """``ω(f): ΩM → ΩN``.

    Without ``rng`` this is ``T`` of the restriction of a lift of ``f`` to the
    minimal covers.  With ``rng`` a random non-minimal cover of ``M`` and a
    random lift are used, and the result is transported back along an angled
    pair, which is the general formula.
    """
    if rng is None:
        return functor_T(ec.comparison_lift(f).restriction(1), ctx)
    m = f.source
    unit = nf.unit_conflation_down(m, 1, ctx, rng=rng)
    fp = _lift_to_cover(f, unit, rng)
    canon = nf.unit_conflation_down(m, 1, ctx)
    ap = nf.angled_pair(canon, unit, ctx, rng=rng)
    x = nf.solve_mod_p_right(nf.t_class(fp, ctx), ap.a2, ctx)
    space = stable_hom(ec.syzygy(m), ec.syzygy(f.target), ctx)
    return space.from_class(ec.pullback(x, ap.a1))


def syz_object(m: Module) -> Module:
    return ec.syzygy(m, 1)


def syz_morphism(x: StableMorphism, route: str = "shift", rng: np.random.Generator | None = None) -> StableMorphism:
    """``Syz(x̄): ΩM → ΩN``.

    ``route="shift"`` lifts the cocycle one step along the resolutions.
    ``route="fraction"`` writes ``x̄ = T(a) T(b)⁻¹ T(f)`` and returns
    ``ω(a) ω(b)⁻¹ ω(f)``.
    """
    ctx = x.space.ctx
    m, n = x.source, x.target
    k = ctx.n
    out = stable_hom(ec.syzygy(m), ec.syzygy(n), ctx)
    if route == "shift":
        rm, rn = ec.resolution(m), ec.resolution(n)
        phi = x.ext_class.as_morphism()
        lifted = qa.lift_through_epi_from_projective(rm.term(k), rn.pi(k), phi)
        psi = qa.factor_through_mono(lifted @ rm.diff(k + 1), rn.iota(k + 1))
        return StableMorphism(out, psi.matrix)
    if route == "fraction":
        f, a, b = fraction(x, rng)
        wb_inv = stable_inverse(syz_on_morphism(b, ctx))
        if wb_inv is None:
            raise nf.SolverError("ω(b) is not invertible")
        return compose(syz_on_morphism(a, ctx), compose(wb_inv, syz_on_morphism(f, ctx)))
    raise ValueError(f"unknown route {route!r}")


def fraction(x: StableMorphism, rng: np.random.Generator | None = None) -> tuple[Morphism, Morphism, Morphism]:
    """``(f, a, b)`` with ``x̄ = T(a) T(b)⁻¹ T(f)``; ``a, b`` are deflations with n-projective kernels."""
    ctx = x.space.ctx
    if ctx.n == 0:
        f = x.ext_class.factored()
        return f, qa.identity_morphism(x.target), qa.identity_morphism(x.target)
    data = _right_data(x, rng)
    return data.f, data.a1, data.a2


def fraction_value(f: Morphism, a: Morphism, b: Morphism, ctx: FrobeniusContext) -> StableMorphism | None:
    tb_inv = stable_inverse(functor_T(b, ctx))
    if tb_inv is None:
        return None
    return compose(functor_T(a, ctx), compose(tb_inv, functor_T(f, ctx)))


def syz_matrix(m: Module, n: Module, ctx: FrobeniusContext) -> np.ndarray:
    """Matrix of ``Syz: hom(M, N) → hom(ΩM, ΩN)``."""
    src = stable_hom(m, n, ctx)
    dst = stable_hom(ec.syzygy(m), ec.syzygy(n), ctx)
    cols = [syz_morphism(x).coords() for x in src.basis()]
    if not cols:
        return np.zeros((dst.dim, 0), dtype=np.int64)
    return np.array(cols).T.reshape(dst.dim, src.dim)


def cosyzygy(m: Module, ctx: FrobeniusContext) -> Module:
    if not ctx.gorenstein_mode:
        raise nf.ContextError("cosyzygies use injective hulls, which needs gorenstein_mode")
    return ec.cosyzygy(m, 1)


def density_map(m: Module) -> Morphism:
    """``s: Ω(Ω⁻¹M) → M``, restriction of a lift of ``P ↠ Ω⁻¹M`` through ``I ↠ Ω⁻¹M``."""
    hull = qa.injective_hull(m)
    cover = qa.projective_cover(hull.right)
    h = qa.lift_through_epi_from_projective(cover.middle, hull.deflation, cover.deflation)
    return qa.factor_through_mono(h @ cover.inflation, hull.inflation)


def density_holds(m: Module, ctx: FrobeniusContext) -> bool:
    """``M ≅ Syz(Ω⁻¹M)`` in the stable category via ``T(s)``."""
    cosyzygy(m, ctx)
    return is_iso_stable(functor_T(density_map(m), ctx))
