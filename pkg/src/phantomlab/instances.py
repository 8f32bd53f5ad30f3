"""The two shipped algebras and their named modules.

``dual_numbers`` is GF(2)[t]/(t²).  ``rq_lattice_algebra`` is kA₂ ⊗ GF(2)[t]/(t²),
the representations of 1 → 2 over R = GF(2)[t]/(t²); it is 1-Gorenstein and its
modules of finite projective dimension are exactly the R-free representations.
"""

from __future__ import annotations

from functools import lru_cache

from . import quivalg as qa


@lru_cache(maxsize=None)
def dual_numbers(p: int = 2) -> qa.Algebra:
    alg = qa.algebra_from_quiver(["1"], [(0, 0, "t")], p, relations=[(0, 0)], name="Λ0")
    alg.labels = ["1", "t"]
    return alg


@lru_cache(maxsize=None)
def a2_algebra(p: int = 2) -> qa.Algebra:
    return qa.algebra_from_quiver(["1", "2"], [(0, 1, "a")], p, name="kA2")


@lru_cache(maxsize=None)
def rq_lattice_algebra(p: int = 2) -> qa.Algebra:
    alg = qa.tensor_algebra(a2_algebra(p), dual_numbers(p), name="Λ1")
    # e1⊗1, e1⊗t, e2⊗1, e2⊗t, a⊗1, a⊗t
    alg.labels = ["e1", "te1", "e2", "te2", "a", "ta"]
    return alg


def label_index(alg: qa.Algebra, label: str) -> int:
    try:
        return alg.labels.index(label)
    except ValueError:
        raise KeyError(f"{alg.name} has no basis element {label!r}") from None


@lru_cache(maxsize=None)
def dual_numbers_modules(p: int = 2) -> dict[str, qa.Module]:
    """``k`` (the simple) and ``Λ0`` (the regular module)."""
    alg = dual_numbers(p)
    reg = qa.indecomposable_projective(alg, 0)
    reg.name = "Λ0"
    k = qa.simple_module(alg, 0)
    k.name = "k"
    return {"k": k, "Λ0": reg}


@lru_cache(maxsize=None)
def rq_modules(p: int = 2) -> dict[str, qa.Module]:
    """S1, S2, P1, P2, L1 = (R, 0) and V = (R, R, t)."""
    alg = rq_lattice_algebra(p)
    a = label_index(alg, "a")
    t = label_index(alg, "te2")
    p1 = qa.indecomposable_projective(alg, 0)
    p2 = qa.indecomposable_projective(alg, 1)
    s1 = qa.simple_module(alg, 0)
    s2 = qa.simple_module(alg, 1)
    a_g1 = (p1.action[a] @ p1.proj_gens[:, 0]) % p
    l1, _ = qa.quotient(p1, [a_g1], name="L1")
    summ, inj, _ = qa.direct_sum([p1, p2], name="P1⊕P2")
    g1 = summ.proj_gens[:, 0]
    g2 = summ.proj_gens[:, 1]
    rel = (summ.action[a] @ g1 - summ.action[t] @ g2) % p
    v, _ = qa.quotient(summ, [rel], name="V")
    return {"S1": s1, "S2": s2, "P1": p1, "P2": p2, "L1": l1, "V": v}


def rq_registry(p: int = 2) -> list[qa.Module]:
    """Indecomposable modules of finite projective dimension over ``rq_lattice_algebra``.

    An R-free representation is a matrix over R = k[t]/(t²); its Smith form has
    entries 1, t, 0, so the indecomposables are P1 = (R,R,1), V = (R,R,t),
    L1 = (R,0) and P2 = (0,R).
    """
    m = rq_modules(p)
    return [m["P1"], m["P2"], m["L1"], m["V"]]


def dual_numbers_registry(p: int = 2) -> list[qa.Module]:
    return [dual_numbers_modules(p)["Λ0"]]


__all__ = [
    "dual_numbers",
    "a2_algebra",
    "rq_lattice_algebra",
    "dual_numbers_modules",
    "rq_modules",
    "rq_registry",
    "dual_numbers_registry",
    "label_index",
]


def _zoo(alg, bound, seed, extra, sums=False):
    return qa.module_zoo(alg, bound, seed=seed, extra=extra, sums=sums)


@lru_cache(maxsize=None)
def rq_zoo(bound: int = 4, seed: int = 0, p: int = 2) -> tuple[qa.Module, ...]:
    m = rq_modules(p)
    return tuple(_zoo(rq_lattice_algebra(p), bound, seed, [m[k] for k in ("S1", "S2", "P1", "P2", "L1", "V")]))


@lru_cache(maxsize=None)
def dual_numbers_zoo(bound: int = 3, seed: int = 0, p: int = 2) -> tuple[qa.Module, ...]:
    m = dual_numbers_modules(p)
    return tuple(_zoo(dual_numbers(p), bound, seed, [m["k"], m["Λ0"]], sums=True))


def rq_context(n: int = 1, bound: int = 4, seed: int = 0, p: int = 2):
    """Λ1 as an n-Frobenius category (n ≥ 1): n-projectives are the modules of finite projective dimension."""
    from .nfrob import FrobeniusContext

    if n < 1:
        raise ValueError("Λ1 is not self-injective; use n >= 1")
    return FrobeniusContext(rq_lattice_algebra(p), n, rq_registry(p), registry_complete=True,
                            gorenstein_mode=True, test_family=list(rq_zoo(bound, seed, p)), seed=seed, name="Λ1")


def dual_numbers_context(n: int = 0, bound: int = 3, seed: int = 0, p: int = 2):
    """Λ0 is self-injective, so it is n-Frobenius for every n with the projectives as n-projectives."""
    from .nfrob import FrobeniusContext

    return FrobeniusContext(dual_numbers(p), n, dual_numbers_registry(p), registry_complete=True,
                            gorenstein_mode=True, test_family=list(dual_numbers_zoo(bound, seed, p)),
                            seed=seed, name="Λ0")
