import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from phantomlab import extcalc as ec
from phantomlab import ffmatrix as ff
from phantomlab import instances as inst
from phantomlab import nfrob as nf
from phantomlab import quivalg as qa
from phantomlab.nfrob import Verdict

RQ_ZOO = inst.rq_zoo()
DN_ZOO = inst.dual_numbers_zoo()
SEEDS = st.integers(0, 2 ** 32 - 1)


def random_map(m, n, rng):
    basis = qa.hom_space(m, n)
    if not basis:
        return qa.zero_morphism(m, n)
    return qa.linear_combination(basis, rng.integers(0, m.p, len(basis)), m, n)


def factors_through_projective(f):
    """Oracle: f = ε h for the projective cover ε: P → N, by a linear solve over Hom(M, P)."""
    cov = qa.projective_cover(f.target)
    hs = qa.hom_space(f.source, cov.middle)
    if not hs:
        return f.is_zero()
    cols = np.array([(cov.deflation @ h).matrix.reshape(-1) for h in hs]).T
    return ff.solve(cols, f.matrix.reshape(-1), f.p) is not None


def test_registry_recognition(rq1):
    m = inst.rq_modules()
    for name in ("P1", "P2", "L1", "V"):
        assert nf.is_n_projective(m[name], rq1) is Verdict.YES
    for name in ("S1", "S2"):
        assert nf.is_n_projective(m[name], rq1) is Verdict.NO
        assert nf.n_projective_witness(m[name], rq1) is not None
    assert nf.is_n_injective(m["L1"], rq1) is Verdict.YES
    assert nf.n_projective_witness(m["V"], rq1) is None


def test_context_validation():
    m = inst.rq_modules()
    alg = m["S2"].algebra
    with pytest.raises(nf.ContextError, match="not 1-projective"):
        nf.FrobeniusContext(alg, 1, [m["S2"]], gorenstein_mode=True)
    with pytest.raises(nf.ContextError, match="another algebra"):
        nf.FrobeniusContext(inst.rq_lattice_algebra(3), 1, [m["P1"]])
    with pytest.raises(nf.ContextError):
        nf.FrobeniusContext(alg, -1, [])
    d = inst.dual_numbers_modules()
    with pytest.raises(nf.ContextError):
        nf.FrobeniusContext(d["k"].algebra, 0, [])
    with pytest.raises(ValueError):
        inst.rq_context(0)


def test_verdict_needs_evidence():
    with pytest.raises(ValueError):
        nf.PhantomVerdict(Verdict.YES)
    with pytest.raises(ValueError):
        nf.PhantomVerdict(Verdict.NO)


@pytest.mark.parametrize("pair", [(a, b) for a in DN_ZOO for b in DN_ZOO], ids=lambda ab: f"{ab[0].name}-{ab[1].name}")
def test_n0_phantom_is_projective_factoring(pair, dn0):
    m, n = pair
    basis = qa.hom_space(m, n)
    rng = np.random.default_rng(len(basis))
    for _ in range(8):
        f = random_map(m, n, rng)
        v = nf.is_phantom(f, dn0)
        assert v.answer is not Verdict.UNKNOWN
        assert (v.answer is Verdict.YES) == factors_through_projective(f)


@given(st.sampled_from(RQ_ZOO), st.sampled_from(RQ_ZOO))
def test_p_subspace_sides_agree(rq1, x, y):
    a = nf.p_subspace(x, y, rq1, "pullback")
    b = nf.p_subspace(x, y, rq1, "pushout")
    assert a.lift.contains_all(b.lift) and b.lift.contains_all(a.lift)


@given(st.sampled_from(RQ_ZOO), st.sampled_from(inst.rq_registry()), st.sampled_from(RQ_ZOO), SEEDS)
def test_registry_factored_maps_are_phantom(rq1, m, p, n, seed):
    rng = np.random.default_rng(seed)
    f = random_map(p, n, rng) @ random_map(m, p, rng)
    v = nf.is_phantom(f, rq1)
    assert v.answer is Verdict.YES
    assert v.certificate["route"] == "p-membership"


@given(st.sampled_from(RQ_ZOO), st.sampled_from(RQ_ZOO), SEEDS)
def test_routes_never_conflict(rq1, m, n, seed):
    f = random_map(m, n, np.random.default_rng(seed))
    r = nf.phantom_routes(f, rq1)
    assert not r["conflict"]
    assert r["member"] == nf.left_phantom_member(f, rq1)


def test_known_phantom_verdicts(rq1):
    m = inst.rq_modules()
    assert nf.is_phantom(qa.identity_morphism(m["S2"]), rq1).answer is Verdict.NO
    assert nf.is_phantom(qa.identity_morphism(m["V"]), rq1).answer is Verdict.YES
    assert nf.is_phantom(qa.zero_morphism(m["S1"], m["S2"]), rq1).answer is Verdict.YES


def test_invertible_examples(rq1):
    m = inst.rq_modules()
    s2 = m["S2"]
    summ, inj, proj = qa.direct_sum([s2, m["P1"]])
    assert nf.is_invertible(inj[0], rq1).answer is Verdict.YES
    assert nf.is_invertible(proj[0], rq1).answer is Verdict.YES
    assert nf.is_invertible(qa.identity_morphism(s2), rq1).answer is Verdict.YES
    v = nf.is_invertible(qa.zero_morphism(s2, s2), rq1)
    assert v.answer is Verdict.NO and v.witness["route"] == "ext-witness"


@given(st.sampled_from(RQ_ZOO), st.integers(1, 2), SEEDS)
def test_unit_conflations(rq1, n_mod, k, seed):
    rng = np.random.default_rng(seed)
    for u in (nf.unit_conflation_down(n_mod, k, rq1, rng), nf.unit_conflation_up(n_mod, k, rq1, rng)):
        ext = u.extension
        assert ext.is_exact()
        assert all(nf.is_n_projective(x, rq1) is Verdict.YES for x in ext.middles)
        if u.direction == "down":
            assert ext.right is n_mod and ext.left is u.end
        else:
            assert ext.left is n_mod and ext.right is u.end


@given(st.sampled_from(RQ_ZOO), st.sampled_from(RQ_ZOO), SEEDS)
def test_solve_mod_p_right_inverts_inflations(rq1, x, y, seed):
    rng = np.random.default_rng(seed)
    p1 = inst.rq_modules()["P1"]
    summ, inj, _ = qa.direct_sum([x, p1])
    gamma = ec.ext_space(x, y, rq1.n).random(rng)
    g2 = nf.solve_mod_p_right(gamma, inj[0], rq1)
    diff = gamma - ec.pullback(g2, inj[0])
    assert nf.p_subspace(x, y, rq1).contains(diff)


def test_solve_mod_p_fails_on_non_invertible(rq1):
    m = inst.rq_modules()
    s2 = m["S2"]
    gamma = ec.ext_space(s2, s2, 1).basis()[0]
    with pytest.raises(nf.SolverError):
        nf.solve_mod_p_right(gamma, qa.zero_morphism(s2, s2), rq1)


def test_incomplete_registry_gives_unknown():
    m = inst.rq_modules()
    ctx = nf.FrobeniusContext(m["P1"].algebra, 1, [m["P1"], m["P2"]], registry_complete=False,
                              gorenstein_mode=True, test_family=[])
    s2 = m["S2"]
    gamma = ec.ext_space(s2, s2, 1).basis()[0]
    assert nf.is_p_conflation(gamma, ctx) is Verdict.UNKNOWN
    assert nf.is_p_conflation(gamma, inst.rq_context(1)) is Verdict.NO
