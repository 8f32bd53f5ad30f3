import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from phantomlab import extcalc as ec
from phantomlab import ffmatrix as ff
from phantomlab import instances as inst
from phantomlab import nfrob as nf
from phantomlab import phantomcat as pc
from phantomlab import quivalg as qa

RQ_ZOO = inst.rq_zoo()
DN_ZOO = inst.dual_numbers_zoo()
SEEDS = st.integers(0, 2 ** 32 - 1)
zoo = st.sampled_from(RQ_ZOO)


def random_map(m, n, rng):
    basis = qa.hom_space(m, n)
    if not basis:
        return qa.zero_morphism(m, n)
    return qa.linear_combination(basis, rng.integers(0, m.p, len(basis)), m, n)


def classical_stable_dim(m, n):
    """dim Hom(M, N) minus the dimension of the maps factoring through the projective cover of N."""
    cov = qa.projective_cover(n)
    vecs = [(cov.deflation @ h).matrix.reshape(-1) for h in qa.hom_space(m, cov.middle)]
    sub = ff.Subspace.span(np.array(vecs).reshape(-1, m.dim * n.dim), m.dim * n.dim, m.p)
    return qa.hom_dim(m, n) - sub.dim


@pytest.mark.parametrize("pair", [(a, b) for a in DN_ZOO for b in DN_ZOO], ids=lambda ab: f"{ab[0].name}-{ab[1].name}")
def test_n0_stable_dim_is_classical(pair, dn0):
    m, n = pair
    assert pc.stable_dim(m, n, dn0) == classical_stable_dim(m, n)


def test_known_stable_dims(rq1):
    m = inst.rq_modules()
    assert pc.stable_dim(m["S2"], m["S2"], rq1) == 1
    for name in ("P1", "P2", "L1", "V"):
        assert pc.stable_dim(m[name], m[name], rq1) == 0
    d = inst.dual_numbers_modules()
    ctx = inst.dual_numbers_context(0)
    assert pc.stable_dim(d["k"], d["k"], ctx) == 1
    assert pc.stable_dim(d["Λ0"], d["Λ0"], ctx) == 0


@given(zoo, zoo, SEEDS)
def test_identity_laws(rq1, m, n, seed):
    rng = np.random.default_rng(seed)
    x = pc.stable_hom(m, n, rq1).random(rng)
    assert pc.compose(pc.identity(n, rq1), x, rng).equals(x)
    assert pc.compose(x, pc.identity(m, rq1), rng).equals(x)


@settings(max_examples=25)
@given(zoo, zoo, zoo, zoo, SEEDS)
def test_associativity_and_bilinearity(rq1, a, b, c, d, seed):
    rng = np.random.default_rng(seed)
    x = pc.stable_hom(a, b, rq1).random(rng)
    x2 = pc.stable_hom(a, b, rq1).random(rng)
    y = pc.stable_hom(b, c, rq1).random(rng)
    z = pc.stable_hom(c, d, rq1).random(rng)
    left = pc.compose(z, pc.compose(y, x, rng), rng)
    right = pc.compose(pc.compose(z, y, rng), x, rng)
    assert left.equals(right)
    assert pc.compose(y, pc.add(x, x2), rng).equals(pc.add(pc.compose(y, x, rng), pc.compose(y, x2, rng)))


@given(zoo, zoo, zoo, SEEDS)
def test_composition_independent_of_choices(rq1, a, b, c, seed):
    rng = np.random.default_rng(seed)
    x = pc.stable_hom(a, b, rq1).random(rng)
    y = pc.stable_hom(b, c, rq1).random(rng)
    assert pc.compose(y, x, rng, paranoid=True).equals(pc.compose(y, x))


@given(zoo, zoo, SEEDS)
def test_free_pairs_normalize_consistently(rq1, m, n, seed):
    rng = np.random.default_rng(seed)
    space = pc.stable_hom(m, n, rq1)
    fp = pc.random_free_pair(space, rng)
    x = pc.normalize(fp, rq1, rng)
    assert pc.equivalent(fp, pc.as_free_pair(x), rq1, rng)
    back = pc.denormalize(x, fp.unit, rng)
    assert pc.equivalent(back, fp, rq1, rng)
    fq = pc.random_free_pair(space, rng)
    s = pc.add_free(fp, fq, rq1, rng)
    assert pc.normalize(s, rq1, rng).equals(pc.add(x, pc.normalize(fq, rq1, rng)))


@given(zoo, zoo, zoo, SEEDS)
def test_functor_t(rq1, a, b, c, seed):
    rng = np.random.default_rng(seed)
    f, g = random_map(a, b, rng), random_map(b, c, rng)
    assert pc.functor_T(g @ f, rq1).equals(pc.compose(pc.functor_T(g, rq1), pc.functor_T(f, rq1), rng))
    assert pc.functor_T(qa.identity_morphism(a), rq1).equals(pc.identity(a, rq1))


@given(zoo, st.sampled_from(inst.rq_registry()), zoo, SEEDS)
def test_t_kills_phantoms(rq1, m, p, n, seed):
    rng = np.random.default_rng(seed)
    f = random_map(p, n, rng) @ random_map(m, p, rng)
    assert pc.functor_T(f, rq1).is_zero()


@pytest.mark.parametrize("m", RQ_ZOO, ids=lambda m: m.name)
def test_t_inverts_inflations(rq1, m):
    for p in inst.rq_registry():
        _, inj, proj = qa.direct_sum([m, p])
        assert pc.is_iso_stable(pc.functor_T(inj[0], rq1))
        assert pc.is_iso_stable(pc.functor_T(proj[0], rq1))


@given(zoo, zoo, SEEDS)
def test_syz_routes_agree(rq1, m, n, seed):
    rng = np.random.default_rng(seed)
    x = pc.stable_hom(m, n, rq1).random(rng)
    assert pc.syz_morphism(x, "shift").equals(pc.syz_morphism(x, "fraction", rng))
    f, a, b = pc.fraction(x, rng)
    assert pc.fraction_value(f, a, b, rq1).equals(x)


@given(zoo, zoo, SEEDS)
def test_omega_independent_of_lift(rq1, m, n, seed):
    rng = np.random.default_rng(seed)
    f = random_map(m, n, rng)
    w = pc.syz_on_morphism(f, rq1)
    assert pc.syz_on_morphism(f, rq1, rng).equals(w)
    assert pc.syz_morphism(pc.functor_T(f, rq1)).equals(w)


@pytest.mark.parametrize("m", RQ_ZOO, ids=lambda m: m.name)
def test_syz_bijective_and_dense(rq1, m):
    for n in RQ_ZOO:
        mat = pc.syz_matrix(m, n, rq1)
        assert mat.shape[0] == mat.shape[1]
        assert (ff.rank(mat, 2) if mat.size else 0) == mat.shape[0]
    assert pc.density_holds(m, rq1)


@given(zoo, zoo, SEEDS)
def test_phantom_square(rq1, m, n, seed):
    rng = np.random.default_rng(seed)
    f = random_map(m, n, rng)
    fp, _ = pc.phantom_square(f, rq1, rng)
    assert nf.is_phantom(f, rq1).answer == nf.is_phantom(fp, rq1).answer


def test_n_bump(rq1):
    ctx2 = rq1.with_n(2)
    for m in RQ_ZOO[:6]:
        for n in RQ_ZOO[:6]:
            assert pc.stable_dim(m, n, rq1) == pc.stable_dim(m, n, ctx2)


def test_non_composable_rejected(rq1):
    m = inst.rq_modules()
    x = pc.identity(m["S1"], rq1)
    y = pc.identity(m["S2"], rq1)
    with pytest.raises(ValueError):
        pc.compose(y, x)
    with pytest.raises(ValueError):
        pc.syz_morphism(x, "sideways")
