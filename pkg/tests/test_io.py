import json
import os

import numpy as np
import pytest

from phantomlab import instances as inst
from phantomlab import io
from phantomlab import p1sheaves as p1
from phantomlab import quivalg as qa

from conftest import INSTANCES


def test_roundtrip_modules_and_context(tmp_path):
    m = inst.rq_modules()
    alg_path = tmp_path / "alg.json"
    io.save_algebra(m["S2"].algebra, alg_path)
    for name in ("S2", "P1"):
        io.save_module(m[name], tmp_path / "mods" / f"{name}.json", alg_path)
    f = qa.direct_sum([m["S2"], m["P1"]])[1][0]
    io.save_module(f.target, tmp_path / "mods" / "sum.json", alg_path)
    io.save_morphism(f, tmp_path / "f.json", tmp_path / "mods" / "S2.json", tmp_path / "mods" / "sum.json")
    io.save_context(tmp_path / "ctx.json", alg_path, 1, [tmp_path / "mods" / "P1.json"], True, True, 2)

    loader = io.Loader()
    s2 = loader.module(tmp_path / "mods" / "S2.json")
    assert np.array_equal(s2.action, m["S2"].action)
    g = loader.morphism(tmp_path / "f.json")
    assert g.source is s2
    assert np.array_equal(g.matrix, f.matrix)
    ctx = loader.context(tmp_path / "ctx.json")
    assert ctx.algebra is s2.algebra and ctx.n == 1
    assert [x.name for x in ctx.registry] == ["P1"]


def test_roundtrip_bundle(tmp_path):
    rep, _ = p1.random_bundle(3, 5, np.random.default_rng(4))
    io.save_bundle(rep, tmp_path / "b.json")
    back = io.Loader().bundle(tmp_path / "b.json")
    assert back.gluing == rep.gluing and back.p == 5


def test_shipped_instances_load():
    loader = io.Loader()
    ctx = loader.context(os.path.join(INSTANCES, "lambda1", "ctx_n1.json"))
    assert ctx.n == 1 and len(ctx.registry) == 4
    assert len(ctx.test_family) >= 12
    ctx0 = loader.context(os.path.join(INSTANCES, "lambda0", "ctx_n0.json"))
    assert ctx0.n == 0
    for name in os.listdir(os.path.join(INSTANCES, "bundles")):
        assert not p1.validate_rep(loader.bundle(os.path.join(INSTANCES, "bundles", name)))


def write(path, data):
    path.write_text(json.dumps(data) if not isinstance(data, str) else data)
    return path


def test_errors_name_the_file(tmp_path):
    loader = io.Loader()
    with pytest.raises(io.InputError, match="file not found"):
        loader.algebra(tmp_path / "nope.json")
    bad = write(tmp_path / "bad.json", "{\n  \"p\": 2,\n  oops\n}")
    with pytest.raises(io.InputError, match=r"bad\.json:3"):
        loader.algebra(bad)
    alg = tmp_path / "alg.json"
    io.save_algebra(inst.dual_numbers(), alg)
    missing = write(tmp_path / "m.json", {"algebra": "alg.json", "dim": 1, "action": {"1": [[1]]}})
    with pytest.raises(io.InputError, match="no matrix for basis element"):
        loader.module(missing)
    wrong = write(tmp_path / "w.json", {"algebra": "alg.json", "dim": 1, "action": {"1": [[1]], "t": [[1]]}})
    with pytest.raises(io.InputError, match="m.json|w.json"):
        loader.module(wrong)
    nofield = write(tmp_path / "n.json", {"algebra": "alg.json", "action": {}})
    with pytest.raises(io.InputError, match="missing field 'dim'"):
        loader.module(nofield)


def test_invalid_bundle_rejected(tmp_path):
    b = write(tmp_path / "b.json", {"p": 2, "rank": 1, "gluing": [[{"0": 1, "1": 1}]]})
    with pytest.raises(io.InputError, match="not c·x\\^m"):
        io.Loader().bundle(b)
    r = write(tmp_path / "r.json", {"p": 2, "rank": 2, "gluing": [[{"0": 1}]]})
    with pytest.raises(io.InputError, match="2x2"):
        io.Loader().bundle(r)
