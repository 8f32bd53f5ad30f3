"""Write the shipped instance files under ``instances/``.

    python3 scripts/make_instances.py [--out instances]
"""

from __future__ import annotations

import argparse
from pathlib import Path

import numpy as np

from phantomlab import instances as inst
from phantomlab import io
from phantomlab import p1sheaves as p1
from phantomlab import quivalg as qa


def write_lambda0(root: Path) -> None:
    d = root / "lambda0"
    alg = inst.dual_numbers()
    io.save_algebra(alg, d / "algebra.json")
    mods = inst.dual_numbers_modules()
    files = {"k": d / "k.json", "Λ0": d / "Lambda0.json"}
    for key, path in files.items():
        io.save_module(mods[key], path, d / "algebra.json")
    k, reg = mods["k"], mods["Λ0"]
    t = inst.label_index(alg, "t")
    io.save_morphism(qa.identity_morphism(k), d / "id_k.json", files["k"], files["k"])
    io.save_morphism(qa.Morphism(reg, reg, reg.action[t]), d / "t_on_Lambda0.json", files["Λ0"], files["Λ0"])
    io.save_morphism(qa.projective_cover(k).deflation, d / "Lambda0_to_k.json", files["Λ0"], files["k"])
    for n in (0, 1):
        io.save_context(d / f"ctx_n{n}.json", d / "algebra.json", n, [files["Λ0"]], True, True,
                        zoo_dim_bound=3, name="Λ0", zoo_extra=[files["k"]], zoo_sums=True)


def write_lambda1(root: Path) -> None:
    d = root / "lambda1"
    alg = inst.rq_lattice_algebra()
    io.save_algebra(alg, d / "algebra.json")
    mods = inst.rq_modules()
    files = {key: d / f"{key}.json" for key in mods}
    for key, path in files.items():
        io.save_module(mods[key], path, d / "algebra.json")
    s2, p1_, l1 = mods["S2"], mods["P1"], mods["L1"]
    io.save_morphism(qa.identity_morphism(s2), d / "id_S2.json", files["S2"], files["S2"])
    io.save_morphism(qa.projective_cover(l1).deflation, d / "P1_to_L1.json", files["P1"], files["L1"])
    summ, inj, _ = qa.direct_sum([s2, p1_], name="S2⊕P1")
    io.save_module(summ, d / "S2+P1.json", d / "algebra.json")
    io.save_morphism(inj[0], d / "S2_into_S2+P1.json", files["S2"], d / "S2+P1.json")
    registry = [files[k] for k in ("P1", "P2", "L1", "V")]
    extra = [files[k] for k in ("S1", "S2", "P1", "P2", "L1", "V")]
    for n in (1, 2):
        io.save_context(d / f"ctx_n{n}.json", d / "algebra.json", n, registry, True, True,
                        zoo_dim_bound=4, name="Λ1", zoo_extra=extra)


def write_bundles(root: Path) -> None:
    d = root / "bundles"
    lm = p1.LaurentMatrix
    io.save_bundle(p1.CoherentRep(lm.diag_monomials([2, -1], 2), name="O(2)+O(-1)"), d / "diag_x2_xinv.json")
    io.save_bundle(p1.CoherentRep(lm.from_entries([[{1: 1}, {0: 1}], [{}, {-1: 1}]], 2), name="nonsplit_gluing"),
                   d / "x_1_0_xinv.json")
    for n in (-2, 0, 3):
        io.save_bundle(p1.twist(n, 2), d / f"O{n}.json")
    rng = np.random.default_rng(5)
    rep, _ = p1.random_bundle(3, 5, rng)
    rep.name = "random_rank3_gf5"
    io.save_bundle(rep, d / "random_rank3_gf5.json")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "instances"))
    root = Path(ap.parse_args().out)
    write_lambda0(root)
    write_lambda1(root)
    write_bundles(root)
    print(f"wrote instances under {root}")


if __name__ == "__main__":
    main()
