"""Table of stable hom dimensions over the zoo for Λ0 (n = 0) and Λ1 (n = 1, 2).

    python3 scripts/stable_dims_table.py [--bound 4]
"""

from __future__ import annotations

import argparse

from phantomlab import extcalc as ec
from phantomlab import instances as inst
from phantomlab import phantomcat as pc


def table(ctx, zoo, title: str) -> None:
    names = [m.name for m in zoo]
    w = max(len(n) for n in names) + 1
    print(f"\n{title}")
    print(" " * w + "".join(f"{n:>{w}}" for n in names))
    for m in zoo:
        print(f"{m.name:<{w}}" + "".join(f"{pc.stable_dim(m, n, ctx):>{w}}" for n in zoo))


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--bound", type=int, default=4, help="dimension bound of the Λ1 zoo")
    args = ap.parse_args()

    dn = inst.dual_numbers_context(0)
    table(dn, dn.test_family, "Λ0 = GF(2)[t]/(t²), n = 0")

    ctx1 = inst.rq_context(1, bound=args.bound)
    zoo = ctx1.test_family
    table(ctx1, zoo, "Λ1, n = 1")
    ctx2 = ctx1.with_n(2)
    diff = [(m.name, n.name) for m in zoo for n in zoo if pc.stable_dim(m, n, ctx1) != pc.stable_dim(m, n, ctx2)]
    print(f"\nn = 1 vs n = 2: {len(zoo) ** 2} pairs, {len(diff)} differ {diff if diff else ''}")

    print("\nsyzygies in the zoo:")
    for m in zoo:
        print(f"  Ω({m.name}) has dim {ec.syzygy(m).dim}, Ω⁻¹({m.name}) has dim {pc.cosyzygy(m, ctx1).dim}")


if __name__ == "__main__":
    main()
