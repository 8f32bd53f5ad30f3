"""Random bundles on the projective line: splitting types, sections and embeddings.

    python3 scripts/p1_battery.py [--p 5] [--rank 3] [--samples 20] [--seed 0]
"""

from __future__ import annotations

import argparse
import collections
import time

import numpy as np

from phantomlab import p1sheaves as p1


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", type=int, default=5)
    ap.add_argument("--rank", type=int, default=3)
    ap.add_argument("--samples", type=int, default=20)
    ap.add_argument("--max-degree", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    types = collections.Counter()
    t0 = time.perf_counter()
    bad = 0
    for i in range(args.samples):
        rep, typ = p1.random_bundle(args.rank, args.p, rng, args.max_degree)
        s = p1.birkhoff_split(rep)
        sections = [p1.h0(rep, m) for m in (-2, -1, 0)]
        emb = p1.cogenerator_embed(rep)
        ok = s.type.degrees == typ.degrees and (s.U @ s.D @ s.L) == rep.gluing and emb.ok
        bad += not ok
        types[s.type.degrees] += 1
        print(f"{i:>3} type={s.type.degrees}  span(G)=[{rep.gluing.lo},{rep.gluing.hi}]  "
              f"h0(E(-2..0))={sections}  embed into O({emb.twists[0]})^{len(emb.twists)}  {'ok' if ok else 'MISMATCH'}")
    print(f"\n{args.samples} bundles in {time.perf_counter() - t0:.1f}s, {bad} mismatches")
    print("types seen:", dict(types))


if __name__ == "__main__":
    main()
