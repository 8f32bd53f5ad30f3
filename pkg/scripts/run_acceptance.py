"""Run every verify suite, print a check table, and compare two runs byte for byte.

    python3 scripts/run_acceptance.py [--seed 0] [--out reports/]
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from phantomlab import verify as vf


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", type=Path, help="directory for the JSON reports")
    args = ap.parse_args()

    ok = True
    for suite in vf.SUITES:
        t0 = time.perf_counter()
        rep = vf.run_suite(suite, seed=args.seed)
        elapsed = time.perf_counter() - t0
        same = vf.dumps(rep) == vf.dumps(vf.run_suite(suite, seed=args.seed))
        ok &= rep["pass"] and same
        print(f"[{suite}] {'PASS' if rep['pass'] else 'FAIL'}  {elapsed:.1f}s  deterministic={same}")
        for sec in rep["sections"]:
            for c in sec["checks"]:
                counts = ", ".join(f"{k}={v}" for k, v in c["counts"].items())
                print(f"  {'ok  ' if c['pass'] else 'FAIL'} {c['name']:<40} {counts}")
                for f in c["failures"]:
                    print(f"       {f}")
        if args.out:
            args.out.mkdir(parents=True, exist_ok=True)
            (args.out / f"{suite}.json").write_text(vf.dumps(rep))
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
