"""Per-case cost of every suite on every builtin index, for sizing sample counts.

Usage: python scripts/time_suites.py [--samples N] [--base chain|finset] [--suites a,b] [--index x,y]
"""

import argparse
import time

from reedycheck.fincat import BUILTINS
from reedycheck.scenario import BaseSpec, Env, Scenario
from reedycheck.suites import SUITES, run_suite


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=10)
    ap.add_argument("--base", default="chain", choices=("chain", "finset"))
    ap.add_argument("--suites", default=",".join(SUITES))
    ap.add_argument("--index", default=",".join(BUILTINS))
    ap.add_argument("--max-dim", type=int, default=1)
    args = ap.parse_args()
    base = BaseSpec(args.base, 2, 1, args.max_dim, 3)
    names = args.suites.split(",")
    print(f"{'suite':<18}" + "".join(f"{n[:9]:>10}" for n in args.index.split(",")) + "   (ms per case)")
    for s in names:
        if SUITES[s].needs_model and args.base != "chain":
            continue
        row = f"{s:<18}"
        for idx in args.index.split(","):
            env = Env(Scenario(base, BUILTINS[idx], suites=(s,), samples=args.samples))
            t0 = time.perf_counter()
            rec = run_suite(env, s)
            dt = time.perf_counter() - t0
            bad = len(rec["failures"]) if not SUITES[s].negative else rec["undetected"]
            row += f"{1000 * dt / max(rec['cases'], 1):>9.0f}{'!' if bad else ' '}"
        print(row, flush=True)


if __name__ == "__main__":
    main()
