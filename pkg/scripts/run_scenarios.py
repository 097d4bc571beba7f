"""Run every scenario JSON in a directory and print one summary line per suite.

Usage: python scripts/run_scenarios.py [DIR] [--samples N] [--out-dir DIR]
"""

import argparse
import json
import pathlib
import sys
import time

from reedycheck.scenario import parse_scenario
from reedycheck.serialize import dumps
from reedycheck.suites import run


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("dir", nargs="?", default=str(pathlib.Path(__file__).parent / "scenarios"))
    ap.add_argument("--samples", type=int)
    ap.add_argument("--out-dir")
    args = ap.parse_args()
    all_ok = True
    for path in sorted(pathlib.Path(args.dir).glob("*.json")):
        sc = parse_scenario(json.loads(path.read_text()), samples=args.samples)
        t0 = time.perf_counter()
        report = run(sc)
        dt = time.perf_counter() - t0
        all_ok &= report["ok"]
        print(f"{path.name}: {'ok' if report['ok'] else 'FAILED'} ({dt:.1f}s)")
        for name, s in report["suites"].items():
            extra = f" detected={s['detected']}/{s['injected']}" if "injected" in s else ""
            print(f"  {name:<18} {s['mode']:<10} cases={s['cases']:<4} failures={len(s['failures'])}{extra}")
        if args.out_dir:
            out = pathlib.Path(args.out_dir)
            out.mkdir(parents=True, exist_ok=True)
            (out / f"{path.stem}.report.json").write_text(dumps(report))
    sys.exit(0 if all_ok else 1)


if __name__ == "__main__":
    main()
