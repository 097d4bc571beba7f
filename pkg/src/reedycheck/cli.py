"""Command line: run scenarios, list builtin indices, generate fixtures, replay failures."""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import fixtures as fx
from .category import DEFAULT_CAP, ResourceLimitError
from .chain import ChainComplexes
from .fincat import list_builtins
from .serialize import ScenarioError, complex_to_json, diagram_to_json, dumps, morphism_to_json

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
FIXTURE_SCHEMA = "reedycheck.fixture/1"
FIXTURE_KINDS = (
    "chain_complex", "chain_map", "diagram",
    "cofibration", "trivial_cofibration", "fibration", "trivial_fibration",
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise UsageError(f"{path}: invalid JSON ({e.msg} at line {e.lineno})") from None


def _write(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_run(args) -> int:
    from .scenario import parse_scenario
    from .suites import run

    sc = parse_scenario(_load_json(args.scenario), seed=args.seed, samples=args.samples)
    report = run(sc, timings=args.timings)
    _write(dumps(report), args.out)
    for name, s in report["suites"].items():
        extra = f" detected={s['detected']}/{s['injected']}" if "injected" in s else ""
        print(f"{name}: {s['mode']} cases={s['cases']} passes={s['passes']} failures={len(s['failures'])}{extra}",
              file=sys.stderr)
    return EXIT_OK if report["ok"] else EXIT_FAIL


def cmd_list(args) -> int:
    sys.stdout.write(dumps({"builtins": list_builtins()}))
    return EXIT_OK


def _cap() -> int:
    raw = os.environ.get("REEDYCHECK_CAP")
    if not raw:
        return DEFAULT_CAP
    try:
        return int(raw)
    except ValueError:
        raise ScenarioError("REEDYCHECK_CAP", f"expected an integer, got {raw!r}") from None


def generate_fixture(kind: str, params: dict, seed: int) -> dict:
    """A serialized random fixture; deterministic given ``seed``."""
    from .scenario import BaseSpec, Env, Scenario, parse_base
    from .serialize import reedy_from_json

    if kind not in FIXTURE_KINDS:
        raise ScenarioError("kind", f"unknown fixture kind {kind!r}; known: {list(FIXTURE_KINDS)}")
    base = parse_base(params.get("base", "chain"))
    base = BaseSpec(base.kind, params.get("p", base.p), params.get("max_degree", base.max_degree),
                    params.get("max_dim", base.max_dim), params.get("max_size", base.max_size))
    base = parse_base(base.to_json())
    cap = _cap()
    if (base.max_degree + 1) * base.max_dim > cap or base.max_size > cap:
        raise ResourceLimitError(f"requested sizes exceed cap {cap}")
    rng = fx.case_rng(seed, f"generate:{kind}")
    index = params.get("index")
    echo = {"base": base.to_json(), **({"index": index} if index else {})}
    out = {"schema": FIXTURE_SCHEMA, "kind": kind, "params": echo, "seed": seed}
    if kind in ("chain_complex", "chain_map") or (index is None and kind != "diagram"):
        if base.kind != "chain":
            raise ScenarioError("base", f"{kind} needs the chain base")
        C = ChainComplexes(base.p)
        P = fx.ChainParams(base.max_degree, base.max_dim)
        if kind == "chain_complex":
            out["value"] = complex_to_json(fx.random_complex(base.p, rng, P))
        elif kind == "chain_map":
            a, b = fx.random_complex(base.p, rng, P), fx.random_complex(base.p, rng, P)
            out["value"] = morphism_to_json(C, fx.random_morphism(C, a, b, rng))
        elif kind.endswith("cofibration"):
            out["value"] = morphism_to_json(C, fx.base_cofibration(C, rng, kind.startswith("trivial"), P))
        else:
            out["value"] = morphism_to_json(C, fx.base_fibration(C, rng, kind.startswith("trivial"), P))
        return out
    r = reedy_from_json(index or "arrow", "index")
    if kind != "diagram" and base.kind != "chain":
        raise ScenarioError("base", f"{kind} needs the chain base")
    env = Env(Scenario(base, r, caps={"enumeration": cap}))
    if kind == "diagram":
        out["value"] = diagram_to_json(env.M, env.sample_mi(rng))
        return out
    trivial = kind.startswith("trivial")
    if kind.endswith("cofibration"):
        g = env.cof_ci(rng, trivial)
    else:
        g = env.fib_ci(rng, trivial)
    out["value"] = morphism_to_json(env.ctx.CI, g)
    return out


def cmd_generate(args) -> int:
    params = {"base": args.base}
    for key in ("p", "max_degree", "max_dim", "max_size", "index"):
        v = getattr(args, key)
        if v is not None:
            params[key] = v
    _write(dumps(generate_fixture(args.kind, params, args.seed)), args.out)
    return EXIT_OK


def cmd_replay(args) -> int:
    from .scenario import parse_scenario
    from .suites import replay

    report = _load_json(args.report)
    if not isinstance(report, dict) or "scenario" not in report or "suites" not in report:
        raise ScenarioError("$", "not a report")
    sc_doc = report["scenario"]
    sc = parse_scenario(sc_doc, seed=sc_doc.get("seed"), samples=sc_doc.get("samples"))
    total = reproduced = 0
    for name, s in report["suites"].items():
        if args.suite and name != args.suite:
            continue
        for f in s["failures"]:
            if args.case is not None and f["case"] != args.case:
                continue
            total += 1
            out = replay(sc, name, f["case"], f["descriptor"])
            again = not out.ok
            reproduced += again
            print(f"{name} case {f['case']}: {'reproduced' if again else 'NOT reproduced'}")
    print(f"{reproduced}/{total} failures reproduced")
    return EXIT_OK if reproduced == total else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="reedycheck", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)
    r = sub.add_parser("run", help="run the suites of a scenario")
    r.add_argument("--scenario", required=True)
    r.add_argument("--seed", type=int)
    r.add_argument("--samples", type=int)
    r.add_argument("--out")
    r.add_argument("--timings", action="store_true", help="add wall-clock times (breaks byte-identical reports)")
    r.set_defaults(func=cmd_run)
    sub.add_parser("list-builtins", help="catalog of builtin Reedy categories").set_defaults(func=cmd_list)
    g = sub.add_parser("generate", help="generate a serialized random fixture")
    g.add_argument("--kind", required=True, choices=FIXTURE_KINDS)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--base", default="chain", choices=("chain", "finset"))
    g.add_argument("--p", type=int)
    g.add_argument("--max-degree", dest="max_degree", type=int)
    g.add_argument("--max-dim", dest="max_dim", type=int)
    g.add_argument("--max-size", dest="max_size", type=int)
    g.add_argument("--index")
    g.add_argument("--out")
    g.set_defaults(func=cmd_generate)
    rp = sub.add_parser("replay", help="re-run the failures recorded in a report")
    rp.add_argument("report")
    rp.add_argument("--suite")
    rp.add_argument("--case", type=int)
    rp.set_defaults(func=cmd_replay)
    return p


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ScenarioError as e:
        print(f"invalid input: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceLimitError as e:
        print(f"resource limit: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
