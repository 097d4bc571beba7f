"""Verification suites: case planning, per-case execution and report assembly.

A suite plans a list of JSON case descriptors and runs each one with its own
generator seeded from ``(master seed, suite, case index)``; results are
therefore independent of evaluation order and any case can be replayed from
its descriptor and seed alone.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Any, Callable

import numpy as np

from .category import ResourceLimitError
from .chain import COFIB_TRIVFIB
from .corners import LEMMA7, PROP1, THM1, lemma7_fibration_side, lemma8_check, pushout_product, unit_axiom_check
from .diagram import Diagram, NatTrans, check_functorial, coreduction_check, reduction_check
from .enrichment import ADJUNCTIONS, eq1_check, verify_adjunction, yoneda_module_check, yoneda_monoidal_check
from .fincat import is_direct
from .fixtures import all_finset_diagrams, case_seed
from .oracles import hom_end_check, kunneth_check, quasi_iso_cone_check, universal_check
from .reedy import restrict_plus
from .scenario import Env, Scenario
from .serialize import diagram_to_json, morphism_to_json, object_to_json

REPORT_SCHEMA = "reedycheck.report/1"
TOOL_VERSION = "0.1.0"


@dataclass
class Outcome:
    """Result of one case. ``ok`` is whether the checked property held."""

    ok: bool
    detail: list = field(default_factory=list)
    witness: Any = None
    resource: bool = False


@dataclass(frozen=True)
class Suite:
    name: str
    plan: Callable[[Env, int], tuple[str, list]]
    run: Callable[[Env, Any, np.random.Generator], Outcome]
    needs_model: bool = False
    negative: bool = False


def _sampled(env: Env, n: int) -> tuple[str, list]:
    if env.index.n_objects == 0:
        return "exhaustive", [{"sample": 0}]
    return "sampled", [{"sample": k} for k in range(n)]


def _trivial_pattern(k: int) -> tuple[bool, bool]:
    return [(False, False), (True, False), (False, True), (True, True)][k % 4]


# -- Yoneda-type suites --------------------------------------------------------------------------


def _eq1_plan(env: Env, n: int):
    if not env.chain and env.r.name in ("terminal", "arrow"):
        return "exhaustive", [{"diagram": k} for k in range(len(_eq1_fixtures(env)))]
    return _sampled(env, n)


def _eq1_fixtures(env: Env) -> list:
    if "eq1" not in env._cache:
        env._cache["eq1"] = list(all_finset_diagrams(env.index, env.max_size))
    return env._cache["eq1"]


def _eq1_run(env: Env, desc, rng) -> Outcome:
    Md = _eq1_fixtures(env)[desc["diagram"]] if "diagram" in desc else env.sample_mi(rng)
    fails = []
    for i in env.index.objects:
        w = eq1_check(env.M, Md, i)
        fails += [f"object {i}: {m}" for m in w.failures()]
    return Outcome(not fails, fails, {"diagram": diagram_to_json(env.M, Md)})


def _yon_monoidal_run(env: Env, desc, rng) -> Outcome:
    Md = env.sample_mi(rng, small=True)
    w = yoneda_monoidal_check(env.ctx, Md)
    return Outcome(w.ok, w.failures(), {"diagram": diagram_to_json(env.M, Md)})


def _yon_module_run(env: Env, desc, rng) -> Outcome:
    X = env.sample_ci(rng, small=True)
    w = yoneda_module_check(env.ctx, X)
    return Outcome(w.ok, w.failures(), {"diagram": diagram_to_json(env.ctx.Ccat, X)})


def _coreduction_run(env: Env, desc, rng) -> Outcome:
    X = env.sample_ci(rng, small=True)
    w = coreduction_check(env.ctx.C, X)
    return Outcome(w.ok, w.failures(), {"diagram": diagram_to_json(env.ctx.Ccat, X)})


def _reduction_run(env: Env, desc, rng) -> Outcome:
    X = env.sample_ci(rng, small=True)
    w = reduction_check(env.ctx.C, X)
    return Outcome(w.ok, w.failures(), {"diagram": diagram_to_json(env.ctx.Ccat, X)})


# -- adjunctions ---------------------------------------------------------------------------------


def _adj_objects(env: Env, name: str, rng):
    """``(a, b, c)`` with ``a`` in cat1, ``b`` in cat2, ``c`` in cat0."""
    m = lambda: env.sample_m(rng, small=True)
    mi = lambda: env.sample_mi(rng, small=True)
    c = lambda: env.sample_c(rng, small=True)
    ci = lambda: env.sample_ci(rng, small=True)
    return {
        "L1": (m, mi, mi),
        "L6": (m, ci, ci),
        "L3": (mi, c, ci),
        "P2": (mi, ci, ci),
    }[name]


def _adj_run(name: str):
    def run(env: Env, desc, rng) -> Outcome:
        adj = ADJUNCTIONS[name](env.ctx)
        sa, sb, sc = _adj_objects(env, name, rng)
        a, b, c = sa(), sb(), sc()
        f = env.sample_morphism(adj.cat1, sa(), a, rng)
        g = env.sample_morphism(adj.cat2, sb(), b, rng)
        c2 = sc()
        h = env.sample_morphism(adj.cat0, c, c2, rng)
        samples = [(f, None, None), (None, g, None), (None, None, h), (f, g, h)]
        rep = verify_adjunction(adj, a, b, c, samples=samples, rng=rng)
        wit = {
            "a": object_to_json(adj.cat1, a),
            "b": object_to_json(adj.cat2, b),
            "c": object_to_json(adj.cat0, c),
            "hom_sizes": list(rep.sizes),
        }
        if rep.counterexample is not None:
            wit["counterexample"] = rep.counterexample
        return Outcome(rep.ok, rep.witness.failures(), wit)

    return run


# -- model suites --------------------------------------------------------------------------------


def _corner_witness(env: Env, rep, pairing: str, fcat, gcat, f, g) -> dict:
    return {
        "pairing": pairing,
        "f": morphism_to_json(fcat, f),
        "g": morphism_to_json(gcat, g),
        "input_flags": list(rep.input_flags),
        "flags": rep.flags,
        "required": rep.required,
        "offending": rep.failures,
    }


def _pp_run(pairing: str):
    def run(env: Env, desc, rng) -> Outcome:
        tf, tg = _trivial_pattern(desc["sample"])
        mc = env.mc
        if pairing == PROP1:
            f, g = env.cof_m(rng, tf), env.cof_ci(rng, tg)
        elif pairing == THM1:
            f, g = env.cof_mi(rng, tf), env.cof_ci(rng, tg)
        else:
            f, g = env.cof_mi(rng, tf), env.cof_c(rng, tg)
        Am, Bm, _, _, _ = mc.pairing(pairing)
        rep = pushout_product(mc, f, g, pairing)
        fails = [f"{pairing}: {k} required" for k, v in rep.required.items() if v and not rep.flags[k]]
        out = Outcome(rep.ok, fails, {"pushout_product": _corner_witness(env, rep, pairing, Am.cat, Bm.cat, f, g)})
        if pairing == LEMMA7:
            fh, gh = env.cof_c(rng, tf), env.fib_ci(rng, tg)
            hrep = lemma7_fibration_side(mc, fh, gh)
            hf = [f"hom corner: {k} required" for k, v in hrep.required.items() if v and not hrep.flags[k]]
            out.ok = out.ok and hrep.ok
            out.detail += hf
            out.witness["hom_corner"] = _corner_witness(env, hrep, "lemma7_hom", mc.c_model.cat, mc.ci_model.cat, fh, gh)
        return out

    return run


def _lemma8_plan(env: Env, n: int):
    if not is_direct(env.r):
        return "exhaustive", []
    objs = env.index.objects
    return "exhaustive", [{"p": p, "q": q, "trivial": t} for p in objs for q in objs for t in (False, True)]


def _lemma8_run(env: Env, desc, rng) -> Outcome:
    f = env.cof_m(rng, desc["trivial"])
    rep = lemma8_check(env.mc, desc["p"], desc["q"], f)
    fails = []
    if not rep.cofibrant:
        fails.append("representable tensor is not cofibrant")
    if not rep.ok and rep.cofibrant:
        fails.append("tensored map lost the cofibration status of f")
    return Outcome(rep.ok, fails, {
        "p": rep.p, "q": rep.q, "f": morphism_to_json(env.M, f),
        "f_flags": rep.f_flags, "tensored_flags": rep.tensored_flags,
    })


def _unit_run(env: Env, desc, rng) -> Outcome:
    k = desc["sample"]
    CI, Cc = env.ctx.CI, env.ctx.Ccat
    zero = CI.constant(Cc.initial())
    if k % 4 == 0:
        X = zero
    elif k % 4 == 1 and not env.nested:
        X = env.ctx.h(int(rng.integers(env.index.n_objects)))
    else:
        X = env.cof_ci(rng, False, source=zero).target
    rep = unit_axiom_check(env.mc, X)
    fails = []
    if rep.cofibrant_input and not rep.replacement_flags["cofibration"]:
        fails.append("unit replacement is not a cofibration")
    if rep.cofibrant_input and not rep.tensored_flags["weak_equivalence"]:
        fails.append("replacement tensored with X is not a weak equivalence")
    if not rep.cofibrant_input:
        fails.append("sampled X is not cofibrant")
    return Outcome(rep.ok and rep.cofibrant_input, fails, {"X": diagram_to_json(Cc, X)})


def _restriction_run(env: Env, desc, rng) -> Outcome:
    k = desc["sample"]
    model = env.mc.ci_model
    if k % 2 == 0:
        g = env.cof_ci(rng, bool(rng.integers(2)))
    else:
        X, Y = env.sample_ci(rng), env.sample_ci(rng)
        g = env.sample_morphism(model.cat, X, Y, rng)
    full = model.classify(g, ("cof", "we"))
    rg, sub = restrict_plus(model, g)
    part = sub.classify(rg, ("cof", "we"))
    fails = []
    if full.is_cofibration != part.is_cofibration:
        fails.append("cofibration flag changed under restriction")
    if full.trivial_cofibration != part.trivial_cofibration:
        fails.append("trivial cofibration flag changed under restriction")
    return Outcome(not fails, fails, {
        "g": morphism_to_json(model.cat, g),
        "full": full.as_dict(), "restricted": part.as_dict(),
    })


# -- negative controls ------------------------------------------------------------------------------


MUTATIONS = ("broken_functoriality", "non_mono_cofibration", "non_acyclic_trivial_cofibration")


def _neg_plan(env: Env, n: int):
    if env.index.n_objects == 0:
        return "exhaustive", []
    kinds = MUTATIONS if env.chain else MUTATIONS[:1]
    return "sampled", [{"sample": k, "mutation": kinds[k % len(kinds)]} for k in range(n)]


def _mutable_arrows(idx) -> list[int]:
    composite = set()
    nonid = idx.non_identity_arrows()
    for g in nonid:
        for f in nonid:
            h = int(idx.comp[g, f])
            if h >= 0:
                composite.add(h)
    return sorted(composite) + [idx.identities[i] for i in idx.objects]


def _other_morphism(env: Env, cat, f, rng):
    """A morphism with the same ends as ``f`` but different from it, or ``None``."""
    a, b = cat.source(f), cat.target(f)
    if cat.linear:
        basis = cat.hom(a, b)
        if not basis:
            return None
        for _ in range(20):
            e = env.sample_morphism(cat, a, b, rng)
            g = cat.add(f, e)
            if not cat.equal(g, f):
                return g
        return cat.add(f, basis[0])
    for g in cat.hom(a, b):
        if not cat.equal(g, f):
            return g
    return None


def _neg_functoriality(env: Env, rng) -> Outcome:
    cat = env.M
    idx = env.index
    for _ in range(100):
        X = env.sample_mi(rng)
        arrows = _mutable_arrows(idx)
        order = [arrows[k] for k in rng.permutation(len(arrows))]
        for u in order:
            g = _other_morphism(env, cat, X.arrs[u], rng)
            if g is not None:
                arrs = list(X.arrs)
                arrs[u] = g
                bad = Diagram(idx, X.objs, tuple(arrs))
                caught = not check_functorial(cat, bad).ok
                return Outcome(not caught, [f"arrow {idx.arrow_name(u)} replaced"], {
                    "mutation": "broken_functoriality", "arrow": u, "diagram": diagram_to_json(cat, bad),
                })
    raise RuntimeError("could not find a mutable arrow")


def _neg_model(env: Env, kind: str, rng) -> Outcome:
    ctx, mc = env.ctx, env.mc
    CI = ctx.CI
    model = mc.ci_model
    i = int(rng.integers(env.index.n_objects))
    E = ctx.l3_tensor(ctx.h(i), env.nonzero_c())
    if kind == "non_mono_cofibration":
        g = env.cof_ci(rng, False)
        cop = CI.coproduct([g.source, E])
        bad = cop.mediate([g, CI.zero(E, g.target)], g.target)
        caught = not model.classify(bad, ("cof",)).is_cofibration
    else:
        g = env.cof_ci(rng, True)
        cop = CI.coproduct([g.target, E])
        bad = CI.compose(cop.legs[0], g)
        caught = not model.classify(bad).trivial_cofibration
    return Outcome(not caught, [f"{kind} at object {i}"], {
        "mutation": kind, "object": i, "map": morphism_to_json(CI, bad),
    })


def _neg_run(env: Env, desc, rng) -> Outcome:
    if desc["mutation"] == "broken_functoriality":
        return _neg_functoriality(env, rng)
    return _neg_model(env, desc["mutation"], rng)


# -- oracles ------------------------------------------------------------------------------------


def _oracle_run(env: Env, desc, rng) -> Outcome:
    M, idx = env.M, env.index
    fails = []
    X, Y = env.sample_mi(rng, small=True), env.sample_mi(rng, small=True)
    w = hom_end_check(env.ctx, X, Y)
    fails += w.failures()
    T = env.sample_m(rng, small=True)
    for lim in (True, False):
        w = universal_check(M, idx, X.objs, X.arrs, T, lim, rng)
        fails += [("limit: " if lim else "colimit: ") + m for m in w.failures()]
    wit = {"X": diagram_to_json(M, X), "Y": diagram_to_json(M, Y), "T": object_to_json(M, T)}
    if env.chain:
        a, b = env.sample_m(rng), env.sample_m(rng)
        if not kunneth_check(M, a, b):
            fails.append("Kunneth dimension identity")
        f = env.sample_morphism(M, a, b, rng)
        if not quasi_iso_cone_check(f):
            fails.append("quasi-isomorphism versus acyclic cone")
        wit.update({"A": object_to_json(M, a), "B": object_to_json(M, b)})
    return Outcome(not fails, fails, wit)


SUITES: dict[str, Suite] = {
    s.name: s
    for s in [
        Suite("eq1", _eq1_plan, _eq1_run),
        Suite("yoneda_monoidal", _sampled, _yon_monoidal_run),
        Suite("yoneda_module", _sampled, _yon_module_run),
        Suite("coreduction", _sampled, _coreduction_run),
        Suite("reduction", _sampled, _reduction_run),
        Suite("adj_l1", _sampled, _adj_run("L1")),
        Suite("adj_l3", _sampled, _adj_run("L3")),
        Suite("adj_l6", _sampled, _adj_run("L6")),
        Suite("adj_p2", _sampled, _adj_run("P2")),
        Suite("prop1", _sampled, _pp_run(PROP1), needs_model=True),
        Suite("lemma7", _sampled, _pp_run(LEMMA7), needs_model=True),
        Suite("lemma8", _lemma8_plan, _lemma8_run, needs_model=True),
        Suite("thm1", _sampled, _pp_run(THM1), needs_model=True),
        Suite("unit_axiom", _sampled, _unit_run, needs_model=True),
        Suite("restriction", _sampled, _restriction_run, needs_model=True),
        Suite("negative_controls", _neg_plan, _neg_run, negative=True),
        Suite("oracles", _sampled, _oracle_run),
    ]
}


# -- execution ---------------------------------------------------------------------------------------


def run_case(env: Env, suite: str, k: int, desc) -> tuple[Outcome, int]:
    seed = case_seed(env.sc.seed, f"{suite}:{k}")
    rng = np.random.default_rng(seed)
    try:
        out = SUITES[suite].run(env, desc, rng)
    except ResourceLimitError as e:
        out = Outcome(False, [f"resource limit: {e}"], None, resource=True)
    return out, seed


def run_suite(env: Env, name: str, timings: bool = False) -> dict:
    suite = SUITES[name]
    t0 = time.perf_counter()
    mode, cases = suite.plan(env, env.sc.samples)
    passes, failures = 0, []
    for k, desc in enumerate(cases):
        out, seed = run_case(env, name, k, desc)
        if out.ok:
            passes += 1
        else:
            failures.append({
                "case": k, "descriptor": desc, "case_seed": seed,
                "kind": "resource" if out.resource else ("detected" if suite.negative else "violation"),
                "detail": out.detail, "witness": out.witness,
            })
    rec = {"mode": mode, "cases": len(cases), "passes": passes, "failures": failures}
    if suite.negative:
        resource = sum(1 for f in failures if f["kind"] == "resource")
        rec["injected"] = len(cases)
        rec["detected"] = len(failures) - resource
        rec["undetected"] = passes + resource
    if timings:
        rec["seconds"] = round(time.perf_counter() - t0, 3)
    return rec


def run(sc: Scenario, timings: bool = False) -> dict:
    """Execute every suite of a scenario; the report is deterministic unless ``timings`` is set."""
    env = Env(sc)
    t0 = time.perf_counter()
    suites = {name: run_suite(env, name, timings) for name in sc.suites}
    ok = all(
        (s["undetected"] == 0) if SUITES[n].negative else not s["failures"]
        for n, s in suites.items()
    )
    report = {
        "schema": REPORT_SCHEMA,
        "tool_version": TOOL_VERSION,
        "scenario": sc.to_json(),
        "suites": suites,
        "ok": ok,
    }
    if timings:
        report["seconds"] = round(time.perf_counter() - t0, 3)
    return report


def replay(sc: Scenario, suite: str, case: int, desc) -> Outcome:
    """Re-run one recorded case."""
    return run_case(Env(sc), suite, case, desc)[0]
