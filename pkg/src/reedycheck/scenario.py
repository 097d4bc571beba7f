"""Scenario parsing and the environment every suite runs in."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .category import DEFAULT_CAP
from .chain import ChainComplexes
from .corners import ModelContext
from .diagram import Diagram, NatTrans
from .enrichment import ModuleContext
from .fincat import ReedyStructure, StructuralError, validate_reedy
from .finset import FinSetObject, FinSets
from . import fixtures as fx
from .serialize import ScenarioError, reedy_from_json, reedy_to_json

SCENARIO_SCHEMA = "reedycheck.scenario/1"
CAP_ENV = "REEDYCHECK_CAP"


@dataclass(frozen=True)
class BaseSpec:
    kind: str = "chain"
    p: int = 2
    max_degree: int = 1
    max_dim: int = 2
    max_size: int = 3

    def to_json(self) -> dict:
        if self.kind == "finset":
            return {"kind": "finset", "max_size": self.max_size}
        return {"kind": "chain", "p": self.p, "max_degree": self.max_degree, "max_dim": self.max_dim}


@dataclass(frozen=True)
class Scenario:
    base: BaseSpec
    index: ReedyStructure
    inner_index: ReedyStructure | None = None
    suites: tuple = ()
    samples: int = 20
    seed: int = 0
    caps: dict = field(default_factory=lambda: {"enumeration": DEFAULT_CAP})

    def to_json(self) -> dict:
        return {
            "schema": SCENARIO_SCHEMA,
            "base": self.base.to_json(),
            "index": reedy_to_json(self.index),
            "module": "self" if self.inner_index is None else {"diagram_over": reedy_to_json(self.inner_index)},
            "suites": list(self.suites),
            "samples": self.samples,
            "seed": self.seed,
            "caps": dict(sorted(self.caps.items())),
        }


def _int(d: dict, key: str, path: str, default: Any = None, lo: int | None = None) -> int:
    v = d.get(key, default)
    name = f"{path}.{key}" if path else key
    if v is None:
        raise ScenarioError(name, "missing")
    if isinstance(v, bool) or not isinstance(v, int):
        raise ScenarioError(name, f"expected an integer, got {v!r}")
    if lo is not None and v < lo:
        raise ScenarioError(name, f"must be at least {lo}")
    return v


def parse_base(d: Any, path: str = "base") -> BaseSpec:
    if isinstance(d, str):
        d = {"kind": d}
    if not isinstance(d, dict):
        raise ScenarioError(path, "expected 'finset', 'chain' or an object with a kind")
    kind = d.get("kind")
    if kind == "finset":
        return BaseSpec("finset", max_size=_int(d, "max_size", path, 3, 0))
    if kind == "chain":
        p = _int(d, "p", path, 2, 2)
        try:
            ChainComplexes(p)
        except ValueError as e:
            raise ScenarioError(f"{path}.p", str(e)) from None
        return BaseSpec("chain", p=p, max_degree=_int(d, "max_degree", path, 1, 0), max_dim=_int(d, "max_dim", path, 2, 0))
    raise ScenarioError(f"{path}.kind", f"unknown base {kind!r}; expected 'finset' or 'chain'")


def _check_reedy(r: ReedyStructure, path: str) -> None:
    try:
        rep = validate_reedy(r)
    except StructuralError as e:
        raise ScenarioError(path, str(e)) from None
    if not rep.ok:
        raise ScenarioError(path, "; ".join(rep.violations))


def parse_scenario(d: Any, seed: int | None = None, samples: int | None = None) -> Scenario:
    """Validate a scenario document; errors name the offending field."""
    from .suites import SUITES

    if not isinstance(d, dict):
        raise ScenarioError("$", "scenario must be a JSON object")
    schema = d.get("schema", SCENARIO_SCHEMA)
    if schema != SCENARIO_SCHEMA:
        raise ScenarioError("schema", f"unsupported schema {schema!r}; expected {SCENARIO_SCHEMA!r}")
    base = parse_base(d.get("base", "chain"))
    if "index" not in d:
        raise ScenarioError("index", "missing")
    r = reedy_from_json(d["index"], "index")
    _check_reedy(r, "index")
    module = d.get("module", "self")
    inner = None
    if isinstance(module, dict):
        if "diagram_over" not in module:
            raise ScenarioError("module", "expected 'self' or {'diagram_over': index}")
        inner = reedy_from_json(module["diagram_over"], "module.diagram_over")
        _check_reedy(inner, "module.diagram_over")
    elif module != "self":
        raise ScenarioError("module", f"unknown module {module!r}")
    suites = d.get("suites")
    if not isinstance(suites, list) or not suites:
        raise ScenarioError("suites", "expected a non-empty list of suite names")
    for k, s in enumerate(suites):
        if s not in SUITES:
            raise ScenarioError(f"suites[{k}]", f"unknown suite {s!r}; known: {sorted(SUITES)}")
        if SUITES[s].needs_model and base.kind != "chain":
            raise ScenarioError(f"suites[{k}]", f"suite {s!r} needs the chain base")
    n = samples if samples is not None else _int(d, "samples", "", 20, 1)
    if n < 1:
        raise ScenarioError("samples", "must be positive")
    sd = seed if seed is not None else _int(d, "seed", "", 0)
    if not 0 <= sd < 2**64:
        raise ScenarioError("seed", "must be a 64-bit unsigned integer")
    caps_in = d.get("caps", {})
    if not isinstance(caps_in, dict):
        raise ScenarioError("caps", "expected an object")
    caps = {"enumeration": DEFAULT_CAP}
    for k, v in caps_in.items():
        if k not in caps:
            raise ScenarioError(f"caps.{k}", f"unknown cap; known: {sorted(caps)}")
        caps[k] = _int(caps_in, k, "caps", lo=1)
    env_cap = os.environ.get(CAP_ENV)
    if env_cap:
        try:
            caps["enumeration"] = int(env_cap)
        except ValueError:
            raise ScenarioError(CAP_ENV, f"expected an integer, got {env_cap!r}") from None
        if caps["enumeration"] < 1:
            raise ScenarioError(CAP_ENV, "must be positive")
    return Scenario(base, r, inner, tuple(suites), n, sd, caps)


class Env:
    """Categories, models and samplers for one scenario."""

    def __init__(self, sc: Scenario):
        self.sc = sc
        self.r = sc.index
        self.index = sc.index.base
        b = sc.base
        self.chain = b.kind == "chain"
        self.M = ChainComplexes(b.p) if self.chain else FinSets(sc.caps["enumeration"])
        if self.chain:
            self.M.cap = sc.caps["enumeration"]
        self.params = fx.ChainParams(b.max_degree, b.max_dim)
        self.max_size = b.max_size
        self.inner_r = sc.inner_index
        self.ctx = ModuleContext(self.M, self.index, None if self.inner_r is None else self.inner_r.base)
        self.mc = ModelContext(self.ctx, self.r, self.inner_r) if self.chain else None
        self._cache: dict = {}

    @property
    def nested(self) -> bool:
        return self.inner_r is not None

    # -- objects -----------------------------------------------------------------------------
    def sample_m(self, rng, small: bool = False, acyclic: bool = False):
        if self.chain:
            return fx.random_complex(self.M.p, rng, self.params, acyclic=acyclic)
        top = min(self.max_size, 2) if small else self.max_size
        return FinSetObject(int(rng.integers(0, top + 1)))

    def sample_diagram(self, cat, r: ReedyStructure, rng, sample_object, small: bool = False) -> Diagram:
        if not self.chain and cat is self.M:
            try:
                top = min(self.max_size, 2) if small else self.max_size
                return fx.random_finset_diagram(r.base, rng, top)
            except RuntimeError:
                pass
        return fx.random_diagram(cat, r, rng, sample_object)

    def sample_c(self, rng, small: bool = False):
        if not self.nested:
            return self.sample_m(rng, small)
        return self.sample_diagram(self.M, self.inner_r, rng, lambda g: self.sample_m(g, True), True)

    def sample_mi(self, rng, small: bool = False) -> Diagram:
        return self.sample_diagram(self.M, self.r, rng, lambda g: self.sample_m(g, small), small)

    def sample_ci(self, rng, small: bool = False) -> Diagram:
        if not self.nested:
            return self.sample_mi(rng, small)
        return fx.random_diagram(self.ctx.Ccat, self.r, rng, lambda g: self.sample_c(g, True))

    def sample_morphism(self, cat, a, b, rng):
        return fx.random_morphism(cat, a, b, rng)

    # -- model-level samplers (chain base) -----------------------------------------------------
    def cofibrant_c(self, rng, trivial: bool):
        if not self.nested:
            return fx.random_complex(self.M.p, rng, self.params, acyclic=trivial)
        cm = self.mc.c_model
        zero = cm.cat.constant(self.M.initial())
        return fx.reedy_cofibration(cm, zero, rng, trivial, self.params).target

    def fibrant_c(self, rng, trivial: bool):
        if not self.nested:
            return fx.random_complex(self.M.p, rng, self.params, acyclic=trivial)
        cm = self.mc.c_model
        term = cm.cat.constant(self.M.terminal())
        return fx.reedy_fibration(cm, term, rng, trivial, self.params).source

    def cof_m(self, rng, trivial: bool):
        return fx.base_cofibration(self.M, rng, trivial, self.params)

    def cof_c(self, rng, trivial: bool):
        if not self.nested:
            return self.cof_m(rng, trivial)
        cm = self.mc.c_model
        return fx.reedy_cofibration(cm, self.sample_c(rng), rng, trivial, self.params)

    def cof_mi(self, rng, trivial: bool) -> NatTrans:
        return fx.reedy_cofibration(self.mc.mi_model, self.sample_mi(rng), rng, trivial, self.params)

    def cof_ci(self, rng, trivial: bool, source: Diagram | None = None) -> NatTrans:
        X = source if source is not None else self.sample_ci(rng)
        return fx.reedy_cofibration(self.mc.ci_model, X, rng, trivial, self.params, self.cofibrant_c)

    def fib_ci(self, rng, trivial: bool) -> NatTrans:
        return fx.reedy_fibration(self.mc.ci_model, self.sample_ci(rng), rng, trivial, self.params, self.fibrant_c)

    def nonzero_c(self):
        """A nonzero object of ``C`` with nonzero homology."""
        from .chain import sphere

        s = sphere(self.M.p, 0)
        if not self.nested:
            return s
        return self.mc.c_model.cat.constant(s)
