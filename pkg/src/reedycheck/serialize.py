"""JSON forms of complexes, maps, finite sets, categories and diagrams."""

from __future__ import annotations

import json
from typing import Any

import numpy as np

from .category import Category
from .chain import ChainComplex, ChainComplexes, ChainMap, chain_map, complex_
from .diagram import Diagram, DiagramCategory, NatTrans
from .fincat import FiniteCategory, ReedyStructure, StructuralError, builtin, make_category
from .finset import FinSetMap, FinSetObject, FinSets


class ScenarioError(ValueError):
    """Invalid input data; ``path`` names the offending field."""

    def __init__(self, path: str, msg: str):
        super().__init__(f"{path}: {msg}")
        self.path = path


def complex_to_json(c: ChainComplex) -> dict:
    return {
        "p": c.p,
        "lo": c.lo,
        "dims": list(c.dims),
        "differentials": [m.ravel().tolist() for m in c.diffs],
    }


def complex_from_json(d: dict, path: str = "complex") -> ChainComplex:
    try:
        p, lo, dims = int(d["p"]), int(d.get("lo", 0)), [int(x) for x in d["dims"]]
        diffs = d.get("differentials", [])
        if len(diffs) not in (0, max(len(dims) - 1, 0)):
            raise ScenarioError(f"{path}.differentials", f"expected {len(dims) - 1} matrices")
        mats = [np.array(m, dtype=np.int64).reshape(dims[k], dims[k + 1]) for k, m in enumerate(diffs)]
    except ScenarioError:
        raise
    except (KeyError, TypeError, ValueError) as e:
        raise ScenarioError(path, f"malformed complex ({e})") from None
    c = complex_(p, lo, dims, mats)
    from .chain import is_complex

    if not is_complex(c):
        raise ScenarioError(path, "d . d != 0")
    return c


def chain_map_to_json(f: ChainMap) -> dict:
    return {
        "source": complex_to_json(f.source),
        "target": complex_to_json(f.target),
        "components": {str(n): m.ravel().tolist() for n, m in sorted(f.comps.items())},
    }


def chain_map_from_json(d: dict, path: str = "map") -> ChainMap:
    src = complex_from_json(d["source"], f"{path}.source")
    tgt = complex_from_json(d["target"], f"{path}.target")
    comps = {}
    for k, v in d.get("components", {}).items():
        n = int(k)
        comps[n] = np.array(v, dtype=np.int64).reshape(tgt.dim(n), src.dim(n))
    f = chain_map(src, tgt, comps)
    if not ChainComplexes(src.p).is_chain_map(f):
        raise ScenarioError(path, "components do not commute with differentials")
    return f


def finset_map_to_json(f: FinSetMap) -> dict:
    return {"source": f.source.size, "target": f.target.size, "table": list(f.table)}


def category_to_json(c: FiniteCategory) -> dict:
    return {
        "objects": c.n_objects,
        "arrows": [[s, t] for s, t in zip(c.sources, c.targets)],
        "identities": list(c.identities),
        "composition": c.comp.ravel().tolist(),
    }


def category_from_json(d: dict, path: str = "index") -> FiniteCategory:
    try:
        return make_category(d["objects"], [tuple(a) for a in d["arrows"]], d["identities"], d["composition"])
    except KeyError as e:
        raise ScenarioError(path, f"missing field {e}") from None
    except StructuralError as e:
        raise ScenarioError(path, str(e)) from None


def reedy_to_json(r: ReedyStructure) -> Any:
    if r.name:
        return r.name
    out = category_to_json(r.base)
    out.update({"degree": list(r.degree), "plus": sorted(r.plus), "minus": sorted(r.minus)})
    return out


def reedy_from_json(d: Any, path: str = "index") -> ReedyStructure:
    if isinstance(d, str):
        try:
            return builtin(d)
        except KeyError:
            raise ScenarioError(path, f"unknown builtin {d!r}") from None
    if not isinstance(d, dict):
        raise ScenarioError(path, "expected a builtin name or raw category data")
    base = category_from_json(d, path)
    for key in ("degree", "plus", "minus"):
        if key not in d:
            raise ScenarioError(f"{path}.{key}", "missing")
    if len(d["degree"]) != base.n_objects:
        raise ScenarioError(f"{path}.degree", "degree function must cover every object")
    return ReedyStructure(base, tuple(int(x) for x in d["degree"]), frozenset(d["plus"]), frozenset(d["minus"]))


def morphism_to_json(cat: Category, f) -> Any:
    if isinstance(cat, ChainComplexes):
        return chain_map_to_json(f)
    if isinstance(cat, FinSets):
        return finset_map_to_json(f)
    if isinstance(cat, DiagramCategory):
        return {
            "source": diagram_to_json(cat.inner, f.source),
            "target": diagram_to_json(cat.inner, f.target),
            "components": [morphism_to_json(cat.inner, c) for c in f.comps],
        }
    return repr(f)


def object_to_json(cat: Category, x) -> Any:
    if isinstance(cat, ChainComplexes):
        return complex_to_json(x)
    if isinstance(cat, FinSets):
        return x.size
    if isinstance(cat, DiagramCategory):
        return diagram_to_json(cat.inner, x)
    return repr(x)


def diagram_to_json(cat: Category, d: Diagram) -> dict:
    idx = d.index
    return {
        "objects": [object_to_json(cat, o) for o in d.objs],
        "arrows": {str(u): _arrow_payload(cat, d.arrs[u]) for u in idx.non_identity_arrows()},
    }


def _arrow_payload(cat: Category, f) -> Any:
    if isinstance(cat, ChainComplexes):
        return {str(n): m.ravel().tolist() for n, m in sorted(f.comps.items())}
    if isinstance(cat, FinSets):
        return list(f.table)
    if isinstance(cat, DiagramCategory):
        return [_arrow_payload(cat.inner, c) for c in f.comps]
    return repr(f)


def object_from_json(cat: Category, d: Any, path: str):
    if isinstance(cat, ChainComplexes):
        c = complex_from_json(d, path)
        if c.p != cat.p:
            raise ScenarioError(path, f"complex over GF({c.p}) in a GF({cat.p}) base")
        return c
    if isinstance(cat, FinSets):
        if not isinstance(d, int) or d < 0:
            raise ScenarioError(path, "finite set size must be a non-negative integer")
        return FinSetObject(d)
    if isinstance(cat, DiagramCategory):
        return diagram_from_json(cat, d, path)
    raise ScenarioError(path, f"cannot read objects of {cat!r}")


def _arrow_from_payload(cat: Category, src, tgt, d: Any, path: str):
    if isinstance(cat, ChainComplexes):
        comps = {int(k): np.array(v, dtype=np.int64).reshape(tgt.dim(int(k)), src.dim(int(k))) for k, v in d.items()}
        return chain_map(src, tgt, comps)
    if isinstance(cat, FinSets):
        try:
            return FinSetMap(src, tgt, tuple(int(x) for x in d))
        except ValueError as e:
            raise ScenarioError(path, str(e)) from None
    if isinstance(cat, DiagramCategory):
        comps = [
            _arrow_from_payload(cat.inner, s, t, c, f"{path}[{k}]")
            for k, (s, t, c) in enumerate(zip(src.objs, tgt.objs, d))
        ]
        return NatTrans(src, tgt, tuple(comps))
    raise ScenarioError(path, f"cannot read morphisms of {cat!r}")


def diagram_from_json(D: DiagramCategory, d: dict, path: str = "diagram") -> Diagram:
    from .diagram import FunctorialityError

    idx = D.index
    try:
        objs = [object_from_json(D.inner, o, f"{path}.objects[{k}]") for k, o in enumerate(d["objects"])]
    except KeyError:
        raise ScenarioError(path, "missing objects") from None
    if len(objs) != idx.n_objects:
        raise ScenarioError(f"{path}.objects", f"expected {idx.n_objects} objects")
    arrs = {}
    for k, v in d.get("arrows", {}).items():
        u = int(k)
        arrs[u] = _arrow_from_payload(D.inner, objs[idx.sources[u]], objs[idx.targets[u]], v, f"{path}.arrows.{k}")
    try:
        return D.diagram(objs, arrs)
    except FunctorialityError as e:
        raise ScenarioError(path, str(e)) from None


def nat_from_json(D: DiagramCategory, d: dict, path: str = "map") -> NatTrans:
    src = diagram_from_json(D, d["source"], f"{path}.source")
    tgt = diagram_from_json(D, d["target"], f"{path}.target")
    comps = [
        _arrow_from_payload(D.inner, s, t, _component_payload(D.inner, c), f"{path}.components[{k}]")
        for k, (s, t, c) in enumerate(zip(src.objs, tgt.objs, d["components"]))
    ]
    return D.nat(src, tgt, comps)


def _component_payload(cat: Category, c: Any) -> Any:
    if isinstance(cat, ChainComplexes):
        return c["components"]
    if isinstance(cat, FinSets):
        return c["table"]
    if isinstance(cat, DiagramCategory):
        return [_component_payload(cat.inner, x) for x in c["components"]]
    return c


def dumps(obj: Any) -> str:
    """Canonical JSON: sorted keys, fixed separators, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, separators=(",", ": ")) + "\n"
