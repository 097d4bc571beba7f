import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from reedycheck import fixtures as fx
from reedycheck.chain import ChainComplexes
from reedycheck.diagram import DiagramCategory
from reedycheck.fincat import BUILTINS, builtin, validate_reedy
from reedycheck.finset import FinSets
from reedycheck.reedy import ChainModel, ReedyModel
from reedycheck.serialize import (
    ScenarioError, chain_map_from_json, chain_map_to_json, complex_from_json, complex_to_json,
    diagram_from_json, diagram_to_json, dumps, morphism_to_json, nat_from_json, reedy_from_json, reedy_to_json,
)

C = ChainComplexes(3)
seeds = st.integers(0, 2**32 - 1)


@given(seeds)
def test_complex_roundtrip(seed):
    a = fx.random_complex(3, np.random.default_rng(seed), fx.ChainParams(2, 2), lo=-1)
    b = complex_from_json(json.loads(json.dumps(complex_to_json(a))))
    assert C.same_object(a, b)


@given(seeds)
def test_chain_map_roundtrip(seed):
    rng = np.random.default_rng(seed)
    f = fx.base_cofibration(C, rng)
    assert C.equal(chain_map_from_json(chain_map_to_json(f)), f)


@given(st.sampled_from(sorted(BUILTINS)), seeds)
@settings(max_examples=30, deadline=None)
def test_diagram_and_nat_roundtrip(name, seed):
    rng = np.random.default_rng(seed)
    r = builtin(name)
    m = ReedyModel(ChainModel(C), r)
    X = fx.random_chain_diagram(m, rng, fx.ChainParams(1, 1))
    D = m.cat
    Y = diagram_from_json(D, json.loads(json.dumps(diagram_to_json(C, X))))
    assert all(C.equal(a, b) for a, b in zip(X.arrs, Y.arrs))
    g = fx.reedy_cofibration(m, X, rng, False, fx.ChainParams(1, 1))
    h = nat_from_json(D, json.loads(json.dumps(morphism_to_json(D, g))))
    assert D.equal(g, h)


def test_finset_diagram_roundtrip():
    F = FinSets()
    D = DiagramCategory(F, builtin("span").base)
    X = fx.random_finset_diagram(D.index, np.random.default_rng(0), 3)
    Y = diagram_from_json(D, diagram_to_json(F, X))
    assert all(F.equal(a, b) for a, b in zip(X.arrs, Y.arrs))


@pytest.mark.parametrize("name", sorted(BUILTINS))
def test_raw_reedy_roundtrip(name):
    r = builtin(name)
    raw = reedy_to_json(r)
    assert raw == name
    from reedycheck.fincat import ReedyStructure
    anon = ReedyStructure(r.base, r.degree, r.plus, r.minus)
    back = reedy_from_json(json.loads(json.dumps(reedy_to_json(anon))))
    assert validate_reedy(back).ok
    assert back.base.same_as(r.base) and back.plus == r.plus and back.minus == r.minus


@pytest.mark.parametrize("doc, path", [
    ({"p": 2, "dims": [1, 1], "differentials": [[1], [1]]}, "c.differentials"),
    ({"p": 2, "dims": [1, 1, 1], "differentials": [[1], [1]]}, "c"),
    ({"dims": [1]}, "c"),
])
def test_bad_complexes(doc, path):
    with pytest.raises(ScenarioError) as e:
        complex_from_json(doc, "c")
    assert e.value.path == path


def test_non_functorial_diagram_json_is_rejected():
    F = FinSets()
    D = DiagramCategory(F, builtin("composable_pair").base)
    doc = {"objects": [2, 2, 2], "arrows": {"3": [1, 0], "4": [1, 0], "5": [1, 0]}}
    with pytest.raises(ScenarioError) as e:
        diagram_from_json(D, doc, "d")
    assert e.value.path == "d"


def test_dumps_is_canonical():
    assert dumps({"b": 1, "a": [1, 2]}) == dumps({"a": [1, 2], "b": 1})
    assert dumps({}).endswith("\n")
