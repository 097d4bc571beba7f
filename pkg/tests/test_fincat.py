import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from reedycheck.fincat import (
    BUILTINS, SPEC_BUILTINS, ReedyStructure, StructuralError, builtin, from_generators, is_direct,
    is_inverse, latching_category, list_builtins, make_category, matching_category, opposite,
    opposite_reedy, plus_subcategory, product_category, validate_category, validate_reedy,
)

builtin_names = st.sampled_from(sorted(BUILTINS))


def _arrow_table():
    # arrows: id0, id1, a
    return make_category(2, [(0, 0), (1, 1), (0, 1)], [0, 1], [0, -1, -1, -1, 1, 2, 2, -1, -1])


def test_walking_arrow_from_raw_table_is_valid():
    assert validate_category(_arrow_table()).ok


def test_wrong_identity_composite_is_reported():
    comp = [0, -1, -1, -1, 1, 2, 2, -1, -1]
    comp[1 * 3 + 2] = 1  # id_1 . a = id_1
    rep = validate_category(make_category(2, [(0, 0), (1, 1), (0, 1)], [0, 1], comp))
    assert len(rep.violations) >= 1
    assert any("identity" in v or "endpoint" in v or "target" in v for v in rep.violations)


def test_missing_composite_reports_totality_violation():
    c = from_generators(3, [(0, 1), (1, 2)], lambda g, f: -1)
    rep = validate_category(c)
    assert not rep.ok
    assert any("undefined" in v or "missing" in v or "composable" in v for v in rep.violations)


@pytest.mark.parametrize("kwargs", [
    dict(n_objects=2, arrows=[(0, 0), (1, 5)], identities=[0, 1], composition=[0] * 4),
    dict(n_objects=2, arrows=[(0, 0), (1, 1)], identities=[0], composition=[0] * 4),
    dict(n_objects=2, arrows=[(0, 0), (1, 1)], identities=[0, 1], composition=[0] * 3),
    dict(n_objects=1, arrows=[(0, 0)], identities=[0], composition=[7]),
])
def test_malformed_indices_are_structural_errors(kwargs):
    with pytest.raises(StructuralError):
        make_category(**kwargs)


def test_opposite_examples():
    t = builtin("terminal").base
    assert opposite(t).same_as(t)
    a = builtin("arrow").base
    op = opposite(a)
    (f,) = op.non_identity_arrows()
    assert (op.sources[f], op.targets[f]) == (1, 0)
    span = builtin("span").base
    cospan = opposite(span)
    assert sorted((cospan.sources[f], cospan.targets[f]) for f in cospan.non_identity_arrows()) == [(1, 0), (2, 0)]


@given(builtin_names)
def test_opposite_is_an_involution(name):
    c = BUILTINS[name].base
    assert validate_category(opposite(c)).ok
    assert opposite(opposite(c)).same_as(c)


def test_product_counts():
    a = builtin("arrow").base
    sq = product_category(a, a)
    assert (sq.n_objects, sq.n_arrows) == (4, 9)
    assert validate_category(sq).ok
    mixed = product_category(opposite(a), a)
    assert (mixed.n_objects, mixed.n_arrows) == (4, 9)
    assert validate_category(mixed).ok


@given(builtin_names, builtin_names)
@settings(max_examples=30)
def test_product_counts_multiply(n1, n2):
    c, d = BUILTINS[n1].base, BUILTINS[n2].base
    p = product_category(c, d)
    assert p.n_objects == c.n_objects * d.n_objects
    assert p.n_arrows == c.n_arrows * d.n_arrows
    assert validate_category(p).ok


def test_terminal_is_product_unit():
    t = builtin("terminal").base
    c = builtin("square").base
    p = product_category(t, c)
    assert (p.n_objects, p.n_arrows) == (c.n_objects, c.n_arrows)


def test_reedy_examples():
    arrow = builtin("arrow")
    assert validate_reedy(arrow).ok and is_direct(arrow)
    span = builtin("span")
    assert validate_reedy(span).ok and is_inverse(span) and not is_direct(span)
    flat = ReedyStructure(arrow.base, (0, 0), arrow.plus, frozenset(), "flat")
    assert not validate_reedy(flat).ok
    assert is_direct(builtin("parallel_pair"))


def test_missing_degree_is_structural():
    arrow = builtin("arrow")
    with pytest.raises(StructuralError):
        validate_reedy(ReedyStructure(arrow.base, (0,), arrow.plus, frozenset(), "short"))


@given(builtin_names)
def test_builtins_validate_and_factor_uniquely(name):
    r = BUILTINS[name]
    assert validate_category(r.base).ok
    assert validate_reedy(r).ok
    for f in r.base.arrows:
        facts = r.factorizations(f)
        assert len(facts) == 1
        fm, fp = facts[0]
        assert r.base.compose(fp, fm) == f


@given(builtin_names)
def test_opposite_swaps_plus_and_minus(name):
    r = BUILTINS[name]
    o = opposite_reedy(r)
    assert validate_reedy(o).ok
    assert o.plus == r.minus and o.minus == r.plus
    assert o.degree == r.degree


def test_builtin_lookup():
    assert builtin("terminal").base.n_objects == 1
    assert builtin("terminal").degree == (0,)
    assert set(SPEC_BUILTINS) <= set(BUILTINS)
    with pytest.raises(KeyError):
        builtin("pentagon")


def test_catalog_entries():
    cat = {b["name"]: b for b in list_builtins()}
    assert cat["arrow"]["objects"] == 2 and cat["arrow"]["arrows"] == 3
    assert cat["span"]["inverse"] and cat["span"]["kind"] == "inverse"
    assert cat["square"]["direct"] and cat["square"]["degrees"] == [0, 1, 1, 2]


def test_latching_and_matching_categories():
    arrow = builtin("arrow")
    assert latching_category(arrow, 0)[0].n_objects == 0
    assert latching_category(arrow, 1)[0].n_objects == 1
    span = builtin("span")
    assert matching_category(span, 0)[0].n_objects == 2
    sq = builtin("square")
    assert latching_category(sq, 3)[0].n_objects == 3


def test_plus_subcategory_of_span_is_discrete():
    sub, emb = plus_subcategory(builtin("span"))
    assert sub.base.n_objects == 3 and not sub.base.non_identity_arrows()
    assert np.all(np.array(emb) >= 0)
