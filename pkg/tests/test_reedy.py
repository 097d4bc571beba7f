import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from reedycheck import fixtures as fx
from reedycheck.chain import COFIB_TRIVFIB, TRIVCOF_FIB, ChainComplexes, disk, sphere
from reedycheck.diagram import NatTrans, check_functorial
from reedycheck.enrichment import ModuleContext
from reedycheck.fincat import BUILTINS, builtin
from reedycheck.reedy import ChainModel, ReedyModel, classify_reedy, reedy_factorize, restrict_plus

C = ChainComplexes(2)
P = fx.ChainParams(1, 1)
names = st.sampled_from(sorted(BUILTINS))
seeds = st.integers(0, 2**32 - 1)


def model(name):
    return ReedyModel(ChainModel(C), builtin(name))


def test_arrow_latching():
    m = model("arrow")
    X = fx.random_chain_diagram(m, np.random.default_rng(1), P)
    assert m.latching(X, 0).apex.total_dim == 0
    L1 = m.latching(X, 1)
    assert L1.apex.dim_vector() == X.objs[0].dim_vector() or L1.apex.total_dim == X.objs[0].total_dim
    leg = L1.cone.legs[0]
    assert C.equal(C.compose(L1.canonical, leg), X.arrs[2])


def test_span_matching_is_a_product():
    m = model("span")
    X = fx.random_chain_diagram(m, np.random.default_rng(2), P)
    Ma = m.matching(X, 0)
    for n in Ma.apex.degrees:
        assert Ma.apex.dim(n) == X.objs[1].dim(n) + X.objs[2].dim(n)
    assert m.matching(X, 1).apex.total_dim == 0


def test_terminal_latching_and_matching():
    m = model("terminal")
    X = m.cat.constant(disk(2, 1))
    assert m.latching(X, 0).apex.total_dim == 0
    assert m.matching(X, 0).apex.total_dim == 0


def test_identity_has_every_flag():
    for name in BUILTINS:
        m = model(name)
        X = fx.random_chain_diagram(m, np.random.default_rng(3), P)
        assert all(classify_reedy(m, m.cat.identity(X)).as_dict().values())


def test_zero_to_representable_is_a_cofibration():
    m = model("arrow")
    ctx = ModuleContext(C, builtin("arrow").base)
    h0 = ctx.h(0)
    g = fx.from_zero(m.cat, h0)
    f = classify_reedy(m, g)
    assert f.is_cofibration and not f.is_weak_equivalence
    rel0 = m.relative_latching(g, 0)
    rel1 = m.relative_latching(g, 1)
    assert rel0.source.total_dim == 0 and rel0.target.total_dim == 1
    assert C.is_iso(rel1)


def test_span_fibration_needs_matching_surjectivity():
    m = model("span")
    X = m.cat.constant(sphere(2, 0))
    to_zero = fx.to_terminal(m.cat, X)
    assert all(C.flags(c)["fibration"] for c in to_zero.comps)
    assert not classify_reedy(m, to_zero).is_fibration
    g = fx.reedy_fibration(m, X, np.random.default_rng(0), False, P)
    assert classify_reedy(m, g).is_fibration


@given(names, seeds)
@settings(max_examples=30, deadline=None)
def test_constructed_maps_have_their_flags(name, seed):
    m = model(name)
    rng = np.random.default_rng(seed)
    X = fx.random_chain_diagram(m, rng, P)
    for trivial in (False, True):
        c = fx.reedy_cofibration(m, X, rng, trivial, P)
        assert check_functorial(C, c.target).ok and m.cat.is_morphism(c)
        fc = classify_reedy(m, c)
        assert fc.is_cofibration and (fc.is_weak_equivalence or not trivial)
        f = fx.reedy_fibration(m, X, rng, trivial, P)
        assert check_functorial(C, f.source).ok and m.cat.is_morphism(f)
        ff = classify_reedy(m, f)
        assert ff.is_fibration and (ff.is_weak_equivalence or not trivial)


@given(names, seeds, st.sampled_from([COFIB_TRIVFIB, TRIVCOF_FIB]))
@settings(max_examples=30, deadline=None)
def test_factorization_recomposes_with_flags(name, seed, kind):
    m = model(name)
    rng = np.random.default_rng(seed)
    X, Y = fx.random_chain_diagram(m, rng, P), fx.random_chain_diagram(m, rng, P)
    g = fx.random_morphism(m.cat, X, Y, rng)
    a, b = reedy_factorize(m, g, kind)
    assert m.cat.equal(m.cat.compose(b, a), g)
    fa, fb = m.flags(a), m.flags(b)
    if kind == COFIB_TRIVFIB:
        assert fa["cofibration"] and fb["trivial_fibration"]
    else:
        assert fa["trivial_cofibration"] and fb["fibration"]


def test_factorization_examples():
    m = model("arrow")
    rng = np.random.default_rng(4)
    Y = fx.random_chain_diagram(m, rng, P)
    a, b = reedy_factorize(m, fx.from_zero(m.cat, Y), COFIB_TRIVFIB)
    assert m.flags(a)["cofibration"] and m.flags(b)["trivial_fibration"]
    X = fx.random_chain_diagram(m, rng, P)
    zero = m.cat.zero(X, Y)
    a, b = reedy_factorize(m, zero, TRIVCOF_FIB)
    assert m.flags(a)["trivial_cofibration"] and m.cat.equal(m.cat.compose(b, a), zero)
    tc = fx.reedy_cofibration(m, X, rng, True, P)
    a, b = reedy_factorize(m, tc, TRIVCOF_FIB)
    assert m.flags(a)["trivial_cofibration"] and m.flags(b)["fibration"]


def test_restriction_examples():
    m = model("arrow")
    X = fx.random_chain_diagram(m, np.random.default_rng(5), P)
    rX, sub = restrict_plus(m, X)
    assert rX.index.n_arrows == X.index.n_arrows
    span = model("span")
    rY, sub = restrict_plus(span, span.cat.constant(sphere(2, 0)))
    assert not rY.index.non_identity_arrows()


@given(st.sampled_from(["span", "mixed", "cospan", "square"]), seeds)
@settings(max_examples=50, deadline=None)
def test_restriction_preserves_and_reflects_cofibrations(name, seed):
    m = model(name)
    rng = np.random.default_rng(seed)
    X, Y = fx.random_chain_diagram(m, rng, P), fx.random_chain_diagram(m, rng, P)
    g = fx.random_morphism(m.cat, X, Y, rng) if seed % 2 else fx.reedy_cofibration(m, X, rng, bool(seed % 3), P)
    rg, sub = restrict_plus(m, g)
    full, part = m.classify(g, ("cof", "we")), sub.classify(rg, ("cof", "we"))
    assert full.is_cofibration == part.is_cofibration
    assert full.trivial_cofibration == part.trivial_cofibration


def test_empty_and_degree_zero_indices_are_vacuous():
    for name in ("empty", "discrete"):
        m = model(name)
        X = m.cat.constant(sphere(2, 0))
        g = fx.from_zero(m.cat, X)
        assert classify_reedy(m, g).is_cofibration


def test_nested_reedy_model():
    inner = ReedyModel(ChainModel(C), builtin("arrow"))
    outer = ReedyModel(inner, builtin("span"))
    rng = np.random.default_rng(6)
    X = fx.random_diagram(inner.cat, builtin("span"), rng, lambda g: fx.random_chain_diagram(inner, g, P))
    zero = inner.cat.constant(C.initial())
    sample_E = lambda g, trivial: fx.reedy_cofibration(inner, zero, g, trivial, P).target
    c = fx.reedy_cofibration(outer, X, rng, True, P, sample_E)
    f = outer.classify(c)
    assert f.is_cofibration and f.is_weak_equivalence
