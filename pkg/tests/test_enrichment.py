import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from reedycheck import fixtures as fx
from reedycheck.chain import ChainComplexes, complex_, disk, sphere
from reedycheck.diagram import DiagramCategory, constant
from reedycheck.enrichment import (
    ADJUNCTIONS, ModuleContext, action_coherence_check, eq1_check, verify_adjunction, yoneda_module_check,
    yoneda_monoidal_check,
)
from reedycheck.fincat import builtin
from reedycheck.finset import FinSets, fmap
from reedycheck.reedy import ChainModel, ReedyModel

F = FinSets()
o = F.obj
C2 = ChainComplexes(2)
ARROW = builtin("arrow").base
TERM = builtin("terminal").base


def _finset_fixtures():
    ctx = ModuleContext(F, ARROW)
    D = ctx.MI
    M = D.diagram([o(2), o(3)], {2: fmap(2, 3, [0, 1])})
    N = D.diagram([o(2), o(2)], {2: fmap(2, 2, [0, 1])})
    return ctx, M, N


def test_l1_examples():
    ctx, M, N = _finset_fixtures()
    assert [x.size for x in ctx.l1_tensor(o(2), M).objs] == [4, 6]
    assert ctx.MI.is_iso(ctx.L1.lunit(M))
    assert F.hom_count(F.unit(), ctx.l1_map(M, N)) == len(ctx.MI.hom(M, N)) == 8


def test_l3_examples():
    ctx, M, N = _finset_fixtures()
    K = ctx.MI.constant(F.unit())
    assert [x.size for x in ctx.l3_tensor(K, o(2)).objs] == [2, 2]
    rep = verify_adjunction(ADJUNCTIONS["L3"](ctx), M, o(2), N)
    assert rep.ok
    assert rep.sizes[0] == rep.sizes[1] == rep.sizes[2]
    # hom_l(M, X) points equal natural transformations M -> X
    assert F.hom_count(F.unit(), ctx.hom_l(M, N)) == len(ctx.MI.hom(M, N))


def test_l6_and_map_examples():
    ctx = ModuleContext(C2, TERM)
    X = ctx.CI.constant(disk(2, 1))
    Y = ctx.CI.constant(sphere(2, 0))
    assert C2.same_object(ctx.map_CI(X, Y), C2.ihom(disk(2, 1), sphere(2, 0)))
    assert ctx.CI.is_iso(ctx.L6.lunit(X))


def test_s5_examples():
    ctx, M, N = _finset_fixtures()
    assert [x.size for x in ctx.s5_tensor(M, N).objs] == [4, 6]
    K = ctx.MI.constant(F.unit())
    assert [x.size for x in ctx.s5_tensor(K, N).objs] == [2, 2]
    cctx = ModuleContext(C2, ARROW)
    X = cctx.CI.diagram([sphere(2, 0), complex_(2, 0, [2])], {2: C2.map(sphere(2, 0), complex_(2, 0, [2]), {0: [[1], [0]]})})
    t = cctx.s5_tensor(cctx.h(0), X)
    assert [x.total_dim for x in t.objs] == [1, 2]


def test_hom_and_map_reduce_on_terminal_index():
    ctx = ModuleContext(C2, TERM)
    a, b = disk(2, 1), complex_(2, 0, [1, 1])
    Md, X = ctx.MI.constant(a), ctx.CI.constant(b)
    H = ctx.s5_Hom(Md, X)
    assert len(C2.hom(C2.unit(), H.objs[0])) == len(C2.hom(C2.unit(), C2.ihom(a, b)))
    Mp = ctx.s5_Map(Md, X)
    assert len(C2.hom(C2.unit(), Mp.objs[0])) == len(C2.hom(C2.unit(), C2.ihom(a, b)))


def test_hom_of_unit_is_identity_like():
    ctx, M, N = _finset_fixtures()
    K = ctx.MI.constant(F.unit())
    H = ctx.s5_Hom(K, N)
    assert [x.size for x in H.objs] == [x.size for x in N.objs]


def test_map_is_functorial():
    from reedycheck.diagram import check_functorial
    cctx = ModuleContext(C2, ARROW)
    h0 = cctx.h(0)
    X = cctx.CI.diagram([disk(2, 1), disk(2, 1)], {2: C2.identity(disk(2, 1))})
    assert check_functorial(C2, cctx.s5_Map(h0, X)).ok
    assert check_functorial(C2, cctx.s5_Hom(h0, X)).ok


@pytest.mark.parametrize("name", ["L1", "L3", "L6", "P2"])
def test_adjunctions_on_finset_fixtures(name):
    ctx, M, N = _finset_fixtures()
    D = ctx.MI
    X = D.diagram([o(1), o(2)], {2: fmap(1, 2, [1])})
    if name in ("L1", "L6"):
        a, b, c = o(2), M, N
        samples = [(fmap(2, 2, [1, 0]), None, None), (None, D.hom(M, M)[1], None), (None, None, D.hom(N, N)[2])]
    elif name == "L3":
        a, b, c = M, o(2), N
        samples = [(D.hom(M, M)[1], None, None), (None, fmap(2, 2, [1, 1]), None), (None, None, D.hom(N, N)[2])]
    else:
        a, b, c = M, X, N
        samples = [(D.hom(M, M)[1], None, None), (None, D.hom(X, X)[0], None), (None, None, D.hom(N, N)[2])]
    rep = verify_adjunction(ADJUNCTIONS[name](ctx), a, b, c, samples=samples)
    assert rep.ok, rep.witness.failures()


def test_l1_with_unit_is_identity_like():
    ctx, M, N = _finset_fixtures()
    rep = verify_adjunction(ADJUNCTIONS["L1"](ctx), F.unit(), M, N)
    assert rep.ok and rep.sizes == (8, 8, 8)


def _chain_objects(ctx, name, rng):
    P = fx.ChainParams(1, 1)
    mi = ReedyModel(ChainModel(C2), builtin("arrow"))
    m = lambda: fx.random_complex(2, rng, P)
    d = lambda: fx.random_chain_diagram(mi, rng, P)
    return {"L1": (m, d, d), "L6": (m, d, d), "L3": (d, m, d), "P2": (d, d, d)}[name]


@pytest.mark.parametrize("name", ["L1", "L3", "L6", "P2"])
@given(seed=st.integers(0, 2**32 - 1))
@settings(max_examples=8, deadline=None)
def test_adjunctions_on_chain_fixtures(name, seed):
    rng = np.random.default_rng(seed)
    ctx = ModuleContext(C2, ARROW)
    adj = ADJUNCTIONS[name](ctx)
    sa, sb, sc = _chain_objects(ctx, name, rng)
    a, b, c = sa(), sb(), sc()
    samples = []
    for k, cat in enumerate((adj.cat1, adj.cat2)):
        src = sa() if k == 0 else sb()
        tgt = a if k == 0 else b
        f = fx.random_morphism(cat, src, tgt, rng)
        samples.append((f, None, None) if k == 0 else (None, f, None))
    c2 = sc()
    samples.append((None, None, fx.random_morphism(adj.cat0, c, c2, rng)))
    rep = verify_adjunction(adj, a, b, c, samples=samples, rng=rng)
    assert rep.ok, rep.witness.failures()


def test_eq1_examples():
    ctx, M, N = _finset_fixtures()
    assert eq1_check(F, M, 0).ok and eq1_check(F, M, 1).ok
    h0 = ModuleContext(C2, ARROW).h(0)
    assert eq1_check(C2, h0, 1).ok


def test_yoneda_examples():
    ctx, M, N = _finset_fixtures()
    assert yoneda_monoidal_check(ctx, M, 0).ok
    E = ctx.L1.map_end(ctx.h(0), M)
    assert E.apex.size == 2
    cctx = ModuleContext(C2, ARROW)
    h0 = cctx.h(0)
    assert yoneda_module_check(cctx, h0, 1).ok
    assert cctx.hom_l(cctx.h(1), h0).dim_vector() == {0: 1}
    K = constant(F, TERM, o(3))
    tctx = ModuleContext(F, TERM)
    assert yoneda_monoidal_check(tctx, K).ok and yoneda_module_check(tctx, K).ok


@given(st.sampled_from(["arrow", "span", "square", "mixed", "parallel_pair"]), st.integers(0, 2**32 - 1))
@settings(max_examples=20, deadline=None)
def test_yoneda_on_random_diagrams(name, seed):
    rng = np.random.default_rng(seed)
    r = builtin(name)
    for base in (F, C2):
        ctx = ModuleContext(base, r.base)
        if base is F:
            X = fx.random_finset_diagram(r.base, rng, 2)
        else:
            X = fx.random_chain_diagram(ReedyModel(ChainModel(C2), r), rng, fx.ChainParams(1, 1))
        assert yoneda_monoidal_check(ctx, X).ok
        assert yoneda_module_check(ctx, X).ok
        for i in r.base.objects:
            assert eq1_check(base, X, i).ok


def test_nested_module_yoneda_and_adjunction():
    inner = builtin("arrow")
    ctx = ModuleContext(C2, ARROW, inner.base)
    rng = np.random.default_rng(5)
    cm = ReedyModel(ChainModel(C2), inner)
    sample_c = lambda g: fx.random_chain_diagram(cm, g, fx.ChainParams(1, 1))
    X = fx.random_diagram(ctx.Ccat, builtin("arrow"), rng, sample_c)
    assert yoneda_module_check(ctx, X).ok
    m = sphere(2, 0)
    rep = verify_adjunction(ADJUNCTIONS["L6"](ctx), m, X, X, rng=rng)
    assert rep.ok


def test_action_coherence():
    ctx = ModuleContext(C2, ARROW)
    X = ctx.CI.diagram([disk(2, 1), disk(2, 1)], {2: C2.identity(disk(2, 1))})
    assert action_coherence_check(ctx.L6, sphere(2, 0), disk(2, 1), X).ok
    fctx, M, N = _finset_fixtures()
    assert action_coherence_check(fctx.L1, o(2), o(3), M).ok
