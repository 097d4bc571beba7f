import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from reedycheck import fixtures as fx
from reedycheck.chain import ChainComplexes, disk, sphere
from reedycheck.corners import (
    LEMMA7, PROP1, THM1, ModelContext, lemma7_fibration_side, lemma8_check, pushout_product, unit_axiom_check,
)
from reedycheck.diagram import NatTrans
from reedycheck.enrichment import ModuleContext
from reedycheck.fincat import BUILTINS, builtin, is_direct

C = ChainComplexes(2)
P = fx.ChainParams(1, 1)
seeds = st.integers(0, 2**32 - 1)
names = st.sampled_from(sorted(BUILTINS))


def mctx(name, inner=None):
    r = builtin(name)
    ir = builtin(inner) if inner else None
    ctx = ModuleContext(C, r.base, ir.base if ir else None)
    return ModelContext(ctx, r, ir)


def test_identity_absorbs():
    mc = mctx("arrow")
    rng = np.random.default_rng(0)
    g = fx.reedy_cofibration(mc.ci_model, fx.random_chain_diagram(mc.ci_model, rng, P), rng, False, P)
    rep = pushout_product(mc, C.identity(sphere(2, 0)), g, PROP1)
    assert mc.ci_model.cat.is_iso(rep.corner)
    assert all(rep.flags.values())


def test_prop1_unit_collapse():
    mc = mctx("arrow")
    h0 = mc.ctx.h(0)
    g = fx.from_zero(mc.ci_model.cat, h0)
    rep = pushout_product(mc, C.initial_map(sphere(2, 0)), g, PROP1)
    assert [x.total_dim for x in rep.corner.target.objs] == [1, 1]
    assert rep.flags["cofibration"] and not rep.flags["weak_equivalence"] and rep.ok


def test_thm1_with_trivial_first_factor():
    mc = mctx("arrow")
    ctx = mc.ctx
    E = ctx.l3_tensor(ctx.h(0), disk(2, 1))
    f = fx.from_zero(ctx.MI, E)
    assert mc.mi_model.flags(f)["trivial_cofibration"]
    rng = np.random.default_rng(1)
    g = fx.reedy_cofibration(mc.ci_model, fx.random_chain_diagram(mc.ci_model, rng, P), rng, False, P)
    rep = pushout_product(mc, f, g, THM1)
    assert rep.flags["trivial_cofibration"] and rep.ok


def test_hom_corner_examples():
    mc = mctx("arrow")
    rng = np.random.default_rng(2)
    X = fx.random_chain_diagram(mc.ci_model, rng, P)
    idX = mc.ci_model.cat.identity(X)
    rep = lemma7_fibration_side(mc, C.initial_map(sphere(2, 0)), idX)
    assert rep.flags["fibration"] and rep.ok
    g = fx.reedy_fibration(mc.ci_model, X, rng, False, P)
    rep = lemma7_fibration_side(mc, C.initial_map(sphere(2, 0)), g)
    assert rep.flags["fibration"] and rep.ok
    rep = lemma7_fibration_side(mc, C.initial_map(disk(2, 1)), g)
    assert rep.flags["trivial_fibration"] and rep.ok


def test_representable_tensor_examples():
    mc = mctx("arrow")
    cof, triv = C.initial_map(sphere(2, 0)), C.initial_map(disk(2, 1))
    rep = lemma8_check(mc, 0, 0, cof)
    assert rep.cofibrant and rep.ok
    H = mc.ctx.m_tensor(mc.ctx.h(0), mc.ctx.h(1))
    assert [x.total_dim for x in H.objs] == [0, 1]
    assert lemma8_check(mc, 0, 1, cof).ok
    rep = lemma8_check(mc, 0, 0, triv)
    assert rep.tensored_flags["trivial_cofibration"] and rep.ok


def test_representable_tensor_needs_a_direct_index():
    with pytest.raises(ValueError):
        lemma8_check(mctx("span"), 0, 0, C.initial_map(sphere(2, 0)))


@pytest.mark.parametrize("name", [n for n, r in BUILTINS.items() if is_direct(r)])
def test_representable_tensors_on_direct_builtins(name):
    mc = mctx(name)
    rng = np.random.default_rng(3)
    for p in mc.r.base.objects:
        for q in mc.r.base.objects:
            for trivial in (False, True):
                assert lemma8_check(mc, p, q, fx.base_cofibration(C, rng, trivial, P)).ok


def test_unit_axiom_examples():
    for name in ("terminal", "arrow"):
        mc = mctx(name)
        CI = mc.ctx.CI
        assert unit_axiom_check(mc, CI.constant(C.initial())).ok
        h0 = mc.ctx.h(0)
        rep = unit_axiom_check(mc, h0)
        assert rep.cofibrant_input and rep.tensored_flags["weak_equivalence"] and rep.ok


@pytest.mark.parametrize("pairing", [PROP1, LEMMA7, THM1])
@given(name=names, seed=seeds, tf=st.booleans(), tg=st.booleans())
@settings(max_examples=20, deadline=None)
def test_pushout_product_axiom(pairing, name, seed, tf, tg):
    mc = mctx(name)
    rng = np.random.default_rng(seed)
    if pairing == PROP1:
        f = fx.base_cofibration(C, rng, tf, P)
    else:
        f = fx.reedy_cofibration(mc.mi_model, fx.random_chain_diagram(mc.mi_model, rng, P), rng, tf, P)
    if pairing == LEMMA7:
        g = fx.base_cofibration(C, rng, tg, P)
    else:
        g = fx.reedy_cofibration(mc.ci_model, fx.random_chain_diagram(mc.ci_model, rng, P), rng, tg, P)
    rep = pushout_product(mc, f, g, pairing)
    assert rep.required["cofibration"]
    if tf or tg:
        assert rep.required["trivial_cofibration"]
    assert rep.ok, (rep.flags, rep.required)


@given(name=names, seed=seeds, tf=st.booleans(), tg=st.booleans())
@settings(max_examples=30, deadline=None)
def test_hom_corner_axiom(name, seed, tf, tg):
    mc = mctx(name)
    rng = np.random.default_rng(seed)
    f = fx.base_cofibration(C, rng, tf, P)
    g = fx.reedy_fibration(mc.ci_model, fx.random_chain_diagram(mc.ci_model, rng, P), rng, tg, P)
    assert lemma7_fibration_side(mc, f, g).ok


def test_nested_module_corners():
    from reedycheck.scenario import BaseSpec, Env, Scenario
    env = Env(Scenario(BaseSpec("chain", 2, 1, 1), builtin("span"), builtin("arrow")))
    mc = env.mc
    rng = np.random.default_rng(7)
    f_for = {PROP1: env.cof_m, LEMMA7: env.cof_mi, THM1: env.cof_mi}
    g_for = {PROP1: env.cof_ci, LEMMA7: env.cof_c, THM1: env.cof_ci}
    for pairing in (PROP1, LEMMA7, THM1):
        rep = pushout_product(mc, f_for[pairing](rng, True), g_for[pairing](rng, False), pairing)
        assert rep.ok and rep.flags["trivial_cofibration"]
    g = env.fib_ci(rng, False)
    assert lemma7_fibration_side(mc, env.cof_c(rng, True), g).ok


def test_non_cofibration_inputs_require_nothing():
    mc = mctx("arrow")
    rng = np.random.default_rng(8)
    X = fx.random_chain_diagram(mc.ci_model, rng, P)
    g = fx.to_terminal(mc.ci_model.cat, X)
    rep = pushout_product(mc, C.terminal_map(sphere(2, 0)), g, PROP1)
    assert not any(rep.required.values()) and rep.ok
