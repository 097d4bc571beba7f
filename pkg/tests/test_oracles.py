import numpy as np
from hypothesis import given, settings, strategies as st

from reedycheck import fixtures as fx
from reedycheck.chain import ChainComplexes, chain_map, complex_
from reedycheck.enrichment import ModuleContext
from reedycheck.fincat import builtin
from reedycheck.finset import FinSets, fmap
from reedycheck.oracles import CheckList, hom_end_check, kunneth_check, quasi_iso_cone_check, universal_check
from reedycheck.reedy import ChainModel, ReedyModel

F = FinSets()
names = st.sampled_from(["terminal", "arrow", "span", "cospan", "parallel_pair", "square", "mixed", "empty"])


def test_checklist():
    w = CheckList()
    w.check("a", True)
    w.check("b", False)
    assert not w.ok and w.failures() == ["b"]


@given(names, st.integers(0, 2**32 - 1))
@settings(max_examples=25, deadline=None)
def test_hom_versus_end_on_both_bases(name, seed):
    rng = np.random.default_rng(seed)
    r = builtin(name)
    ctx = ModuleContext(F, r.base)
    X, Y = (fx.random_finset_diagram(r.base, rng, 2) for _ in range(2))
    assert hom_end_check(ctx, X, Y).ok
    C = ChainComplexes(2)
    m = ReedyModel(ChainModel(C), r)
    X, Y = (fx.random_chain_diagram(m, rng, fx.ChainParams(1, 1)) for _ in range(2))
    assert hom_end_check(ModuleContext(C, r.base), X, Y).ok


@given(names, st.integers(0, 2**32 - 1), st.integers(0, 2))
@settings(max_examples=25, deadline=None)
def test_finset_universal_properties(name, seed, t):
    idx = builtin(name).base
    X = fx.random_finset_diagram(idx, np.random.default_rng(seed), 2)
    for lim in (True, False):
        assert universal_check(F, idx, X.objs, X.arrs, F.obj(t), lim).ok


def test_broken_cone_is_caught():
    # a "limit" whose legs do not commute must fail the cone check
    from reedycheck.category import Cone

    class Liar(FinSets):
        def limit(self, shape, objs, arrs):
            real = super().limit(shape, objs, arrs)
            legs = list(real.legs)
            legs[1] = fmap(real.apex.size, objs[1].size, [1] * real.apex.size)
            return Cone(real.apex, legs, real.mediate)

    L = Liar()
    idx = builtin("arrow").base
    o = F.obj
    objs = [o(2), o(2)]
    arrs = [F.identity(o(2)), F.identity(o(2)), fmap(2, 2, [0, 0])]
    assert not universal_check(L, idx, objs, arrs, o(1)).ok


def test_kunneth_and_cone_examples():
    C = ChainComplexes(3)
    a = complex_(3, 0, [1, 2], [np.array([[1], [0]]).T])
    assert kunneth_check(C, a, a)
    f = chain_map(a, a, {0: np.array([[2]]), 1: np.eye(2, dtype=np.int64)})
    assert quasi_iso_cone_check(f)
