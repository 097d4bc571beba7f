import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from reedycheck import fixtures as fx
from reedycheck.chain import ChainComplexes, disk, sphere
from reedycheck.diagram import (
    Diagram, DiagramCategory, FunctorialityError, NatTrans, check_functorial, codifferential, coend,
    coend_coequalizer, constant, coreduction_check, differential, end, end_equalizer, h_lower, h_upper,
    hom_bifunctor, reduction_check,
)
from reedycheck.fincat import BUILTINS, builtin, product_category
from reedycheck.finset import FinSets, fmap
from reedycheck.monoidal import SelfModule
from reedycheck.reedy import ChainModel, ReedyModel

F = FinSets()
o = F.obj
ARROW = builtin("arrow").base
C2 = ChainComplexes(2)
small_names = st.sampled_from(["terminal", "arrow", "composable_pair", "parallel_pair", "span", "cospan", "mixed"])


def _mn():
    D = DiagramCategory(F, ARROW)
    M = D.diagram([o(2), o(3)], {2: fmap(2, 3, [0, 1])})
    N = D.diagram([o(2), o(2)], {2: fmap(2, 2, [0, 1])})
    return D, M, N


def test_hom_examples():
    D, M, N = _mn()
    assert len(D.hom(M, N)) == 8
    K = D.constant(o(1))
    assert len(D.hom(K, K)) == 1
    DC = DiagramCategory(C2, ARROW)
    U = DC.constant(C2.unit())
    assert len(DC.hom(U, U)) == 1


def test_hom_agrees_with_brute_force():
    D, M, N = _mn()
    count = 0
    for a in F.hom(o(2), o(2)):
        for b in F.hom(o(3), o(2)):
            if F.equal(F.compose(N.arrs[2], a), F.compose(b, M.arrs[2])):
                count += 1
    assert count == len(D.hom(M, N))


def test_end_examples():
    D, M, N = _mn()
    T = hom_bifunctor(F, M, N)
    assert end(T).apex.size == 8 == end_equalizer(T).apex.size
    t = builtin("terminal").base
    X = constant(F, t, o(3))
    T0 = hom_bifunctor(F, X, X)
    assert end(T0).apex.size == T0.obj(0, 0).size


def test_coend_of_codifferential_recovers_the_diagram():
    _, M, _ = _mn()
    ce = coend(codifferential(SelfModule(F), M))
    assert [x.size for x in ce.apex.objs] == [2, 3]
    ce2 = coend_coequalizer(codifferential(SelfModule(F), M))
    assert [x.size for x in ce2.apex.objs] == [2, 3]


def test_representables():
    R0 = h_lower(C2, ARROW, 0)
    assert [x.dim_vector() for x in R0.objs] == [{0: 1}, {0: 1}]
    assert C2.is_iso(R0.arrs[2])
    R1 = h_lower(C2, ARROW, 1)
    assert R1.objs[0].total_dim == 0
    sq = builtin("square").base
    for i in sq.objects:
        h = h_lower(F, sq, i)
        assert [x.size for x in h.objs] == [len(sq.hom(i, j)) for j in sq.objects]
        hu = h_upper(F, sq, i)
        assert [x.size for x in hu.objs] == [len(sq.hom(j, i)) for j in sq.objects]


def test_codifferential_and_differential_examples():
    _, M, _ = _mn()
    S = SelfModule(F)
    CM = codifferential(S, M)
    assert CM.obj(1, 0).objs[0].size == 0
    DX = differential(S, M)
    # DX(0,0)(q) = X_0 ^ |I(q, 0)|
    assert [x.size for x in DX.obj(0, 0).objs] == [2, 1]
    t = builtin("terminal").base
    X = constant(F, t, o(3))
    assert codifferential(S, X).obj(0, 0).objs[0].size == 3


def test_non_functorial_diagram_is_rejected():
    pair = builtin("composable_pair").base
    with pytest.raises(FunctorialityError):
        make = DiagramCategory(F, pair).diagram
        make([o(2), o(2), o(2)], {3: fmap(2, 2, [1, 0]), 4: fmap(2, 2, [1, 0]), 5: fmap(2, 2, [1, 0])})
    good = DiagramCategory(F, pair).diagram([o(2)] * 3, {3: fmap(2, 2, [1, 0]), 4: fmap(2, 2, [1, 0]),
                                                        5: fmap(2, 2, [0, 1])})
    assert check_functorial(F, good).ok


def test_naturality_is_checked():
    D, M, N = _mn()
    with pytest.raises(FunctorialityError):
        D.nat(M, N, [fmap(2, 2, [0, 1]), fmap(3, 2, [1, 1, 1])])


@pytest.mark.parametrize("name", sorted(BUILTINS))
def test_coreduction_and_reduction_on_constants(name):
    idx = builtin(name).base
    X = constant(F, idx, o(2))
    S = SelfModule(F)
    assert coreduction_check(S, X).ok
    assert reduction_check(S, X).ok


def test_coreduction_examples():
    _, M, _ = _mn()
    S = SelfModule(F)
    assert coreduction_check(S, M).ok and reduction_check(S, M).ok
    SC = SelfModule(C2)
    h0 = h_lower(C2, ARROW, 0)
    assert coreduction_check(SC, h0).ok and reduction_check(SC, h0).ok


@given(small_names, st.integers(0, 2**32 - 1))
@settings(max_examples=25, deadline=None)
def test_finset_coreduction_and_reduction(name, seed):
    idx = builtin(name).base
    X = fx.random_finset_diagram(idx, np.random.default_rng(seed), 3)
    S = SelfModule(F)
    assert coreduction_check(S, X).ok
    assert reduction_check(S, X).ok


@given(small_names, st.integers(0, 2**32 - 1))
@settings(max_examples=25, deadline=None)
def test_chain_coreduction_and_reduction(name, seed):
    r = builtin(name)
    X = fx.random_chain_diagram(ReedyModel(ChainModel(C2), r), np.random.default_rng(seed), fx.ChainParams(1, 1))
    S = SelfModule(C2)
    assert coreduction_check(S, X).ok
    assert reduction_check(S, X).ok


@given(small_names, st.integers(0, 2**32 - 1))
@settings(max_examples=25, deadline=None)
def test_hom_equals_end_of_homs(name, seed):
    idx = builtin(name).base
    rng = np.random.default_rng(seed)
    X = fx.random_finset_diagram(idx, rng, 2)
    Y = fx.random_finset_diagram(idx, rng, 2)
    T = hom_bifunctor(F, X, Y)
    n = len(DiagramCategory(F, idx).hom(X, Y))
    assert end(T).apex.size == end_equalizer(T).apex.size == n


def _curry(X: Diagram, I, J) -> Diagram:
    """A diagram over ``I x J`` as a diagram over ``I`` of diagrams over ``J``."""
    DJ = DiagramCategory(F, J)
    nJ, mJ = J.n_objects, J.n_arrows
    rows = []
    for i in I.objects:
        e = I.identities[i]
        rows.append(Diagram(J, tuple(X.objs[i * nJ + j] for j in J.objects),
                            tuple(X.arrs[e * mJ + v] for v in J.arrows)))
    arrs = []
    for u in I.arrows:
        comps = tuple(X.arrs[u * mJ + J.identities[j]] for j in J.objects)
        arrs.append(NatTrans(rows[I.sources[u]], rows[I.targets[u]], comps))
    return Diagram(I, tuple(rows), tuple(arrs)), DJ


@given(st.sampled_from(["arrow", "span", "terminal"]), st.sampled_from(["arrow", "cospan"]),
       st.integers(0, 2**32 - 1))
@settings(max_examples=15, deadline=None)
def test_fubini_for_homs(ni, nj, seed):
    I, J = builtin(ni).base, builtin(nj).base
    P = product_category(I, J)
    rng = np.random.default_rng(seed)
    X = fx.random_finset_diagram(P, rng, 2)
    Y = fx.random_finset_diagram(P, rng, 2)
    direct = len(DiagramCategory(F, P).hom(X, Y))
    cx, DJ = _curry(X, I, J)
    cy, _ = _curry(Y, I, J)
    nested = len(DiagramCategory(DJ, I).hom(cx, cy))
    assert direct == nested


def test_empty_index():
    idx = builtin("empty").base
    X = constant(F, idx, o(2))
    T = hom_bifunctor(F, X, X)
    assert end(T).apex.size == 1
    assert coreduction_check(SelfModule(F), X).ok


def test_chain_hom_dimension_matches_point_count():
    DC = DiagramCategory(C2, ARROW)
    X = DC.diagram([disk(2, 1), disk(2, 1)], {2: C2.identity(disk(2, 1))})
    Y = DC.diagram([sphere(2, 0), sphere(2, 0)], {2: C2.identity(sphere(2, 0))})
    assert DC.hom_count(X, Y) == 2 ** len(DC.hom(X, Y))
