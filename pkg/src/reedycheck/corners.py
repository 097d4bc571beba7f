"""Pushout-product and hom-corner maps of two-variable functors, classified in a model.

The three pairings act on chain-valued diagrams over an index ``I``:

* ``prop1``: ``M x C^I -> C^I``, the module action applied pointwise;
* ``lemma7``: ``M^I x C -> C^I``, ``(A, c) -> (i -> A_i (x) c)``;
* ``thm1``: ``M^I x C^I -> C^I``, the pointwise action.

For ``f: a -> b`` and ``g: X -> Y`` the corner map is
``T(a, Y) +_{T(a, X)} T(b, X) -> T(b, Y)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable

from .category import Category
from .diagram import NatTrans
from .enrichment import ModuleContext
from .reedy import ChainModel, ReedyFlags, ReedyModel

PROP1, LEMMA7, THM1 = "prop1", "lemma7", "thm1"
PAIRINGS = (PROP1, LEMMA7, THM1)


@dataclass
class CornerReport:
    """A corner map, its flags, the flags required of it and whether they hold."""

    corner: Any
    flags: dict
    required: dict
    input_flags: tuple
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(self.flags[k] for k, v in self.required.items() if v)


def _flags(model, f) -> dict:
    out = model.flags(f)
    return out.as_dict() if isinstance(out, ReedyFlags) else dict(out)


def pushout_corner(D: Category, A: Category, B: Category, T: Callable, T_mor: Callable, f, g):
    """``T(a, Y) +_{T(a, X)} T(b, X) -> T(b, Y)`` for ``f: a -> b`` in ``A`` and ``g: X -> Y`` in ``B``."""
    a, b = A.source(f), A.target(f)
    X, Y = B.source(g), B.target(g)
    ida, idb = A.identity(a), A.identity(b)
    idX, idY = B.identity(X), B.identity(Y)
    po = D.pushout(T_mor(ida, g), T_mor(f, idX))  # legs: T(a, X), T(a, Y), T(b, X)
    return po.mediate([T_mor(f, g), T_mor(f, idY), T_mor(idb, g)], T(b, Y))


def pullback_corner(D: Category, A: Category, B: Category, R: Callable, R_mor: Callable, f, g):
    """``R(b, X) -> R(a, X) x_{R(a, Y)} R(b, Y)`` for ``f: a -> b`` and ``g: X -> Y``.

    ``R`` is contravariant in the first variable: ``R_mor(u, h)`` maps
    ``R(c, Z) -> R(c', Z')`` for ``u: c' -> c`` and ``h: Z -> Z'``.
    """
    a, b = A.source(f), A.target(f)
    X, Y = B.source(g), B.target(g)
    ida, idb = A.identity(a), A.identity(b)
    idX, idY = B.identity(X), B.identity(Y)
    pb = D.pullback(R_mor(ida, g), R_mor(f, idY))  # legs: R(a, Y), R(a, X), R(b, Y)
    return pb.mediate([R_mor(f, g), R_mor(f, idX), R_mor(idb, g)], R(b, X))


class ModelContext:
    """A :class:`ModuleContext` together with models on ``M``, ``C``, ``M^I`` and ``C^I``."""

    def __init__(self, ctx: ModuleContext, r, inner_r=None):
        self.ctx = ctx
        self.r = r
        self.m_model = ChainModel(ctx.M)
        if ctx.inner_index is None:
            self.c_model = self.m_model
        else:
            if inner_r is None or inner_r.base is not ctx.inner_index:
                raise ValueError("a nested module needs the Reedy structure of its inner index")
            self.c_model = ReedyModel(self.m_model, inner_r)
        self.mi_model = ReedyModel(self.m_model, r)
        self.ci_model = self.mi_model if ctx.inner_index is None else ReedyModel(self.c_model, r)

    def __repr__(self):
        return f"ModelContext({self.ctx!r})"

    def pairing(self, name: str):
        """``(A model, B model, D model, T, T_mor)`` for a pairing name."""
        ctx = self.ctx
        if name == PROP1:
            return self.m_model, self.ci_model, self.ci_model, ctx.l6_tensor, ctx.L6.act_mor
        if name == LEMMA7:
            return self.mi_model, self.c_model, self.ci_model, ctx.l3_tensor, ctx.l3_tensor_mor
        if name == THM1:
            return self.mi_model, self.ci_model, self.ci_model, ctx.s5_tensor, ctx.s5_tensor_mor
        raise ValueError(f"unknown pairing {name!r}; known: {list(PAIRINGS)}")


def pushout_product(mc: ModelContext, f, g, pairing: str) -> CornerReport:
    """Classify ``f <> g``; when both inputs are cofibrations it must be one, trivial if either input is."""
    Am, Bm, Dm, T, T_mor = mc.pairing(pairing)
    corner = pushout_corner(Dm.cat, Am.cat, Bm.cat, T, T_mor, f, g)
    ff, fg = _flags(Am, f), _flags(Bm, g)
    both = ff["cofibration"] and fg["cofibration"]
    required = {
        "cofibration": both,
        "trivial_cofibration": both and (ff["trivial_cofibration"] or fg["trivial_cofibration"]),
    }
    flags = Dm.classify(corner) if isinstance(Dm, ReedyModel) else None
    fd = flags.as_dict() if flags is not None else _flags(Dm, corner)
    return CornerReport(corner, fd, required, (ff, fg), flags.failures if flags is not None else [])


def pushout_product_base(C, f, g) -> CornerReport:
    """``f <> g`` for the tensor of the base itself, with the same requirements as :func:`pushout_product`."""
    model = ChainModel(C)
    corner = pushout_corner(C, C, C, C.tensor, C.tensor_mor, f, g)
    ff, fg = _flags(model, f), _flags(model, g)
    both = ff["cofibration"] and fg["cofibration"]
    required = {
        "cofibration": both,
        "trivial_cofibration": both and (ff["trivial_cofibration"] or fg["trivial_cofibration"]),
    }
    return CornerReport(corner, _flags(model, corner), required, (ff, fg))


def lemma7_fibration_side(mc: ModelContext, f, g) -> CornerReport:
    """``hom_r(b, X) -> hom_r(a, X) x_{hom_r(a, Y)} hom_r(b, Y)`` for ``f: a -> b`` in ``C`` and ``g`` in ``C^I``.

    For ``f`` a cofibration and ``g`` a fibration the map must be a Reedy
    fibration in ``M^I``, trivial if either input is trivial.
    """
    ctx = mc.ctx
    corner = pullback_corner(mc.mi_model.cat, mc.c_model.cat, mc.ci_model.cat, ctx.hom_r, ctx.hom_r_mor, f, g)
    ff, fg = _flags(mc.c_model, f), _flags(mc.ci_model, g)
    both = ff["cofibration"] and fg["fibration"]
    required = {
        "fibration": both,
        "trivial_fibration": both and (ff["trivial_cofibration"] or fg["trivial_fibration"]),
    }
    flags = mc.mi_model.classify(corner)
    return CornerReport(corner, flags.as_dict(), required, (ff, fg), flags.failures)


@dataclass
class Lemma8Report:
    p: int
    q: int
    cofibrant: bool
    f_flags: dict
    tensored_flags: dict

    @property
    def ok(self) -> bool:
        # an implication: h_p (x) h_q may vanish, making every tensored map trivial
        t, f = self.tensored_flags, self.f_flags
        return (
            self.cofibrant
            and (t["cofibration"] or not f["cofibration"])
            and (t["trivial_cofibration"] or not f["trivial_cofibration"])
        )


def lemma8_check(mc: ModelContext, p: int, q: int, f) -> Lemma8Report:
    """``h_p (x) h_q`` is cofibrant and ``h_p (x) h_q (x) f`` is a (trivial) cofibration when ``f`` is."""
    from .fincat import is_direct

    if not is_direct(mc.r):
        raise ValueError("the representable-tensor check needs a direct index")
    ctx = mc.ctx
    M, MI = ctx.M, ctx.MI
    unit_flags = mc.m_model.flags(M.initial_map(M.unit()))
    if not unit_flags["cofibration"]:
        raise ValueError("the base unit is not cofibrant")
    H = ctx.m_tensor(ctx.h(p), ctx.h(q))
    Z = MI.constant(M.initial())
    zero_to_h = NatTrans(Z, H, tuple(M.initial_map(x) for x in H.objs))
    cofibrant = mc.mi_model.classify(zero_to_h, ("cof",)).is_cofibration
    src = M.source(f)
    tgt = M.target(f)
    Hf = NatTrans(
        _tensor_const(ctx, H, src),
        _tensor_const(ctx, H, tgt),
        tuple(M.tensor_mor(M.identity(x), f) for x in H.objs),
    )
    return Lemma8Report(p, q, cofibrant, dict(mc.m_model.flags(f)), mc.mi_model.classify(Hf).as_dict())


def _tensor_const(ctx: ModuleContext, H, c):
    from .diagram import Diagram

    M = ctx.M
    idc = M.identity(c)
    return Diagram(H.index, tuple(M.tensor(x, c) for x in H.objs), tuple(M.tensor_mor(a, idc) for a in H.arrs))


@dataclass
class UnitAxiomReport:
    replacement_flags: dict
    tensored_flags: dict
    cofibrant_input: bool

    @property
    def ok(self) -> bool:
        if not self.cofibrant_input:
            return True
        return self.replacement_flags["cofibration"] and self.tensored_flags["weak_equivalence"]


def unit_axiom_check(mc: ModelContext, X) -> UnitAxiomReport:
    """Cofibrantly replace the constant unit diagram and tensor the replacement map with ``X``."""
    from .chain import COFIB_TRIVFIB

    ctx = mc.ctx
    M, MI, CI = ctx.M, ctx.MI, ctx.CI
    Cc = ctx.Ccat
    zero_X = NatTrans(CI.constant(Cc.initial()), X, tuple(Cc.initial_map(x) for x in X.objs))
    cofibrant = mc.ci_model.classify(zero_X, ("cof",)).is_cofibration
    K = MI.constant(M.unit())
    zero_K = NatTrans(MI.constant(M.initial()), K, tuple(M.initial_map(x) for x in K.objs))
    a, q = mc.mi_model.factorize(zero_K, COFIB_TRIVFIB)
    qX = ctx.s5_tensor_mor(q, CI.identity(X))
    rep = mc.mi_model.flags(a)
    tens = mc.ci_model.classify(qX, ("we",)).as_dict()
    return UnitAxiomReport(rep, tens, cofibrant)
