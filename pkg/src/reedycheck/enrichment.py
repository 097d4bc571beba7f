"""Closed-module structures on diagram categories and their adjunction isomorphisms.

:class:`DiagramModule` turns a closed ``M``-module ``C`` into the pointwise
closed ``M``-module ``C^I`` whose enriched hom is the end of pointwise
enriched homs. Applied to ``M`` acting on itself it is the module ``M^I``;
applied twice it gives ``(M^J)^I``.

:class:`ModuleContext` bundles a base, a module and an index category and
implements the two-variable functors between ``M^I``, ``C`` and ``C^I``
(``tensor``, ``hom_r``, ``hom_l``) together with the pointwise action of
``M^I`` on ``C^I`` and its right adjoints ``Hom`` and ``Map``. Every
transposition is an explicit composite of module primitives.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

import numpy as np

from .category import Category, IdCache
from .diagram import (
    Bifunctor,
    Diagram,
    DiagramCategory,
    EndCone,
    IsoWitness,
    NatTrans,
    end,
    end_mor,
    iso_witness,
    representables,
)
from .fincat import FiniteCategory
from .monoidal import ClosedModule, ClosedMonoidal, SelfModule


class DiagramModule(ClosedModule):
    """``C^I`` with ``(m (x) X)_i = m (x) X_i``, ``(X^m)_i = X_i^m`` and ``map = int_i map(X_i, Y_i)``."""

    def __init__(self, inner: ClosedModule, index: FiniteCategory):
        self.inner = inner
        self.base = inner.base
        self.index = index
        self.cat = DiagramCategory(inner.cat, index)
        self._act = IdCache(256)
        self._pow = IdCache(256)
        self._ends = IdCache(256)

    def __repr__(self):
        return f"DiagramModule({self.inner!r}, {self.index.n_objects} objects)"

    def act(self, m, X):
        def build():
            inn = self.inner
            idm = self.base.identity(m)
            return Diagram(X.index, tuple(inn.act(m, x) for x in X.objs), tuple(inn.act_mor(idm, a) for a in X.arrs))

        return self._act.get((m, X), build)

    def act_mor(self, f, g):
        M = self.base
        src = self.act(M.source(f), g.source)
        tgt = self.act(M.target(f), g.target)
        return NatTrans(src, tgt, tuple(self.inner.act_mor(f, c) for c in g.comps))

    def power(self, X, m):
        def build():
            inn = self.inner
            idm = self.base.identity(m)
            return Diagram(X.index, tuple(inn.power(x, m) for x in X.objs), tuple(inn.power_mor(a, idm) for a in X.arrs))

        return self._pow.get((X, m), build)

    def power_mor(self, g, f):
        M = self.base
        src = self.power(g.source, M.target(f))
        tgt = self.power(g.target, M.source(f))
        return NatTrans(src, tgt, tuple(self.inner.power_mor(c, f) for c in g.comps))

    def map_end(self, X, Y) -> EndCone:
        def build():
            inn = self.inner
            T = Bifunctor(
                self.index, self.base,
                lambda i, j: inn.mapc(X.objs[i], Y.objs[j]),
                lambda u, v: inn.mapc_mor(X.arrs[u], Y.arrs[v]),
            )
            return end(T)

        return self._ends.get((X, Y), build)

    def mapc(self, X, Y):
        return self.map_end(X, Y).apex

    def mapc_mor(self, f, g):
        src = self.map_end(f.target, g.source)
        tgt = self.map_end(f.source, g.target)
        comps = [self.inner.mapc_mor(a, b) for a, b in zip(f.comps, g.comps)]
        return end_mor(src, tgt, comps, self.base)

    def to_map(self, phi, m, X, Y):
        inn = self.inner
        wedge = [inn.to_map(phi.comps[i], m, X.objs[i], Y.objs[i]) for i in self.index.objects]
        return self.map_end(X, Y).mediate(wedge, m)

    def from_map(self, psi, m, X, Y):
        inn, M = self.inner, self.base
        legs = self.map_end(X, Y).legs
        comps = [inn.from_map(M.compose(legs[i], psi), m, X.objs[i], Y.objs[i]) for i in self.index.objects]
        return NatTrans(self.act(m, X), Y, tuple(comps))

    def to_power(self, phi, m, X, Y):
        inn = self.inner
        comps = [inn.to_power(phi.comps[i], m, X.objs[i], Y.objs[i]) for i in self.index.objects]
        return NatTrans(X, self.power(Y, m), tuple(comps))

    def from_power(self, chi, m, X, Y):
        inn = self.inner
        comps = [inn.from_power(chi.comps[i], m, X.objs[i], Y.objs[i]) for i in self.index.objects]
        return NatTrans(self.act(m, X), Y, tuple(comps))

    def lunit(self, X):
        k = self.base.unit()
        return NatTrans(self.act(k, X), X, tuple(self.inner.lunit(x) for x in X.objs))

    def lunit_inv(self, X):
        k = self.base.unit()
        return NatTrans(X, self.act(k, X), tuple(self.inner.lunit_inv(x) for x in X.objs))

    def assoc(self, m, n, X):
        M = self.base
        src = self.act(M.tensor(m, n), X)
        tgt = self.act(m, self.act(n, X))
        return NatTrans(src, tgt, tuple(self.inner.assoc(m, n, x) for x in X.objs))

    def assoc_inv(self, m, n, X):
        M = self.base
        src = self.act(m, self.act(n, X))
        tgt = self.act(M.tensor(m, n), X)
        return NatTrans(src, tgt, tuple(self.inner.assoc_inv(m, n, x) for x in X.objs))


# -- the context -------------------------------------------------------------------------


class ModuleContext:
    """Base ``M``, module ``C`` (``M`` itself or ``M^J``) and index ``I``."""

    def __init__(self, base: ClosedMonoidal, index: FiniteCategory, inner_index: FiniteCategory | None = None):
        self.M = base
        self.index = index
        self.inner_index = inner_index
        self.self_module = SelfModule(base)
        self.C = self.self_module if inner_index is None else DiagramModule(self.self_module, inner_index)
        self.L1 = DiagramModule(self.self_module, index)
        self.L6 = DiagramModule(self.C, index) if inner_index is not None else self.L1
        self.MI = self.L1.cat
        self.CI = self.L6.cat
        self.R = representables(base, index)
        self._cache = IdCache(512)

    def __repr__(self):
        kind = "self" if self.inner_index is None else f"diagrams over {self.inner_index.n_objects} objects"
        return f"ModuleContext({self.M!r}, C={kind}, |I|={self.index.n_objects})"

    @property
    def Ccat(self) -> Category:
        return self.C.cat

    def h(self, i: int) -> Diagram:
        return self.R.lower(i)

    # -- L1 triple ---------------------------------------------------------------------
    def l1_tensor(self, m, X):
        return self.L1.act(m, X)

    def l1_pow(self, X, m):
        return self.L1.power(X, m)

    def l1_map(self, X, Y):
        return self.L1.mapc(X, Y)

    # -- L6 triple ---------------------------------------------------------------------
    def l6_tensor(self, m, X):
        return self.L6.act(m, X)

    def l6_pow(self, X, m):
        return self.L6.power(X, m)

    def map_CI(self, X, Y):
        return self.L6.mapc(X, Y)

    # -- L3 triple ---------------------------------------------------------------------
    def l3_tensor(self, Md: Diagram, c):
        def build():
            C = self.C
            idc = self.Ccat.identity(c)
            return Diagram(Md.index, tuple(C.act(m, c) for m in Md.objs), tuple(C.act_mor(a, idc) for a in Md.arrs))

        return self._cache.get(("l3t", Md, c), build)

    def l3_tensor_mor(self, f: NatTrans, g):
        C, Cc = self.C, self.Ccat
        src = self.l3_tensor(f.source, Cc.source(g))
        tgt = self.l3_tensor(f.target, Cc.target(g))
        return NatTrans(src, tgt, tuple(C.act_mor(x, g) for x in f.comps))

    def hom_r(self, c, X: Diagram):
        def build():
            C = self.C
            idc = self.Ccat.identity(c)
            return Diagram(X.index, tuple(C.mapc(c, x) for x in X.objs), tuple(C.mapc_mor(idc, a) for a in X.arrs))

        return self._cache.get(("hr", c, X), build)

    def hom_r_mor(self, g, h: NatTrans):
        """``hom_r(c, X) -> hom_r(c', X')`` for ``g: c' -> c`` and ``h: X -> X'``."""
        C, Cc = self.C, self.Ccat
        src = self.hom_r(Cc.target(g), h.source)
        tgt = self.hom_r(Cc.source(g), h.target)
        return NatTrans(src, tgt, tuple(C.mapc_mor(g, x) for x in h.comps))

    def hom_l_end(self, Md: Diagram, X: Diagram) -> EndCone:
        def build():
            C = self.C
            T = Bifunctor(
                self.index, self.Ccat,
                lambda i, j: C.power(X.objs[j], Md.objs[i]),
                lambda u, v: C.power_mor(X.arrs[v], Md.arrs[u]),
            )
            return end(T)

        return self._cache.get(("hl", Md, X), build)

    def hom_l(self, Md: Diagram, X: Diagram):
        return self.hom_l_end(Md, X).apex

    def hom_l_mor(self, f: NatTrans, h: NatTrans):
        """``hom_l(M, X) -> hom_l(M', X')`` for ``f: M' -> M`` and ``h: X -> X'``."""
        src = self.hom_l_end(f.target, h.source)
        tgt = self.hom_l_end(f.source, h.target)
        comps = [self.C.power_mor(x, y) for x, y in zip(h.comps, f.comps)]
        return end_mor(src, tgt, comps, self.Ccat)

    def to_r(self, phi: NatTrans, Md, c, X) -> NatTrans:
        C = self.C
        comps = [C.to_map(phi.comps[i], Md.objs[i], c, X.objs[i]) for i in self.index.objects]
        return NatTrans(Md, self.hom_r(c, X), tuple(comps))

    def from_r(self, psi: NatTrans, Md, c, X) -> NatTrans:
        C = self.C
        comps = [C.from_map(psi.comps[i], Md.objs[i], c, X.objs[i]) for i in self.index.objects]
        return NatTrans(self.l3_tensor(Md, c), X, tuple(comps))

    def to_l(self, phi: NatTrans, Md, c, X):
        C = self.C
        wedge = [C.to_power(phi.comps[i], Md.objs[i], c, X.objs[i]) for i in self.index.objects]
        return self.hom_l_end(Md, X).mediate(wedge, c)

    def from_l(self, chi, Md, c, X) -> NatTrans:
        C, Cc = self.C, self.Ccat
        legs = self.hom_l_end(Md, X).legs
        comps = [C.from_power(Cc.compose(legs[i], chi), Md.objs[i], c, X.objs[i]) for i in self.index.objects]
        return NatTrans(self.l3_tensor(Md, c), X, tuple(comps))

    # -- pointwise action of M^I on C^I -------------------------------------------------
    def s5_tensor(self, Md: Diagram, X: Diagram):
        def build():
            C = self.C
            return Diagram(
                X.index,
                tuple(C.act(m, x) for m, x in zip(Md.objs, X.objs)),
                tuple(C.act_mor(a, b) for a, b in zip(Md.arrs, X.arrs)),
            )

        return self._cache.get(("s5t", Md, X), build)

    def s5_tensor_mor(self, f: NatTrans, g: NatTrans):
        C = self.C
        src = self.s5_tensor(f.source, g.source)
        tgt = self.s5_tensor(f.target, g.target)
        return NatTrans(src, tgt, tuple(C.act_mor(a, b) for a, b in zip(f.comps, g.comps)))

    def m_tensor(self, A: Diagram, B: Diagram):
        """Pointwise tensor in ``M^I``."""
        def build():
            M = self.M
            return Diagram(
                A.index,
                tuple(M.tensor(a, b) for a, b in zip(A.objs, B.objs)),
                tuple(M.tensor_mor(a, b) for a, b in zip(A.arrs, B.arrs)),
            )

        return self._cache.get(("mt", A, B), build)

    def m_tensor_mor(self, f: NatTrans, g: NatTrans):
        M = self.M
        src = self.m_tensor(f.source, g.source)
        tgt = self.m_tensor(f.target, g.target)
        return NatTrans(src, tgt, tuple(M.tensor_mor(a, b) for a, b in zip(f.comps, g.comps)))

    def s5_Hom(self, Md: Diagram, Y: Diagram) -> Diagram:
        """``Hom(M, Y)_i = hom_l(M (x) h_i, Y)``."""
        def build():
            idx = self.index
            objs = tuple(self.hom_l(self.m_tensor(Md, self.h(i)), Y) for i in idx.objects)
            idY = self.CI.identity(Y)
            idM = self.MI.identity(Md)
            arrs = []
            for u in idx.arrows:
                if idx.is_identity(u):
                    arrs.append(self.Ccat.identity(objs[idx.sources[u]]))
                else:
                    arrs.append(self.hom_l_mor(self.m_tensor_mor(idM, self.R.lower_mor(u)), idY))
            return Diagram(idx, objs, tuple(arrs))

        return self._cache.get(("Hom", Md, Y), build)

    def s5_Hom_mor(self, f: NatTrans, g: NatTrans) -> NatTrans:
        """``Hom(M, Y) -> Hom(M', Y')`` for ``f: M' -> M`` and ``g: Y -> Y'``."""
        src = self.s5_Hom(f.target, g.source)
        tgt = self.s5_Hom(f.source, g.target)
        comps = []
        for i in self.index.objects:
            hi = self.h(i)
            comps.append(self.hom_l_mor(self.m_tensor_mor(f, self.MI.identity(hi)), g))
        return NatTrans(src, tgt, tuple(comps))

    def s5_Map(self, X: Diagram, Y: Diagram) -> Diagram:
        """``Map(X, Y)_i = map_{C^I}(h_i (x) X, Y)``."""
        def build():
            idx = self.index
            objs = tuple(self.map_CI(self.s5_tensor(self.h(i), X), Y) for i in idx.objects)
            idX = self.CI.identity(X)
            idY = self.CI.identity(Y)
            arrs = []
            for u in idx.arrows:
                if idx.is_identity(u):
                    arrs.append(self.M.identity(objs[idx.sources[u]]))
                else:
                    arrs.append(self.L6.mapc_mor(self.s5_tensor_mor(self.R.lower_mor(u), idX), idY))
            return Diagram(idx, objs, tuple(arrs))

        return self._cache.get(("Map", X, Y), build)

    def s5_Map_mor(self, g: NatTrans, h: NatTrans) -> NatTrans:
        """``Map(X, Y) -> Map(X', Y')`` for ``g: X' -> X`` and ``h: Y -> Y'``."""
        src = self.s5_Map(g.target, h.source)
        tgt = self.s5_Map(g.source, h.target)
        comps = []
        for i in self.index.objects:
            hi = self.h(i)
            comps.append(self.L6.mapc_mor(self.s5_tensor_mor(self.MI.identity(hi), g), h))
        return NatTrans(src, tgt, tuple(comps))

    # -- transpositions for the pointwise action ------------------------------------------
    def p2_to_map(self, phi: NatTrans, Md, X, Y) -> NatTrans:
        """``C^I(M (x) X, Y) -> M^I(M, Map(X, Y))``."""
        M, C, idx = self.M, self.C, self.index
        comps = []
        for i in idx.objects:
            hi = self.h(i)
            hX = self.s5_tensor(hi, X)
            Phi = []
            for j in idx.objects:
                fs = idx.hom(i, j)
                h, mi, xj = hi.objs[j], Md.objs[i], X.objs[j]
                idx_ = self.Ccat.identity(xj)
                maps = [
                    self.Ccat.compose(phi.comps[j], C.act_mor(Md.arrs[f], idx_)) for f in fs
                ]
                out = C.copower_out(len(fs), C.act(mi, xj), Y.objs[j], maps)
                Phi.append(self.Ccat.comp(
                    out,
                    C.assoc(h, mi, xj),
                    C.act_mor(M.sym(mi, h), idx_),
                    C.assoc_inv(mi, h, xj),
                ))
            Phi_i = NatTrans(self.L6.act(Md.objs[i], hX), Y, tuple(Phi))
            comps.append(self.L6.to_map(Phi_i, Md.objs[i], hX, Y))
        return NatTrans(Md, self.s5_Map(X, Y), tuple(comps))

    def p2_from_map(self, psi: NatTrans, Md, X, Y) -> NatTrans:
        M, C, idx = self.M, self.C, self.index
        comps = []
        for j in idx.objects:
            hj = self.h(j)
            hX = self.s5_tensor(hj, X)
            Phi = self.L6.from_map(psi.comps[j], Md.objs[j], hX, Y)
            xj = X.objs[j]
            inj = self.Ccat.compose(C.act_mor(self.R.identity_leg(j), self.Ccat.identity(xj)), C.lunit_inv(xj))
            comps.append(self.Ccat.compose(Phi.comps[j], C.act_mor(M.identity(Md.objs[j]), inj)))
        return NatTrans(self.s5_tensor(Md, X), Y, tuple(comps))

    def p2_to_hom(self, phi: NatTrans, Md, X, Y) -> NatTrans:
        """``C^I(M (x) X, Y) -> C^I(X, Hom(M, Y))``."""
        M, C, idx = self.M, self.C, self.index
        Cc = self.Ccat
        comps = []
        for i in idx.objects:
            hi = self.h(i)
            Mh = self.m_tensor(Md, hi)
            xi = X.objs[i]
            Psi = []
            for j in idx.objects:
                fs = idx.hom(i, j)
                out = C.copower_out(len(fs), xi, X.objs[j], [X.arrs[f] for f in fs])
                Psi.append(Cc.comp(
                    phi.comps[j],
                    C.act_mor(M.identity(Md.objs[j]), out),
                    C.assoc(Md.objs[j], hi.objs[j], xi),
                ))
            Psi_i = NatTrans(self.l3_tensor(Mh, xi), Y, tuple(Psi))
            comps.append(self.to_l(Psi_i, Mh, xi, Y))
        return NatTrans(X, self.s5_Hom(Md, Y), tuple(comps))

    def p2_from_hom(self, chi: NatTrans, Md, X, Y) -> NatTrans:
        M, C, idx = self.M, self.C, self.index
        Cc = self.Ccat
        comps = []
        for j in idx.objects:
            hj = self.h(j)
            Mh = self.m_tensor(Md, hj)
            xj = X.objs[j]
            Psi = self.from_l(chi.comps[j], Mh, xj, Y)
            mj = Md.objs[j]
            emb = M.compose(M.tensor_mor(M.identity(mj), self.R.identity_leg(j)), M.runit_inv(mj))
            comps.append(Cc.compose(Psi.comps[j], C.act_mor(emb, Cc.identity(xj))))
        return NatTrans(self.s5_tensor(Md, X), Y, tuple(comps))


# -- adjunction verification ---------------------------------------------------------------


@dataclass
class TwoVariable:
    """``A(T(a, b), c) ~ B(a, R(b, c)) ~ B'(b, L(a, c))`` with explicit transposes."""

    name: str
    cat0: Category
    cat1: Category
    cat2: Category
    T: Callable
    R: Callable
    L: Callable
    T_mor: Callable
    R_mor: Callable
    L_mor: Callable
    to1: Callable
    from1: Callable
    to2: Callable
    from2: Callable


def l1_adjunction(ctx: ModuleContext) -> TwoVariable:
    return _module_adjunction("L1", ctx.L1)


def l6_adjunction(ctx: ModuleContext) -> TwoVariable:
    return _module_adjunction("L6", ctx.L6)


def _module_adjunction(name: str, mod: ClosedModule) -> TwoVariable:
    return TwoVariable(
        name, mod.cat, mod.base, mod.cat,
        T=mod.act, R=mod.mapc, L=lambda m, Y: mod.power(Y, m),
        T_mor=mod.act_mor, R_mor=mod.mapc_mor, L_mor=lambda f, h: mod.power_mor(h, f),
        to1=mod.to_map, from1=mod.from_map, to2=mod.to_power, from2=mod.from_power,
    )


def l3_adjunction(ctx: ModuleContext) -> TwoVariable:
    return TwoVariable(
        "L3", ctx.CI, ctx.MI, ctx.Ccat,
        T=ctx.l3_tensor, R=ctx.hom_r, L=ctx.hom_l,
        T_mor=ctx.l3_tensor_mor, R_mor=ctx.hom_r_mor, L_mor=ctx.hom_l_mor,
        to1=ctx.to_r, from1=ctx.from_r, to2=ctx.to_l, from2=ctx.from_l,
    )


def p2_adjunction(ctx: ModuleContext) -> TwoVariable:
    return TwoVariable(
        "P2", ctx.CI, ctx.MI, ctx.CI,
        T=ctx.s5_tensor, R=ctx.s5_Map, L=ctx.s5_Hom,
        T_mor=ctx.s5_tensor_mor, R_mor=ctx.s5_Map_mor, L_mor=ctx.s5_Hom_mor,
        to1=ctx.p2_to_map, from1=ctx.p2_from_map, to2=ctx.p2_to_hom, from2=ctx.p2_from_hom,
    )


ADJUNCTIONS = {"L1": l1_adjunction, "L3": l3_adjunction, "L6": l6_adjunction, "P2": p2_adjunction}


@dataclass
class AdjunctionReport:
    witness: IsoWitness
    sizes: tuple = ()
    counterexample: Any = None

    @property
    def ok(self) -> bool:
        return self.witness.ok


def _elements(cat: Category, a, b, rng, limit: int | None):
    """Every morphism (set base) or a basis plus one random combination (linear base)."""
    hs = cat.hom(a, b)
    if cat.linear:
        out = list(hs)
        if len(hs) > 1 and rng is not None:
            out.append(cat.combine(rng.integers(0, cat.p, size=len(hs)), hs, a, b))
        return out, len(hs)
    if limit is not None and len(hs) > limit and rng is not None:
        pick = sorted(rng.choice(len(hs), size=limit, replace=False))
        return [hs[k] for k in pick], len(hs)
    return list(hs), len(hs)


def verify_adjunction(
    adj: TwoVariable, a, b, c, *,
    samples: Sequence[tuple] = (),
    rng: np.random.Generator | None = None,
    limit: int | None = None,
) -> AdjunctionReport:
    """Check both bijections of the chain and their naturality.

    ``samples`` lists ``(f, g, h)`` with ``f: a' -> a``, ``g: b' -> b`` and
    ``h: c -> c'`` (any may be ``None`` for an identity). ``limit`` caps the
    number of set-level elements transposed per hom-set.
    """
    w = IsoWitness(forward=adj.to1, backward=adj.from1)
    c0, c1, c2 = adj.cat0, adj.cat1, adj.cat2
    tab = adj.T(a, b)
    rbc = adj.R(b, c)
    lac = adj.L(a, c)
    h0, n0 = _elements(c0, tab, c, rng, limit)
    h1, n1 = _elements(c1, a, rbc, rng, limit)
    h2, n2 = _elements(c2, b, lac, rng, limit)
    rep = AdjunctionReport(w, (n0, n1, n2))
    w.check(f"{adj.name}: hom sizes agree", n0 == n1 == n2)

    def fail(msg, data):
        w.check(msg, False)
        if rep.counterexample is None:
            rep.counterexample = {"check": msg, "morphism": data}

    for phi in h0:
        t1, t2 = adj.to1(phi, a, b, c), adj.to2(phi, a, b, c)
        if not (c1.is_morphism(t1) and c2.is_morphism(t2)):
            fail(f"{adj.name}: transpose is not a morphism", c0.describe(phi))
            break
        if not c0.equal(adj.from1(t1, a, b, c), phi):
            fail(f"{adj.name}: first round trip", c0.describe(phi))
            break
        if not c0.equal(adj.from2(t2, a, b, c), phi):
            fail(f"{adj.name}: second round trip", c0.describe(phi))
            break
    for psi in h1:
        if not c1.equal(adj.to1(adj.from1(psi, a, b, c), a, b, c), psi):
            fail(f"{adj.name}: first inverse round trip", c1.describe(psi))
            break
    for chi in h2:
        if not c2.equal(adj.to2(adj.from2(chi, a, b, c), a, b, c), chi):
            fail(f"{adj.name}: second inverse round trip", c2.describe(chi))
            break
    # naturality in each variable
    for f, g, h in samples:
        f = f if f is not None else c1.identity(a)
        g = g if g is not None else c2.identity(b)
        h = h if h is not None else c0.identity(c)
        a2, b2, c3 = c1.source(f), c2.source(g), c0.target(h)
        for phi in h0[: max(1, min(len(h0), 4))]:
            moved = c0.comp(h, phi, adj.T_mor(f, g))
            lhs1 = adj.to1(moved, a2, b2, c3)
            rhs1 = c1.comp(adj.R_mor(g, h), adj.to1(phi, a, b, c), f)
            if not c1.equal(lhs1, rhs1):
                fail(f"{adj.name}: first transpose not natural", c0.describe(phi))
                break
            lhs2 = adj.to2(moved, a2, b2, c3)
            rhs2 = c2.comp(adj.L_mor(f, h), adj.to2(phi, a, b, c), g)
            if not c2.equal(lhs2, rhs2):
                fail(f"{adj.name}: second transpose not natural", c0.describe(phi))
                break
    return rep


# -- Yoneda evaluations ------------------------------------------------------------------------


def eq1_maps(M: ClosedMonoidal, Md: Diagram, i: int):
    """Forward ``alpha -> alpha_i . [id_i]`` and backward ``x -> (f -> M(f) . x)``."""
    idx = Md.index
    R = representables(M, idx)
    D = DiagramCategory(M, idx)
    hi = R.lower(i)
    leg = R.identity_leg(i)

    def forward(alpha):
        return M.compose(alpha.comps[i], leg)

    def backward(x):
        comps = []
        for j in idx.objects:
            fs = idx.hom(i, j)
            cop = R.copower(len(fs))
            comps.append(cop.mediate([M.compose(Md.arrs[f], x) for f in fs], Md.objs[j]))
        return NatTrans(hi, Md, tuple(comps))

    return D, hi, forward, backward


def eq1_check(M: ClosedMonoidal, Md: Diagram, i: int) -> IsoWitness:
    """``M^I(h_i, M) ~ M(k, M_i)`` as an explicit bijection (basis-level when linear)."""
    D, hi, fwd, bwd = eq1_maps(M, Md, i)
    k = M.unit()
    left = D.hom(hi, Md)
    right = M.hom(k, Md.objs[i])
    w = IsoWitness(fwd, bwd)
    w.check("sizes agree", len(left) == len(right))
    w.check("backward lands in natural transformations", all(D.is_morphism(bwd(x)) for x in right))
    w.check("backward . forward = id", all(D.equal(bwd(fwd(a)), a) for a in left))
    w.check("forward . backward = id", all(M.equal(fwd(bwd(x)), x) for x in right))
    return w


def _naturality_in_i(w: IsoWitness, idx: FiniteCategory, cat: Category, evals: dict, moves: dict, X: Diagram):
    for u in idx.non_identity_arrows():
        s, t = idx.sources[u], idx.targets[u]
        lhs = cat.compose(evals[t], moves[u])
        rhs = cat.compose(X.arrs[u], evals[s])
        w.check(f"natural along arrow {idx.arrow_name(u)}", cat.equal(lhs, rhs))


def yoneda_monoidal_check(ctx: ModuleContext, Md: Diagram, i: int | None = None) -> IsoWitness:
    """``map_{M^I}(h_i, M) -> M_i`` is an isomorphism, naturally in ``i``."""
    M, idx, R = ctx.M, ctx.index, ctx.R
    S = ctx.self_module
    objs = idx.objects if i is None else [i]
    evals = {}
    out = IsoWitness(forward={}, backward={})
    for q in idx.objects:
        E = ctx.L1.map_end(R.lower(q), Md)
        hq = R.lower(q).objs[q]
        step = M.ihom_mor(R.identity_leg(q), M.identity(Md.objs[q]))
        evals[q] = M.comp(S.power_unit(Md.objs[q]), step, E.legs[q])
    for q in objs:
        w = iso_witness(M, evals[q], f"evaluation at {q}")
        out.forward[q], out.backward[q] = w.forward, w.backward
        out.checks += w.checks
    moves = {}
    for u in idx.non_identity_arrows():
        moves[u] = ctx.L1.mapc_mor(R.lower_mor(u), ctx.MI.identity(Md))
    _naturality_in_i(out, idx, M, evals, moves, Md)
    return out


def yoneda_module_check(ctx: ModuleContext, X: Diagram, i: int | None = None) -> IsoWitness:
    """``hom_l(h_i, X) -> X_i`` is an isomorphism, naturally in ``i``."""
    C, Cc, idx, R = ctx.C, ctx.Ccat, ctx.index, ctx.R
    objs = idx.objects if i is None else [i]
    evals = {}
    out = IsoWitness(forward={}, backward={})
    for q in idx.objects:
        E = ctx.hom_l_end(R.lower(q), X)
        step = C.power_mor(Cc.identity(X.objs[q]), R.identity_leg(q))
        evals[q] = Cc.comp(C.power_unit(X.objs[q]), step, E.legs[q])
    for q in objs:
        w = iso_witness(Cc, evals[q], f"evaluation at {q}")
        out.forward[q], out.backward[q] = w.forward, w.backward
        out.checks += w.checks
    moves = {}
    for u in idx.non_identity_arrows():
        moves[u] = ctx.hom_l_mor(R.lower_mor(u), ctx.CI.identity(X))
    _naturality_in_i(out, idx, Cc, evals, moves, X)
    return out


def action_coherence_check(mod: ClosedModule, m, n, X) -> IsoWitness:
    """``k (x) X ~ X`` and ``(m (x) n) (x) X ~ m (x) (n (x) X)`` with canonical witnesses."""
    cat = mod.cat
    w = IsoWitness(forward=mod.lunit(X), backward=mod.lunit_inv(X))
    for name, f, g in (
        ("left unit", mod.lunit(X), mod.lunit_inv(X)),
        ("associativity", mod.assoc(m, n, X), mod.assoc_inv(m, n, X)),
    ):
        w.check(f"{name}: morphism", cat.is_morphism(f) and cat.is_morphism(g))
        w.check(f"{name}: inverse pair", cat.is_identity(cat.compose(g, f)) and cat.is_identity(cat.compose(f, g)))
    return w
