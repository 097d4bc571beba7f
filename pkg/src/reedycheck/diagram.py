"""Diagram categories ``C^I`` over a finite index, ends, coends and representables.

Objects of ``C^I`` are :class:`Diagram` values (an object per index object and
a morphism per index arrow, identities included); morphisms are
:class:`NatTrans`. Limits and colimits are pointwise. Ends and coends are
limits and colimits over the *wedge shape* of the index: one node per object
``i`` carrying ``T(i, i)`` and one node per non-identity arrow ``f: i -> j``
carrying ``T(i, j)`` (dually ``T(j, i)`` for coends). That limit is the
equalizer of products; :func:`end_equalizer` computes the literal equalizer
and serves as a cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

import numpy as np

from . import linalg as la
from .category import Category, Cone, IdCache, NotAConeError, ResourceLimitError
from .fincat import FiniteCategory, ValidationReport, from_generators, opposite, product_category
from .monoidal import ClosedModule, ClosedMonoidal, SelfModule


class FunctorialityError(ValueError):
    """A diagram or transformation violates functoriality or naturality."""


@dataclass(frozen=True, eq=False)
class Diagram:
    index: FiniteCategory
    objs: tuple
    arrs: tuple = field(repr=False)

    def __getitem__(self, i: int):
        return self.objs[i]

    def __repr__(self):
        return f"Diagram({list(self.objs)!r})"


@dataclass(frozen=True, eq=False)
class NatTrans:
    source: Diagram
    target: Diagram
    comps: tuple = field(repr=False)

    def __getitem__(self, i: int):
        return self.comps[i]

    def __repr__(self):
        return f"NatTrans({self.source!r} -> {self.target!r})"


def make_diagram(cat: Category, index: FiniteCategory, objs: Sequence, arrs: dict | Sequence | None = None,
                 check: bool = True) -> Diagram:
    """Fill identity arrows; ``arrs`` maps non-identity arrow indices to morphisms."""
    full = [None] * index.n_arrows
    if arrs is not None:
        items = arrs.items() if isinstance(arrs, dict) else enumerate(arrs)
        for u, f in items:
            if f is not None and not index.is_identity(u):
                full[u] = f
    for i in index.objects:
        full[index.identities[i]] = cat.identity(objs[i])
    missing = [u for u in index.arrows if full[u] is None]
    if missing:
        raise FunctorialityError(f"no morphism given for arrows {missing}")
    d = Diagram(index, tuple(objs), tuple(full))
    if check:
        rep = check_functorial(cat, d)
        if not rep.ok:
            raise FunctorialityError("; ".join(rep.violations))
    return d


def check_functorial(cat: Category, d: Diagram) -> ValidationReport:
    rep = ValidationReport()
    idx = d.index
    for u in idx.arrows:
        f = d.arrs[u]
        s, t = idx.sources[u], idx.targets[u]
        if not cat.same_object(cat.source(f), d.objs[s]) or not cat.same_object(cat.target(f), d.objs[t]):
            rep.add(f"arrow {idx.arrow_name(u)} has wrong endpoints")
            return rep
    for i in idx.objects:
        if not cat.is_identity(d.arrs[idx.identities[i]]):
            rep.add(f"identity of object {i} is not sent to an identity")
    for g in idx.arrows:
        for f in idx.arrows:
            h = int(idx.comp[g, f])
            if h >= 0 and not (idx.is_identity(g) or idx.is_identity(f)):
                if not cat.equal(cat.compose(d.arrs[g], d.arrs[f]), d.arrs[h]):
                    rep.add(f"composite {idx.arrow_name(g)}.{idx.arrow_name(f)} not preserved")
    return rep


def check_natural(cat: Category, a: NatTrans) -> ValidationReport:
    rep = ValidationReport()
    idx = a.source.index
    for u in idx.non_identity_arrows():
        s, t = idx.sources[u], idx.targets[u]
        if not cat.equal(cat.compose(a.target.arrs[u], a.comps[s]), cat.compose(a.comps[t], a.source.arrs[u])):
            rep.add(f"naturality square fails at arrow {idx.arrow_name(u)}")
    return rep


def constant(cat: Category, index: FiniteCategory, c) -> Diagram:
    idc = cat.identity(c)
    return Diagram(index, tuple(c for _ in index.objects), tuple(idc for _ in index.arrows))


# -- the diagram category ----------------------------------------------------------


class DiagramCategory(Category):
    """``C^I`` with pointwise (co)limits; linear whenever ``C`` is."""

    def __init__(self, cat: Category, index: FiniteCategory):
        self.inner = cat
        self.index = index
        self.linear = cat.linear
        self.p = getattr(cat, "p", 0)
        self.cap = cat.cap
        self._hom_cache = IdCache(256)

    def __repr__(self):
        return f"DiagramCategory({self.inner!r}, {self.index.n_objects} objects)"

    def diagram(self, objs, arrs=None, check=True) -> Diagram:
        return make_diagram(self.inner, self.index, objs, arrs, check)

    def nat(self, src: Diagram, tgt: Diagram, comps, check=True) -> NatTrans:
        a = NatTrans(src, tgt, tuple(comps))
        if check:
            rep = check_natural(self.inner, a)
            if not rep.ok:
                raise FunctorialityError("; ".join(rep.violations))
        return a

    def constant(self, c) -> Diagram:
        return constant(self.inner, self.index, c)

    def identity(self, a):
        C = self.inner
        return NatTrans(a, a, tuple(C.identity(o) for o in a.objs))

    def compose(self, g, f):
        C = self.inner
        return NatTrans(f.source, g.target, tuple(C.compose(x, y) for x, y in zip(g.comps, f.comps)))

    def equal(self, f, g):
        C = self.inner
        return all(C.equal(x, y) for x, y in zip(f.comps, g.comps))

    def source(self, f):
        return f.source

    def target(self, f):
        return f.target

    def same_object(self, a, b):
        if a is b:
            return True
        C = self.inner
        return (
            a.index.same_as(b.index)
            and all(C.same_object(x, y) for x, y in zip(a.objs, b.objs))
            and all(C.equal(x, y) for x, y in zip(a.arrs, b.arrs))
        )

    def describe(self, f):
        return [self.inner.describe(c) for c in f.comps]

    def is_morphism(self, f) -> bool:
        return all(self.inner.is_morphism(c) for c in f.comps) and check_natural(self.inner, f).ok

    def inverse(self, f):
        inv = []
        for c in f.comps:
            x = self.inner.inverse(c)
            if x is None:
                return None
            inv.append(x)
        return NatTrans(f.target, f.source, tuple(inv))

    # -- hom --------------------------------------------------------------------
    def hom(self, a, b):
        return self._hom_cache.get((a, b), lambda: self._hom(a, b))

    def _hom(self, a, b):
        C = self.inner
        if self.linear:
            return self._linear_hom(a, b)
        from .finset import FinSets

        if isinstance(C, FinSets):
            return _finset_nat_enumerate(self, a, b)
        return _generic_nat_enumerate(self, a, b)

    def _linear_hom(self, a, b):
        C, idx, p = self.inner, self.index, self.p
        bases = [C.hom(a.objs[i], b.objs[i]) for i in idx.objects]
        offs = np.concatenate([[0], np.cumsum([len(x) for x in bases])]).astype(int)
        total = int(offs[-1])
        rows = []
        for u in idx.non_identity_arrows():
            s, t = idx.sources[u], idx.targets[u]
            length = C.flat_len(a.objs[s], b.objs[t])
            if not length:
                continue
            blk = la.zeros(length, total)
            for k, f in enumerate(bases[s]):
                blk[:, offs[s] + k] += C.flatten(C.compose(b.arrs[u], f))
            for k, f in enumerate(bases[t]):
                blk[:, offs[t] + k] -= C.flatten(C.compose(f, a.arrs[u]))
            rows.append(blk % p)
        rel = np.vstack(rows) if rows else la.zeros(0, total)
        ns, _ = la.nullspace(rel, p)
        out = []
        for col in range(ns.shape[1]):
            v = ns[:, col]
            comps = [
                C.combine(v[offs[i]:offs[i + 1]], bases[i], a.objs[i], b.objs[i]) for i in idx.objects
            ]
            out.append(NatTrans(a, b, tuple(comps)))
        return out

    def flat_len(self, a, b):
        return sum(self.inner.flat_len(x, y) for x, y in zip(a.objs, b.objs))

    def flatten(self, f):
        parts = [self.inner.flatten(c) for c in f.comps]
        return np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)

    def unflatten(self, vec, a, b):
        out, off = [], 0
        for x, y in zip(a.objs, b.objs):
            n = self.inner.flat_len(x, y)
            out.append(self.inner.unflatten(vec[off:off + n], x, y))
            off += n
        return NatTrans(a, b, tuple(out))

    # -- (co)limits ---------------------------------------------------------------
    def limit(self, shape, objs, arrs):
        return self._pointwise(shape, objs, arrs, lim=True)

    def colimit(self, shape, objs, arrs):
        return self._pointwise(shape, objs, arrs, lim=False)

    def _pointwise(self, shape, objs, arrs, lim: bool):
        C, idx = self.inner, self.index
        cones = []
        for i in idx.objects:
            o_i = [o.objs[i] for o in objs]
            a_i = [a.comps[i] if a is not None else None for a in arrs]
            cones.append(C.limit(shape, o_i, a_i) if lim else C.colimit(shape, o_i, a_i))
        apex_arrs = []
        for u in idx.arrows:
            s, t = idx.sources[u], idx.targets[u]
            if idx.is_identity(u):
                apex_arrs.append(C.identity(cones[s].apex))
            elif lim:
                legs = [C.compose(o.arrs[u], leg) for o, leg in zip(objs, cones[s].legs)]
                apex_arrs.append(cones[t].mediate(legs, cones[s].apex))
            else:
                legs = [C.compose(leg, o.arrs[u]) for o, leg in zip(objs, cones[t].legs)]
                apex_arrs.append(cones[s].mediate(legs, cones[t].apex))
        apex = Diagram(idx, tuple(c.apex for c in cones), tuple(apex_arrs))
        legs = []
        for k, o in enumerate(objs):
            comps = tuple(cones[i].legs[k] for i in idx.objects)
            legs.append(NatTrans(apex, o, comps) if lim else NatTrans(o, apex, comps))

        def mediate(cone_legs, other):
            comps = []
            for i in idx.objects:
                oth = other.objs[i] if other is not None else None
                comps.append(cones[i].mediate([leg.comps[i] for leg in cone_legs], oth))
            if cone_legs:
                other = cone_legs[0].source if lim else cone_legs[0].target
            return NatTrans(other, apex, tuple(comps)) if lim else NatTrans(apex, other, tuple(comps))

        return Cone(apex, legs, mediate)


def _finset_nat_enumerate(D: DiagramCategory, a: Diagram, b: Diagram) -> list[NatTrans]:
    """Element-level backtracking with propagation along naturality constraints."""
    from .finset import FinSetMap

    idx = D.index
    variables = [(i, x) for i in idx.objects for x in range(a.objs[i].size)]
    nonid = idx.non_identity_arrows()
    # constraints: alpha_t(a(u)(x)) == b(u)(alpha_s(x))
    links: dict[tuple[int, int], list[tuple[int, int]]] = {v: [] for v in variables}
    for u in nonid:
        s, t = idx.sources[u], idx.targets[u]
        for x in range(a.objs[s].size):
            links[(s, x)].append((u, x))
    val: dict[tuple[int, int], int] = {}
    out: list[NatTrans] = []
    cap = D.cap

    def assign(var, y, trail) -> bool:
        stack = [(var, y)]
        while stack:
            v, y = stack.pop()
            if v in val:
                if val[v] != y:
                    return False
                continue
            val[v] = y
            trail.append(v)
            s, x = v
            for u, _ in links[v]:
                t = idx.targets[u]
                stack.append(((t, a.arrs[u].table[x]), b.arrs[u].table[y]))
        return True

    def rec(k: int) -> None:
        while k < len(variables) and variables[k] in val:
            k += 1
        if k == len(variables):
            comps = tuple(
                FinSetMap(a.objs[i], b.objs[i], tuple(val[(i, x)] for x in range(a.objs[i].size)))
                for i in idx.objects
            )
            out.append(NatTrans(a, b, comps))
            if len(out) > cap:
                raise ResourceLimitError(f"natural transformations exceed cap {cap}")
            return
        var = variables[k]
        for y in range(b.objs[var[0]].size):
            trail: list = []
            if assign(var, y, trail):
                rec(k + 1)
            for v in trail:
                del val[v]

    rec(0)
    return out


def _generic_nat_enumerate(D: DiagramCategory, a: Diagram, b: Diagram) -> list[NatTrans]:
    C, idx = D.inner, D.index
    n = idx.n_objects
    cands = [C.hom(a.objs[i], b.objs[i]) for i in idx.objects]
    checks: list[list[int]] = [[] for _ in range(n)]
    for u in idx.non_identity_arrows():
        checks[max(idx.sources[u], idx.targets[u])].append(u)
    cur: list = [None] * n
    out: list[NatTrans] = []

    def rec(i: int) -> None:
        if i == n:
            out.append(NatTrans(a, b, tuple(cur)))
            if len(out) > D.cap:
                raise ResourceLimitError(f"natural transformations exceed cap {D.cap}")
            return
        for f in cands[i]:
            cur[i] = f
            ok = True
            for u in checks[i]:
                s, t = idx.sources[u], idx.targets[u]
                if not C.equal(C.compose(b.arrs[u], cur[s]), C.compose(cur[t], a.arrs[u])):
                    ok = False
                    break
            if ok:
                rec(i + 1)

    rec(0)
    return out


def hom_diagram(D: DiagramCategory, a: Diagram, b: Diagram) -> list[NatTrans]:
    """All natural transformations (set base) or a basis of them (linear base)."""
    return D.hom(a, b)


# -- bifunctors, ends and coends ------------------------------------------------------


class Bifunctor:
    """``T: I^op x I -> C`` given by ``obj(i, j)`` and ``mor(u, v)``.

    For ``u: i' -> i`` and ``v: j -> j'`` in ``I``, ``mor(u, v)`` is the
    morphism ``T(i, j) -> T(i', j')``. Values are memoised.
    """

    def __init__(self, index: FiniteCategory, cat: Category, obj: Callable, mor: Callable):
        self.index = index
        self.cat = cat
        self._obj = obj
        self._mor = mor
        self._objs: dict = {}
        self._mors: dict = {}

    def obj(self, i: int, j: int):
        key = (i, j)
        if key not in self._objs:
            self._objs[key] = self._obj(i, j)
        return self._objs[key]

    def mor(self, u: int, v: int):
        key = (u, v)
        if key not in self._mors:
            self._mors[key] = self._mor(u, v)
        return self._mors[key]

    def as_diagram(self) -> Diagram:
        """Materialise over ``product_category(opposite(I), I)``."""
        idx = self.index
        pc = product_category(opposite(idx), idx)
        n, m = idx.n_objects, idx.n_arrows
        objs = tuple(self.obj(i, j) for i in range(n) for j in range(n))
        arrs = tuple(self.mor(u, v) for u in range(m) for v in range(m))
        return Diagram(pc, objs, arrs)


def wedge_shape(index: FiniteCategory, co: bool = False) -> tuple[FiniteCategory, list[int]]:
    """The shape whose limit is an end (colimit: coend); returns it with the arrow list."""
    n = index.n_objects
    nonid = index.non_identity_arrows()
    gens = []
    for k, f in enumerate(nonid):
        s, t = index.sources[f], index.targets[f]
        if co:
            gens += [(n + k, s), (n + k, t)]
        else:
            gens += [(s, n + k), (t, n + k)]
    return from_generators(n + len(nonid), gens, lambda g, f: -1), nonid


@dataclass
class EndCone:
    """An end (or coend) with its projections (injections) and universal arrow."""

    apex: Any
    legs: list
    _mediate: Callable

    def mediate(self, wedge: Sequence, other=None):
        return self._mediate(list(wedge), other)


def end(T: Bifunctor) -> EndCone:
    idx, C = T.index, T.cat
    n = idx.n_objects
    shape, nonid = wedge_shape(idx)
    objs = [T.obj(i, i) for i in range(n)] + [T.obj(idx.sources[f], idx.targets[f]) for f in nonid]
    arrs: list = [C.identity(o) for o in objs]
    alphas = []
    for f in nonid:
        s, t = idx.sources[f], idx.targets[f]
        alphas.append(T.mor(idx.identities[s], f))
        arrs.append(alphas[-1])
        arrs.append(T.mor(f, idx.identities[t]))
    cone = C.limit(shape, objs, arrs)

    def mediate(wedge, other):
        full = list(wedge) + [C.compose(al, wedge[idx.sources[f]]) for al, f in zip(alphas, nonid)]
        return cone.mediate(full, other)

    return EndCone(cone.apex, cone.legs[:n], mediate)


def coend(T: Bifunctor) -> EndCone:
    idx, C = T.index, T.cat
    n = idx.n_objects
    shape, nonid = wedge_shape(idx, co=True)
    objs = [T.obj(i, i) for i in range(n)] + [T.obj(idx.targets[f], idx.sources[f]) for f in nonid]
    arrs: list = [C.identity(o) for o in objs]
    lefts = []
    for f in nonid:
        s, t = idx.sources[f], idx.targets[f]
        lefts.append(T.mor(f, idx.identities[s]))
        arrs.append(lefts[-1])
        arrs.append(T.mor(idx.identities[t], f))
    cone = C.colimit(shape, objs, arrs)

    def mediate(cowedge, other):
        full = list(cowedge) + [C.compose(cowedge[idx.sources[f]], lf) for lf, f in zip(lefts, nonid)]
        return cone.mediate(full, other)

    return EndCone(cone.apex, cone.legs[:n], mediate)


def end_equalizer(T: Bifunctor) -> EndCone:
    """The end as the equalizer of ``prod_i T(i,i) => prod_f T(s f, t f)``."""
    idx, C = T.index, T.cat
    n = idx.n_objects
    nonid = idx.non_identity_arrows()
    P = C.product([T.obj(i, i) for i in range(n)])
    Q = C.product([T.obj(idx.sources[f], idx.targets[f]) for f in nonid])
    left = Q.mediate([C.compose(T.mor(idx.identities[idx.sources[f]], f), P.legs[idx.sources[f]]) for f in nonid], P.apex)
    right = Q.mediate([C.compose(T.mor(f, idx.identities[idx.targets[f]]), P.legs[idx.targets[f]]) for f in nonid], P.apex)
    eq = C.equalizer(left, right)
    legs = [C.compose(P.legs[i], eq.legs[0]) for i in range(n)]

    def mediate(wedge, other):
        g = P.mediate(wedge, other)
        return eq.mediate([g, C.compose(left, g)], other)

    return EndCone(eq.apex, legs, mediate)


def coend_coequalizer(T: Bifunctor) -> EndCone:
    """The coend as the coequalizer of ``coprod_f T(t f, s f) => coprod_i T(i,i)``."""
    idx, C = T.index, T.cat
    n = idx.n_objects
    nonid = idx.non_identity_arrows()
    P = C.coproduct([T.obj(i, i) for i in range(n)])
    Q = C.coproduct([T.obj(idx.targets[f], idx.sources[f]) for f in nonid])
    left = Q.mediate([C.compose(P.legs[idx.sources[f]], T.mor(f, idx.identities[idx.sources[f]])) for f in nonid], P.apex)
    right = Q.mediate([C.compose(P.legs[idx.targets[f]], T.mor(idx.identities[idx.targets[f]], f)) for f in nonid], P.apex)
    cq = C.coequalizer(left, right)
    legs = [C.compose(cq.legs[1], P.legs[i]) for i in range(n)]

    def mediate(cowedge, other):
        g = P.mediate(cowedge, other)
        return cq.mediate([C.compose(g, left), g], other)

    return EndCone(cq.apex, legs, mediate)


def end_mor(src: EndCone, tgt: EndCone, comps: Sequence, cat: Category):
    """Map of ends induced by a natural family ``T(i, j) -> T'(i, j)`` (given on the diagonal)."""
    return tgt.mediate([cat.compose(c, leg) for c, leg in zip(comps, src.legs)], src.apex)


def coend_mor(src: EndCone, tgt: EndCone, comps: Sequence, cat: Category):
    return src.mediate([cat.compose(leg, c) for c, leg in zip(comps, tgt.legs)], tgt.apex)


def hom_bifunctor(C: Category, a: Diagram, b: Diagram) -> Bifunctor:
    """``(i, j) -> C(a_i, b_j)`` as a finite-set-valued bifunctor (set bases only)."""
    from .finset import FinSetMap, FinSetObject, FinSets

    idx = a.index
    homs = {}

    def hom(i, j):
        if (i, j) not in homs:
            homs[(i, j)] = C.hom(a.objs[i], b.objs[j])
        return homs[(i, j)]

    def obj(i, j):
        return FinSetObject(len(hom(i, j)))

    def mor(u, v):
        i2, i = idx.sources[u], idx.targets[u]
        j, j2 = idx.sources[v], idx.targets[v]
        src, tgt = hom(i, j), hom(i2, j2)
        table = []
        for f in src:
            g = C.comp(b.arrs[v], f, a.arrs[u])
            table.append(next(k for k, h in enumerate(tgt) if C.equal(h, g)))
        return FinSetMap(FinSetObject(len(src)), FinSetObject(len(tgt)), tuple(table))

    return Bifunctor(idx, FinSets(C.cap), obj, mor)


# -- representables -----------------------------------------------------------------------


def copower_reindex(M: ClosedMonoidal, n_src: int, n_tgt: int, mapping: Sequence[int]):
    """``k^{(+n_src)} -> k^{(+n_tgt)}`` sending summand ``s`` to summand ``mapping[s]``."""
    src, tgt = M.unit_copower(n_src), M.unit_copower(n_tgt)
    return src.mediate([tgt.legs[mapping[s]] for s in range(n_src)], tgt.apex)


class Representables:
    """Cached ``h_i`` and ``h^i`` for one base and index; summands follow arrow order."""

    def __init__(self, M: ClosedMonoidal, index: FiniteCategory):
        self.M = M
        self.index = index
        self._lower: dict = {}
        self._upper: dict = {}
        self._cop: dict = {}

    def copower(self, n: int) -> Cone:
        if n not in self._cop:
            self._cop[n] = self.M.unit_copower(n)
        return self._cop[n]

    def _reindex(self, src: list[int], tgt: list[int], fn) -> Any:
        pos = {f: k for k, f in enumerate(tgt)}
        cs, ct = self.copower(len(src)), self.copower(len(tgt))
        return cs.mediate([ct.legs[pos[fn(f)]] for f in src], ct.apex)

    def lower(self, i: int) -> Diagram:
        """``h_i: j -> coprod_{I(i, j)} k``."""
        if i not in self._lower:
            idx, M = self.index, self.M
            objs = tuple(self.copower(len(idx.hom(i, j))).apex for j in idx.objects)
            arrs = []
            for v in idx.arrows:
                j, j2 = idx.sources[v], idx.targets[v]
                if idx.is_identity(v):
                    arrs.append(M.identity(objs[j]))
                else:
                    arrs.append(self._reindex(idx.hom(i, j), idx.hom(i, j2), lambda f, v=v: int(idx.comp[v, f])))
            self._lower[i] = Diagram(idx, objs, tuple(arrs))
        return self._lower[i]

    def upper(self, i: int) -> Diagram:
        """``h^i: j -> coprod_{I(j, i)} k`` over ``opposite(I)``."""
        if i not in self._upper:
            idx, M = self.index, self.M
            op = opposite(idx)
            objs = tuple(self.copower(len(idx.hom(j, i))).apex for j in idx.objects)
            arrs = []
            for v in idx.arrows:
                # v: j' -> j in I is an arrow j -> j' of the opposite
                j2, j = idx.sources[v], idx.targets[v]
                if idx.is_identity(v):
                    arrs.append(M.identity(objs[j]))
                else:
                    arrs.append(self._reindex(idx.hom(j, i), idx.hom(j2, i), lambda g, v=v: int(idx.comp[g, v])))
            self._upper[i] = Diagram(op, objs, tuple(arrs))
        return self._upper[i]

    def lower_mor(self, u: int) -> NatTrans:
        """``h_i -> h_{i'}`` for ``u: i' -> i``, precomposing with ``u``."""
        idx = self.index
        i2, i = idx.sources[u], idx.targets[u]
        a, b = self.lower(i), self.lower(i2)
        comps = tuple(
            self._reindex(idx.hom(i, q), idx.hom(i2, q), lambda f: int(idx.comp[f, u])) for q in idx.objects
        )
        return NatTrans(a, b, comps)

    def upper_map(self, u: int, q: int):
        """``h^{i'}(q) -> h^i(q)`` for ``u: i' -> i``, postcomposing with ``u``."""
        idx = self.index
        i2, i = idx.sources[u], idx.targets[u]
        return self._reindex(idx.hom(q, i2), idx.hom(q, i), lambda g: int(idx.comp[u, g]))

    def upper_along(self, i: int, w: int):
        """``h^i(q') -> h^i(q)`` for ``w: q -> q'``, precomposing with ``w``."""
        idx = self.index
        q, q2 = idx.sources[w], idx.targets[w]
        return self._reindex(idx.hom(q2, i), idx.hom(q, i), lambda g: int(idx.comp[g, w]))

    def identity_leg(self, i: int):
        """Summand of ``id_i`` in ``h_i(i)``: a map ``k -> h_i(i)``."""
        idx = self.index
        pos = idx.hom(i, i).index(idx.identities[i])
        return self.copower(len(idx.hom(i, i))).legs[pos]


_REPS = IdCache(64)


def representables(M: ClosedMonoidal, index: FiniteCategory) -> Representables:
    return _REPS.get((M, index), lambda: Representables(M, index))


def h_lower(M: ClosedMonoidal, index: FiniteCategory, i: int) -> Diagram:
    return representables(M, index).lower(i)


def h_upper(M: ClosedMonoidal, index: FiniteCategory, i: int) -> Diagram:
    return representables(M, index).upper(i)


# -- codifferential and differential ----------------------------------------------------------


def codifferential(mod: ClosedModule, X: Diagram) -> Bifunctor:
    """``CX(i, j) = h_i (x) X_j``, valued in ``C^I``."""
    idx, C = X.index, mod.cat
    R = representables(mod.base, idx)
    DC = DiagramCategory(C, idx)

    def obj(i, j):
        h = R.lower(i)
        objs = tuple(mod.act(h.objs[q], X.objs[j]) for q in idx.objects)
        arrs = tuple(mod.act_mor(h.arrs[w], C.identity(X.objs[j])) for w in idx.arrows)
        return Diagram(idx, objs, arrs)

    def mor(u, v):
        hu = R.lower_mor(u)
        src = obj(idx.targets[u], idx.sources[v])
        tgt = obj(idx.sources[u], idx.targets[v])
        return NatTrans(src, tgt, tuple(mod.act_mor(hu.comps[q], X.arrs[v]) for q in idx.objects))

    return Bifunctor(idx, DC, obj, mor)


def differential(mod: ClosedModule, X: Diagram) -> Bifunctor:
    """``DX(i, j) = X_j^{h^i}``: the diagram ``q -> X_j^{h^i(q)}``."""
    idx, C = X.index, mod.cat
    M = mod.base
    R = representables(M, idx)
    DC = DiagramCategory(C, idx)

    def obj(i, j):
        h = R.upper(i)
        objs = tuple(mod.power(X.objs[j], h.objs[q]) for q in idx.objects)
        arrs = tuple(mod.power_mor(C.identity(X.objs[j]), R.upper_along(i, w)) for w in idx.arrows)
        return Diagram(idx, objs, arrs)

    def mor(u, v):
        src = obj(idx.targets[u], idx.sources[v])
        tgt = obj(idx.sources[u], idx.targets[v])
        return NatTrans(src, tgt, tuple(mod.power_mor(X.arrs[v], R.upper_map(u, q)) for q in idx.objects))

    return Bifunctor(idx, DC, obj, mor)


# -- Yoneda (co)reduction ------------------------------------------------------------------


@dataclass
class IsoWitness:
    """Forward/backward maps of a claimed isomorphism with the checks that were run."""

    forward: Any
    backward: Any
    checks: list = field(default_factory=list)
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.backward is not None and all(ok for _, ok in self.checks)

    def check(self, name: str, ok: bool) -> bool:
        self.checks.append((name, bool(ok)))
        return bool(ok)

    def failures(self) -> list[str]:
        return [name for name, ok in self.checks if not ok]


def iso_witness(cat: Category, forward, name: str = "iso") -> IsoWitness:
    """Invert ``forward`` and verify both composites are identities."""
    inv = cat.inverse(forward)
    w = IsoWitness(forward, inv)
    if not w.check(f"{name}: invertible", inv is not None):
        return w
    w.check(f"{name}: backward . forward = id", cat.is_identity(cat.compose(inv, forward)))
    w.check(f"{name}: forward . backward = id", cat.is_identity(cat.compose(forward, inv)))
    return w


def coreduction_cowedge(mod: ClosedModule, X: Diagram, i: int) -> NatTrans:
    """``h_i (x) X_i -> X``; on summand ``f: i -> q`` it is ``X(f)``."""
    idx = X.index
    T = codifferential(mod, X)
    src = T.obj(i, i)
    comps = []
    for q in idx.objects:
        fs = idx.hom(i, q)
        comps.append(mod.copower_out(len(fs), X.objs[i], X.objs[q], [X.arrs[f] for f in fs]))
    return NatTrans(src, X, tuple(comps))


def coreduction_check(mod: ClosedModule, X: Diagram) -> IsoWitness:
    """``int^i h_i (x) X_i -> X`` is an isomorphism."""
    T = codifferential(mod, X)
    DC = T.cat
    ce = coend(T)
    wedge = [coreduction_cowedge(mod, X, i) for i in X.index.objects]
    fwd = ce.mediate(wedge, X)
    w = iso_witness(DC, fwd, "coend comparison")
    return w


def reduction_wedge(mod: ClosedModule, X: Diagram, i: int) -> NatTrans:
    """``X -> X_i^{h^i}``; at ``q`` it transposes the copower map with summands ``X(g)``."""
    idx = X.index
    R = representables(mod.base, idx)
    T = differential(mod, X)
    tgt = T.obj(i, i)
    comps = []
    for q in idx.objects:
        gs = idx.hom(q, i)
        m = R.upper(i).objs[q]
        phi = mod.copower_out(len(gs), X.objs[q], X.objs[i], [X.arrs[g] for g in gs])
        comps.append(mod.to_power(phi, m, X.objs[q], X.objs[i]))
    return NatTrans(X, tgt, tuple(comps))


def reduction_check(mod: ClosedModule, X: Diagram) -> IsoWitness:
    """``X -> int_i X_i^{h^i}`` is an isomorphism."""
    T = differential(mod, X)
    DC = T.cat
    e = end(T)
    wedge = [reduction_wedge(mod, X, i) for i in X.index.objects]
    fwd = e.mediate(wedge, X)
    return iso_witness(DC, fwd, "end comparison")


def self_module(M: ClosedMonoidal) -> SelfModule:
    return SelfModule(M)
