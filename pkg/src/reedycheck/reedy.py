"""Reedy model structures on diagram categories.

A *model* here is anything with ``cat``, ``flags(f)`` and
``factorize(f, kind)``. :class:`ChainModel` is the projective model
structure on chain complexes; :class:`ReedyModel` builds the Reedy model
structure on ``C^I`` from a model on ``C`` and is itself a model, so it nests
for ``(M^J)^I``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable

from .category import Category, Cone, IdCache
from .chain import COFIB_TRIVFIB, TRIVCOF_FIB, ChainComplexes, classify, factorize
from .diagram import Diagram, DiagramCategory, NatTrans
from .fincat import FiniteCategory, ReedyStructure, latching_category, matching_category, plus_subcategory

FLAG_KEYS = ("cofibration", "fibration", "weak_equivalence", "trivial_cofibration", "trivial_fibration")


class ChainModel:
    """Projective model structure on bounded chain complexes over GF(p)."""

    def __init__(self, cat: ChainComplexes):
        self.cat = cat

    def __repr__(self):
        return f"ChainModel(p={self.cat.p})"

    def flags(self, f) -> dict[str, bool]:
        return classify(f)

    def factorize(self, f, kind: str):
        return factorize(f, kind)


@dataclass
class LatchingData:
    obj: int
    apex: Any
    canonical: Any
    shape: FiniteCategory
    labels: list
    cone: Cone = field(repr=False)


@dataclass
class MatchingData:
    obj: int
    apex: Any
    canonical: Any
    shape: FiniteCategory
    labels: list
    cone: Cone = field(repr=False)


@dataclass
class ReedyFlags:
    is_cofibration: bool
    is_fibration: bool
    is_weak_equivalence: bool
    failures: list = field(default_factory=list)

    @property
    def trivial_cofibration(self) -> bool:
        return self.is_cofibration and self.is_weak_equivalence

    @property
    def trivial_fibration(self) -> bool:
        return self.is_fibration and self.is_weak_equivalence

    def as_dict(self) -> dict[str, bool]:
        return {
            "cofibration": self.is_cofibration,
            "fibration": self.is_fibration,
            "weak_equivalence": self.is_weak_equivalence,
            "trivial_cofibration": self.trivial_cofibration,
            "trivial_fibration": self.trivial_fibration,
        }


def _partial_functor(cat: Category, r: ReedyStructure, objs: dict, plus_map: dict, minus_map: dict):
    """``Z(f) = Z(f+) . Z(f-)`` from the values on plus and minus arrows."""
    idx = r.base

    def Z(f: int):
        if idx.is_identity(f):
            return cat.identity(objs[idx.sources[f]])
        fm, fp = r.factor(f)
        if idx.is_identity(fm):
            return plus_map[fp]
        if idx.is_identity(fp):
            return minus_map[fm]
        return cat.compose(plus_map[fp], minus_map[fm])

    return Z


class ReedyModel:
    """The Reedy model structure on ``C^I`` for a model ``inner`` on ``C``."""

    def __init__(self, inner, r: ReedyStructure):
        self.inner = inner
        self.r = r
        self.C = inner.cat
        self.cat = DiagramCategory(self.C, r.base)
        self._latch = IdCache(512)
        self._match = IdCache(512)
        self._shapes: dict = {}

    def __repr__(self):
        return f"ReedyModel({self.inner!r}, {self.r.name or 'custom'})"

    def _shape(self, i: int, lat: bool):
        key = (i, lat)
        if key not in self._shapes:
            self._shapes[key] = latching_category(self.r, i) if lat else matching_category(self.r, i)
        return self._shapes[key]

    # -- latching and matching objects ----------------------------------------------------
    def _latching_of(self, i: int, obj_of: Callable, arr_of: Callable, target) -> LatchingData:
        shape, labels = self._shape(i, True)
        idx = self.r.base
        objs_u = [u for u in idx.arrows if u in self.r.plus and idx.targets[u] == i]
        objs = [obj_of(idx.sources[u]) for u in objs_u]
        arrs = [arr_of(v) for v in labels]
        cone = self.C.colimit(shape, objs, arrs)
        canonical = cone.mediate([arr_of(u) for u in objs_u], target) if target is not None else None
        return LatchingData(i, cone.apex, canonical, shape, objs_u, cone)

    def _matching_of(self, i: int, obj_of: Callable, arr_of: Callable, source) -> MatchingData:
        shape, labels = self._shape(i, False)
        idx = self.r.base
        objs_u = [u for u in idx.arrows if u in self.r.minus and idx.sources[u] == i]
        objs = [obj_of(idx.targets[u]) for u in objs_u]
        arrs = [arr_of(v) for v in labels]
        cone = self.C.limit(shape, objs, arrs)
        canonical = cone.mediate([arr_of(u) for u in objs_u], source) if source is not None else None
        return MatchingData(i, cone.apex, canonical, shape, objs_u, cone)

    def latching(self, X: Diagram, i: int) -> LatchingData:
        return self._latch.get((X, i), lambda: self._latching_of(i, lambda j: X.objs[j], lambda v: X.arrs[v], X.objs[i]))

    def matching(self, X: Diagram, i: int) -> MatchingData:
        return self._match.get((X, i), lambda: self._matching_of(i, lambda j: X.objs[j], lambda v: X.arrs[v], X.objs[i]))

    def latching_mor(self, g: NatTrans, i: int):
        """``L_i X -> L_i Y``."""
        LX, LY = self.latching(g.source, i), self.latching(g.target, i)
        idx = self.r.base
        legs = [self.C.compose(leg, g.comps[idx.sources[u]]) for leg, u in zip(LY.cone.legs, LY.labels)]
        return LX.cone.mediate(legs, LY.apex)

    def matching_mor(self, g: NatTrans, i: int):
        """``M_i X -> M_i Y``."""
        MX, MY = self.matching(g.source, i), self.matching(g.target, i)
        idx = self.r.base
        legs = [self.C.compose(g.comps[idx.targets[u]], leg) for leg, u in zip(MX.cone.legs, MX.labels)]
        return MY.cone.mediate(legs, MX.apex)

    def relative_latching(self, g: NatTrans, i: int):
        """``X_i + _{L_i X} L_i Y -> Y_i``."""
        C = self.C
        LX, LY = self.latching(g.source, i), self.latching(g.target, i)
        po = C.pushout(LX.canonical, self.latching_mor(g, i))
        return po.mediate([C.compose(g.comps[i], LX.canonical), g.comps[i], LY.canonical], g.target.objs[i])

    def relative_matching(self, g: NatTrans, i: int):
        """``X_i -> Y_i x_{M_i Y} M_i X``."""
        C = self.C
        MX, MY = self.matching(g.source, i), self.matching(g.target, i)
        pb = C.pullback(MY.canonical, self.matching_mor(g, i))
        return pb.mediate([C.compose(MY.canonical, g.comps[i]), g.comps[i], MX.canonical], g.source.objs[i])

    # -- classification ------------------------------------------------------------------
    def classify(self, g: NatTrans, need: tuple = ("cof", "fib", "we")) -> ReedyFlags:
        idx = self.r.base
        inner = self.inner
        cof = fib = we = True
        failures = []
        for i in self.r.order():
            if "cof" in need:
                rl = self.relative_latching(g, i)
                if not inner.flags(rl)["cofibration"]:
                    cof = False
                    failures.append({"object": i, "map": "relative_latching", "data": self.C.describe(rl)})
            if "fib" in need:
                rm = self.relative_matching(g, i)
                if not inner.flags(rm)["fibration"]:
                    fib = False
                    failures.append({"object": i, "map": "relative_matching", "data": self.C.describe(rm)})
            if "we" in need and not inner.flags(g.comps[i])["weak_equivalence"]:
                we = False
                failures.append({"object": i, "map": "component", "data": self.C.describe(g.comps[i])})
        return ReedyFlags(cof and "cof" in need, fib and "fib" in need, we and "we" in need, failures)

    def flags(self, g: NatTrans) -> dict[str, bool]:
        return self.classify(g).as_dict()

    # -- inductive constructions --------------------------------------------------------------
    def induct(self, step: Callable) -> Diagram:
        """Build a diagram object by object in degree order.

        ``step(i, LZ, MZ, lz_to_mz)`` receives the latching and matching data
        of the part built so far and the canonical map between them; it
        returns ``(Z_i, L_i Z -> Z_i, Z_i -> M_i Z)`` whose composite must be
        that canonical map.
        """
        C, r = self.C, self.r
        idx = r.base
        Zo: dict = {}
        plus_map: dict = {}
        minus_map: dict = {}
        Z = _partial_functor(C, r, Zo, plus_map, minus_map)
        for i in r.order():
            LZ = self._latching_of(i, lambda j: Zo[j], Z, None)
            MZ = self._matching_of(i, lambda j: Zo[j], Z, None)
            lz_to_mz = LZ.cone.mediate(
                [
                    MZ.cone.mediate([Z(int(idx.comp[w, u])) for w in MZ.labels], Zo[idx.sources[u]])
                    for u in LZ.labels
                ],
                MZ.apex,
            )
            Zi, latch_z, match_z = step(i, LZ, MZ, lz_to_mz)
            Zo[i] = Zi
            for u, leg in zip(LZ.labels, LZ.cone.legs):
                plus_map[u] = C.compose(latch_z, leg)
            for u, leg in zip(MZ.labels, MZ.cone.legs):
                minus_map[u] = C.compose(leg, match_z)
        return Diagram(idx, tuple(Zo[i] for i in idx.objects), tuple(Z(f) for f in idx.arrows))

    def factorize(self, g: NatTrans, kind: str) -> tuple[NatTrans, NatTrans]:
        """Factor ``g`` by factoring each corner map ``X_i + L_i Z -> Y_i x M_i Z`` in ``C``."""
        if kind not in (COFIB_TRIVFIB, TRIVCOF_FIB):
            raise ValueError(f"unknown factorization kind {kind!r}")
        C = self.C
        idx = self.r.base
        X, Y = g.source, g.target
        a_c: dict = {}
        b_c: dict = {}

        def step(i, LZ, MZ, lz_to_mz):
            LX, MY = self.latching(X, i), self.matching(Y, i)
            LY, MX = self.latching(Y, i), self.matching(X, i)
            La = LX.cone.mediate(
                [C.compose(leg, a_c[idx.sources[u]]) for leg, u in zip(LZ.cone.legs, LZ.labels)], LZ.apex
            )
            Mb = MY.cone.mediate(
                [C.compose(b_c[idx.targets[u]], leg) for leg, u in zip(MZ.cone.legs, MZ.labels)], MZ.apex
            )
            po = C.pushout(LX.canonical, La)  # legs: L_i X, X_i, L_i Z
            pb = C.pullback(MY.canonical, Mb)  # legs: M_i Y, Y_i, M_i Z
            lz_to_y = C.compose(LY.canonical, LZ.cone.mediate(
                [C.compose(LY.cone.legs[k], b_c[idx.sources[u]]) for k, u in enumerate(LZ.labels)], LY.apex
            ))
            x_to_mz = C.compose(MZ.cone.mediate(
                [C.compose(a_c[idx.targets[u]], leg) for leg, u in zip(MX.cone.legs, MZ.labels)], MX.apex
            ), MX.canonical)
            to_y = po.mediate([C.compose(g.comps[i], LX.canonical), g.comps[i], lz_to_y], Y.objs[i])
            to_mz = po.mediate([C.compose(x_to_mz, LX.canonical), x_to_mz, lz_to_mz], MZ.apex)
            corner = pb.mediate([C.compose(MY.canonical, to_y), to_y, to_mz], po.apex)
            first, second = self.inner.factorize(corner, kind)
            a_c[i] = C.compose(first, po.legs[1])
            b_c[i] = C.compose(pb.legs[1], second)
            return C.target(first), C.compose(first, po.legs[2]), C.compose(pb.legs[2], second)

        Zd = self.induct(step)
        a = NatTrans(X, Zd, tuple(a_c[i] for i in idx.objects))
        b = NatTrans(Zd, Y, tuple(b_c[i] for i in idx.objects))
        return a, b


def classify_reedy(model: ReedyModel, g: NatTrans) -> ReedyFlags:
    return model.classify(g)


def reedy_factorize(model: ReedyModel, g: NatTrans, kind: str) -> tuple[NatTrans, NatTrans]:
    return model.factorize(g, kind)


def restrict_plus(model: ReedyModel, x):
    """Restrict a diagram or transformation along ``I+ -> I``; returns it with the model over ``I+``."""
    sub, keep = plus_subcategory(model.r)
    sub_model = ReedyModel(model.inner, sub)

    def restrict(d: Diagram) -> Diagram:
        return Diagram(sub.base, d.objs, tuple(d.arrs[f] for f in keep))

    if isinstance(x, Diagram):
        return restrict(x), sub_model
    return NatTrans(restrict(x.source), restrict(x.target), x.comps), sub_model
