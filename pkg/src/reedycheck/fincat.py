"""Finite categories given by composition tables, and Reedy structures on them."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np


class StructuralError(ValueError):
    """Raw category data is malformed (bad indices, wrong lengths)."""


@dataclass
class ValidationReport:
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, msg: str) -> None:
        self.violations.append(msg)


@dataclass(frozen=True, eq=False)
class FiniteCategory:
    """Objects ``0..n-1``; arrows globally indexed with explicit endpoints.

    ``comp[g, f]`` is the index of ``g . f`` when ``target(f) == source(g)``
    and ``-1`` otherwise.
    """

    n_objects: int
    sources: tuple[int, ...]
    targets: tuple[int, ...]
    identities: tuple[int, ...]
    comp: np.ndarray
    names: tuple[str, ...] = ()
    object_names: tuple[str, ...] = ()

    @property
    def n_arrows(self) -> int:
        return len(self.sources)

    @property
    def objects(self) -> range:
        return range(self.n_objects)

    @property
    def arrows(self) -> range:
        return range(self.n_arrows)

    def compose(self, g: int, f: int) -> int:
        c = int(self.comp[g, f])
        if c < 0:
            raise ValueError(f"arrows {g} and {f} are not composable")
        return c

    def is_identity(self, f: int) -> bool:
        return self.identities[self.sources[f]] == f

    def hom(self, i: int, j: int) -> list[int]:
        """Arrows ``i -> j`` in arrow-index order."""
        return self._homs()[i][j]

    def _homs(self):
        cached = self.__dict__.get("_hom_cache")
        if cached is None:
            cached = [[[] for _ in self.objects] for _ in self.objects]
            for f in self.arrows:
                cached[self.sources[f]][self.targets[f]].append(f)
            object.__setattr__(self, "_hom_cache", cached)
        return cached

    def non_identity_arrows(self) -> list[int]:
        return [f for f in self.arrows if not self.is_identity(f)]

    def arrow_name(self, f: int) -> str:
        return self.names[f] if self.names else f"f{f}"

    def same_as(self, other: FiniteCategory) -> bool:
        return (
            self.n_objects == other.n_objects
            and self.sources == other.sources
            and self.targets == other.targets
            and self.identities == other.identities
            and np.array_equal(self.comp, other.comp)
        )


def make_category(n_objects, arrows, identities, composition, names=()) -> FiniteCategory:
    """Build a category from raw data, raising :class:`StructuralError` on bad indices.

    ``composition`` is either a square table or the flat row-major table used
    in scenario files (entry ``g * n_arrows + f`` is ``g . f`` or ``-1``).
    """
    n = int(n_objects)
    if n < 0:
        raise StructuralError("negative object count")
    arrows = [tuple(a) for a in arrows]
    m = len(arrows)
    for k, a in enumerate(arrows):
        if len(a) != 2 or not all(0 <= int(x) < n for x in a):
            raise StructuralError(f"arrow {k} has endpoints {a} outside 0..{n - 1}")
    identities = tuple(int(x) for x in identities)
    if len(identities) != n:
        raise StructuralError(f"expected {n} identities, got {len(identities)}")
    for i, e in enumerate(identities):
        if not 0 <= e < m:
            raise StructuralError(f"identity of object {i} is arrow {e}, out of range")
    table = np.array(composition, dtype=np.int64)
    if table.ndim == 1:
        if table.size != m * m:
            raise StructuralError(f"composition table has {table.size} entries, expected {m * m}")
        table = table.reshape(m, m) if m else np.zeros((0, 0), dtype=np.int64)
    if table.shape != (m, m):
        raise StructuralError(f"composition table shape {table.shape}, expected {(m, m)}")
    if np.any((table < -1) | (table >= m)):
        raise StructuralError("composition table entry out of range")
    return FiniteCategory(
        n_objects=n,
        sources=tuple(int(a[0]) for a in arrows),
        targets=tuple(int(a[1]) for a in arrows),
        identities=identities,
        comp=table,
        names=tuple(names),
    )


def validate_category(c: FiniteCategory) -> ValidationReport:
    """List every violated axiom instance; an empty list means a valid category."""
    rep = ValidationReport()
    src, tgt = c.sources, c.targets
    for i, e in enumerate(c.identities):
        if src[e] != i or tgt[e] != i:
            rep.add(f"identity {e} of object {i} is not an endomorphism of {i}")
    for g in c.arrows:
        for f in c.arrows:
            h = int(c.comp[g, f])
            if tgt[f] == src[g]:
                if h < 0:
                    rep.add(f"composite {c.arrow_name(g)}.{c.arrow_name(f)} missing (totality)")
                elif src[h] != src[f] or tgt[h] != tgt[g]:
                    rep.add(f"composite {c.arrow_name(g)}.{c.arrow_name(f)} = {c.arrow_name(h)} has wrong endpoints")
            elif h >= 0:
                rep.add(f"entry for non-composable pair ({c.arrow_name(g)}, {c.arrow_name(f)})")
    if rep.violations:
        return rep
    for f in c.arrows:
        if int(c.comp[c.identities[tgt[f]], f]) != f:
            rep.add(f"identity law id.{c.arrow_name(f)} != {c.arrow_name(f)}")
        if int(c.comp[f, c.identities[src[f]]]) != f:
            rep.add(f"identity law {c.arrow_name(f)}.id != {c.arrow_name(f)}")
    for h, g, f in itertools.product(c.arrows, repeat=3):
        if tgt[f] == src[g] and tgt[g] == src[h]:
            left = int(c.comp[int(c.comp[h, g]), f])
            right = int(c.comp[h, int(c.comp[g, f])])
            if left != right:
                rep.add(f"associativity fails on ({c.arrow_name(h)}, {c.arrow_name(g)}, {c.arrow_name(f)})")
    return rep


def opposite(c: FiniteCategory) -> FiniteCategory:
    """Same object and arrow indices with every arrow reversed."""
    return FiniteCategory(
        n_objects=c.n_objects,
        sources=c.targets,
        targets=c.sources,
        identities=c.identities,
        comp=c.comp.T.copy(),
        names=c.names,
        object_names=c.object_names,
    )


def product_category(c: FiniteCategory, d: FiniteCategory) -> FiniteCategory:
    """Object ``(i, j)`` has index ``i * |ob D| + j``; arrow ``(u, v)`` has index ``u * |ar D| + v``."""
    nd, md = d.n_objects, d.n_arrows
    m = c.n_arrows * md
    sources, targets = [], []
    for u in c.arrows:
        for v in d.arrows:
            sources.append(c.sources[u] * nd + d.sources[v])
            targets.append(c.targets[u] * nd + d.targets[v])
    identities = [c.identities[i] * md + d.identities[j] for i in c.objects for j in d.objects]
    comp = np.full((m, m), -1, dtype=np.int64)
    cc, dc = c.comp, d.comp
    for g1 in c.arrows:
        for f1 in c.arrows:
            a = int(cc[g1, f1])
            if a < 0:
                continue
            for g2 in d.arrows:
                for f2 in d.arrows:
                    b = int(dc[g2, f2])
                    if b >= 0:
                        comp[g1 * md + g2, f1 * md + f2] = a * md + b
    names = ()
    if c.names and d.names:
        names = tuple(f"({c.names[u]},{d.names[v]})" for u in c.arrows for v in d.arrows)
    return FiniteCategory(
        c.n_objects * nd, tuple(sources), tuple(targets), tuple(identities), comp, names
    )


def discrete(n: int) -> FiniteCategory:
    return FiniteCategory(
        n, tuple(range(n)), tuple(range(n)), tuple(range(n)),
        np.where(np.eye(n, dtype=bool), np.arange(n)[:, None], -1).astype(np.int64),
    )


def from_generators(n_objects: int, arrows: list[tuple[int, int]], compose_rule, names=()) -> FiniteCategory:
    """Identities first, then ``arrows``; ``compose_rule(g, f)`` gives non-identity composites."""
    n = n_objects
    all_arrows = [(i, i) for i in range(n)] + list(arrows)
    m = len(all_arrows)
    comp = np.full((m, m), -1, dtype=np.int64)
    for g in range(m):
        for f in range(m):
            if all_arrows[f][1] != all_arrows[g][0]:
                continue
            if g < n:
                comp[g, f] = f
            elif f < n:
                comp[g, f] = g
            else:
                comp[g, f] = compose_rule(g, f)
    full_names = tuple(f"id{i}" for i in range(n)) + tuple(names)
    return FiniteCategory(
        n, tuple(a[0] for a in all_arrows), tuple(a[1] for a in all_arrows),
        tuple(range(n)), comp, full_names if names else (),
    )


def _no_composites(g, f):
    return -1


# -- Reedy structures ---------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ReedyStructure:
    base: FiniteCategory
    degree: tuple[int, ...]
    plus: frozenset[int]
    minus: frozenset[int]
    name: str = ""

    def in_plus(self, f: int) -> bool:
        return f in self.plus or self.base.is_identity(f)

    def in_minus(self, f: int) -> bool:
        return f in self.minus or self.base.is_identity(f)

    def factorizations(self, f: int) -> list[tuple[int, int]]:
        """All pairs ``(f_minus, f_plus)`` with ``f == f_plus . f_minus``."""
        c = self.base
        out = []
        for fm in c.arrows:
            if c.sources[fm] != c.sources[f] or not self.in_minus(fm):
                continue
            for fp in c.hom(c.targets[fm], c.targets[f]):
                if self.in_plus(fp) and int(c.comp[fp, fm]) == f:
                    out.append((fm, fp))
        return out

    def factor(self, f: int) -> tuple[int, int]:
        cache = self.__dict__.get("_factor_cache")
        if cache is None:
            cache = {}
            object.__setattr__(self, "_factor_cache", cache)
        if f not in cache:
            fs = self.factorizations(f)
            if len(fs) != 1:
                raise ValueError(f"arrow {f} has {len(fs)} Reedy factorizations")
            cache[f] = fs[0]
        return cache[f]

    def order(self) -> list[int]:
        """Objects sorted by degree, ties broken by index."""
        return sorted(self.base.objects, key=lambda i: (self.degree[i], i))


def validate_reedy(r: ReedyStructure) -> ValidationReport:
    c = r.base
    rep = ValidationReport()
    if len(r.degree) != c.n_objects:
        raise StructuralError(f"degree function has {len(r.degree)} values for {c.n_objects} objects")
    if any(d < 0 for d in r.degree):
        raise StructuralError("degrees must be non-negative")
    for f in list(r.plus) + list(r.minus):
        if not 0 <= f < c.n_arrows:
            raise StructuralError(f"arrow index {f} out of range")
    for f in sorted(r.plus):
        if c.is_identity(f):
            rep.add(f"plus arrow {c.arrow_name(f)} is an identity")
        elif r.degree[c.targets[f]] <= r.degree[c.sources[f]]:
            rep.add(f"plus arrow {c.arrow_name(f)} does not raise degree")
    for f in sorted(r.minus):
        if c.is_identity(f):
            rep.add(f"minus arrow {c.arrow_name(f)} is an identity")
        elif r.degree[c.targets[f]] >= r.degree[c.sources[f]]:
            rep.add(f"minus arrow {c.arrow_name(f)} does not lower degree")
    for label, member in (("plus", r.in_plus), ("minus", r.in_minus)):
        for g in c.arrows:
            for f in c.arrows:
                h = int(c.comp[g, f])
                if h >= 0 and member(g) and member(f) and not member(h):
                    rep.add(f"{label} arrows not closed: {c.arrow_name(g)}.{c.arrow_name(f)}")
    for f in c.arrows:
        n = len(r.factorizations(f))
        if n != 1:
            rep.add(f"arrow {c.arrow_name(f)} has {n} minus-then-plus factorizations")
    return rep


def is_direct(r: ReedyStructure) -> bool:
    return not r.minus


def is_inverse(r: ReedyStructure) -> bool:
    return not r.plus


def opposite_reedy(r: ReedyStructure) -> ReedyStructure:
    return ReedyStructure(opposite(r.base), r.degree, r.minus, r.plus, r.name + "_op" if r.name else "")


def plus_subcategory(r: ReedyStructure) -> tuple[ReedyStructure, list[int]]:
    """The direct subcategory of identities and plus arrows, with its arrow inclusion."""
    c = r.base
    keep = [f for f in c.arrows if r.in_plus(f)]
    new_index = {f: k for k, f in enumerate(keep)}
    m = len(keep)
    comp = np.full((m, m), -1, dtype=np.int64)
    for g in keep:
        for f in keep:
            h = int(c.comp[g, f])
            if h >= 0:
                comp[new_index[g], new_index[f]] = new_index[h]
    sub = FiniteCategory(
        c.n_objects,
        tuple(c.sources[f] for f in keep),
        tuple(c.targets[f] for f in keep),
        tuple(new_index[e] for e in c.identities),
        comp,
        tuple(c.names[f] for f in keep) if c.names else (),
    )
    plus = frozenset(new_index[f] for f in r.plus)
    return ReedyStructure(sub, r.degree, plus, frozenset(), r.name + "+" if r.name else ""), keep


def latching_category(r: ReedyStructure, i: int) -> tuple[FiniteCategory, list[int]]:
    """The boundary comma category of non-identity plus arrows into ``i``.

    Objects are those arrows ``u: j -> i``; a morphism ``u -> u'`` is a plus
    arrow (possibly an identity) ``v`` with ``u' . v == u``. Returns the
    category and, for each of its arrows, the arrow ``v`` of the base.
    """
    c = r.base
    objs = [u for u in c.arrows if u in r.plus and c.targets[u] == i]
    return _comma(c, objs, lambda u, u2, v: int(c.comp[u2, v]) == u, r.in_plus, source_side=True)


def matching_category(r: ReedyStructure, i: int) -> tuple[FiniteCategory, list[int]]:
    """Non-identity minus arrows ``u: i -> j``; morphisms ``u -> u'`` are minus ``v`` with ``v . u == u'``."""
    c = r.base
    objs = [u for u in c.arrows if u in r.minus and c.sources[u] == i]
    return _comma(c, objs, lambda u, u2, v: int(c.comp[v, u]) == u2, r.in_minus, source_side=False)


def _comma(c: FiniteCategory, objs: list[int], relates, member, source_side: bool):
    end = (lambda u: c.sources[u]) if source_side else (lambda u: c.targets[u])
    arrows: list[tuple[int, int]] = []
    labels: list[int] = []
    for a, u in enumerate(objs):
        for b, u2 in enumerate(objs):
            for v in c.hom(end(u), end(u2)):
                if member(v) and relates(u, u2, v):
                    arrows.append((a, b))
                    labels.append(v)
    n = len(objs)
    m = len(arrows)
    identities = []
    for a in range(n):
        identities.append(next(k for k, (s, t) in enumerate(arrows) if s == a and t == a and labels[k] == c.identities[end(objs[a])]))
    lookup = {(arrows[k][0], arrows[k][1], labels[k]): k for k in range(m)}
    comp = np.full((m, m), -1, dtype=np.int64)
    for g in range(m):
        for f in range(m):
            if arrows[f][1] == arrows[g][0]:
                comp[g, f] = lookup[(arrows[f][0], arrows[g][1], int(c.comp[labels[g], labels[f]]))]
    cat = FiniteCategory(n, tuple(a for a, _ in arrows), tuple(b for _, b in arrows), tuple(identities), comp)
    return cat, labels


# -- builtin fixtures ---------------------------------------------------------


def _reedy(name, cat, degree, plus, minus) -> ReedyStructure:
    return ReedyStructure(cat, tuple(degree), frozenset(plus), frozenset(minus), name)


def _build_builtins() -> dict[str, ReedyStructure]:
    out: dict[str, ReedyStructure] = {}
    out["terminal"] = _reedy("terminal", from_generators(1, [], _no_composites), [0], [], [])
    out["empty"] = _reedy("empty", from_generators(0, [], _no_composites), [], [], [])
    out["discrete"] = _reedy("discrete", from_generators(2, [], _no_composites), [0, 0], [], [])
    out["arrow"] = _reedy("arrow", from_generators(2, [(0, 1)], _no_composites, ["a"]), [0, 1], [2], [])
    # 0 -a-> 1 -b-> 2 with ba = arrow 5
    pair = from_generators(3, [(0, 1), (1, 2), (0, 2)], lambda g, f: 5 if (g, f) == (4, 3) else -1, ["a", "b", "ba"])
    out["composable_pair"] = _reedy("composable_pair", pair, [0, 1, 2], [3, 4, 5], [])
    out["parallel_pair"] = _reedy(
        "parallel_pair", from_generators(2, [(0, 1), (0, 1)], _no_composites, ["a", "b"]), [0, 1], [2, 3], []
    )
    # b <-l- a -r-> c with a = object 0
    span = from_generators(3, [(0, 1), (0, 2)], _no_composites, ["l", "r"])
    out["span"] = _reedy("span", span, [1, 0, 0], [], [3, 4])
    # b -l-> a <-r- c with a = object 0
    cospan = from_generators(3, [(1, 0), (2, 0)], _no_composites, ["l", "r"])
    out["cospan"] = _reedy("cospan", cospan, [1, 0, 0], [3, 4], [])
    # commuting square 0 -> 1, 0 -> 2, 1 -> 3, 2 -> 3, diagonal 0 -> 3
    def square_rule(g, f):
        return 8 if (g, f) in ((6, 4), (7, 5)) else -1
    square = from_generators(4, [(0, 1), (0, 2), (1, 3), (2, 3), (0, 3)], square_rule, ["x", "y", "u", "v", "d"])
    out["square"] = _reedy("square", square, [0, 1, 1, 2], [4, 5, 6, 7, 8], [])
    # x -s-> y -t-> z with degrees 1, 0, 1: s lowers, t raises, ts mixed
    mixed = from_generators(3, [(0, 1), (1, 2), (0, 2)], lambda g, f: 5 if (g, f) == (4, 3) else -1, ["s", "t", "ts"])
    out["mixed"] = _reedy("mixed", mixed, [1, 0, 1], [4], [3])
    return out


BUILTINS = _build_builtins()

SPEC_BUILTINS = ("terminal", "arrow", "composable_pair", "parallel_pair", "span", "cospan", "square")


def builtin(name: str) -> ReedyStructure:
    try:
        return BUILTINS[name]
    except KeyError:
        raise KeyError(f"unknown builtin category {name!r}; known: {sorted(BUILTINS)}") from None


def list_builtins() -> list[dict]:
    out = []
    for name, r in BUILTINS.items():
        kind = "direct" if is_direct(r) else ("inverse" if is_inverse(r) else "mixed")
        if not r.plus and not r.minus:
            kind = "discrete"
        out.append({
            "name": name,
            "objects": r.base.n_objects,
            "arrows": r.base.n_arrows,
            "degrees": list(r.degree),
            "plus": sorted(r.plus),
            "minus": sorted(r.minus),
            "direct": is_direct(r),
            "inverse": is_inverse(r),
            "kind": kind,
        })
    return out
