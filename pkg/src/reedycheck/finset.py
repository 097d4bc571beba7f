"""Finite sets as a cartesian closed base; the exhaustive-enumeration tier."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .category import DEFAULT_CAP, Cone, NotAConeError, ResourceLimitError
from .monoidal import ClosedMonoidal


@dataclass(frozen=True)
class FinSetObject:
    size: int

    def __post_init__(self):
        if self.size < 0:
            raise ValueError("size must be non-negative")


@dataclass(frozen=True)
class FinSetMap:
    source: FinSetObject
    target: FinSetObject
    table: tuple[int, ...]

    def __post_init__(self):
        if len(self.table) != self.source.size:
            raise ValueError(f"table length {len(self.table)} != source size {self.source.size}")
        if any(not 0 <= t < self.target.size for t in self.table):
            raise ValueError("table entry out of range")

    def __call__(self, x: int) -> int:
        return self.table[x]


def fmap(src: int, tgt: int, table) -> FinSetMap:
    return FinSetMap(FinSetObject(src), FinSetObject(tgt), tuple(int(t) for t in table))


def _encode(table, base: int) -> int:
    v = 0
    for t in table:
        v = v * base + t
    return v


def _decode(v: int, length: int, base: int) -> list[int]:
    out = [0] * length
    for k in range(length - 1, -1, -1):
        out[k] = v % base
        v //= base
    return out


class FinSets(ClosedMonoidal):
    """Elements are indices; quotients pick minimal representatives."""

    linear = False

    def __init__(self, cap: int = DEFAULT_CAP):
        self.cap = cap

    def __repr__(self):
        return "FinSets()"

    def obj(self, n: int) -> FinSetObject:
        return FinSetObject(n)

    # -- category ---------------------------------------------------------------
    def identity(self, a):
        return FinSetMap(a, a, tuple(range(a.size)))

    def compose(self, g, f):
        if f.target != g.source:
            raise ValueError(f"cannot compose {f.target} -> with {g.source} ->")
        gt = g.table
        return FinSetMap(f.source, g.target, tuple(gt[x] for x in f.table))

    def equal(self, f, g):
        return f == g

    def source(self, f):
        return f.source

    def target(self, f):
        return f.target

    def same_object(self, a, b):
        return a == b

    def describe(self, f):
        return {"source": f.source.size, "target": f.target.size, "table": list(f.table)}

    def hom_count(self, a, b):
        return b.size ** a.size

    def hom(self, a, b):
        return hom_enumerate(a, b, self.cap)

    def inverse(self, f):
        if f.source.size != f.target.size or len(set(f.table)) != f.source.size:
            return None
        inv = [0] * f.source.size
        for x, y in enumerate(f.table):
            inv[y] = x
        return FinSetMap(f.target, f.source, tuple(inv))

    def limit(self, shape, objs, arrs):
        n = shape.n_objects
        sizes = [o.size for o in objs]
        checks: list[list[int]] = [[] for _ in range(n)]
        for u in shape.non_identity_arrows():
            checks[max(shape.sources[u], shape.targets[u])].append(u)
        tables = [a.table if a is not None else None for a in arrs]
        forced: list[int | None] = [None] * n
        for s in range(n):
            for u in checks[s]:
                if shape.targets[u] == s and shape.sources[u] < s:
                    forced[s] = u
                    break
        families: list[tuple[int, ...]] = []
        current = [0] * n
        budget = self.cap

        def rec(s: int) -> None:
            nonlocal budget
            if s == n:
                families.append(tuple(current))
                if len(families) > budget:
                    raise ResourceLimitError(f"limit exceeds cap {budget}")
                return
            u0 = forced[s]
            candidates = [tables[u0][current[shape.sources[u0]]]] if u0 is not None else range(sizes[s])
            for x in candidates:
                current[s] = x
                if all(tables[u][current[shape.sources[u]]] == current[shape.targets[u]] for u in checks[s]):
                    rec(s + 1)

        rec(0)
        apex = FinSetObject(len(families))
        legs = [FinSetMap(apex, objs[s], tuple(fam[s] for fam in families)) for s in range(n)]
        index = {fam: k for k, fam in enumerate(families)}

        def mediate(cone_legs, other):
            src = cone_legs[0].source if cone_legs else other
            table = []
            for x in range(src.size):
                fam = tuple(leg.table[x] for leg in cone_legs)
                if fam not in index:
                    raise NotAConeError(f"element {x} maps to non-matching family {fam}")
                table.append(index[fam])
            return FinSetMap(src, apex, tuple(table))

        return Cone(apex, legs, mediate)

    def colimit(self, shape, objs, arrs):
        n = shape.n_objects
        offsets = [0]
        for o in objs:
            offsets.append(offsets[-1] + o.size)
        total = offsets[-1]
        parent = list(range(total))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u in shape.non_identity_arrows():
            s, t = shape.sources[u], shape.targets[u]
            for x, y in enumerate(arrs[u].table):
                a, b = find(offsets[s] + x), find(offsets[t] + y)
                if a != b:
                    parent[max(a, b)] = min(a, b)
        cls: dict[int, int] = {}
        labels = []
        for x in range(total):
            r = find(x)
            if r not in cls:
                cls[r] = len(cls)
            labels.append(cls[r])
        apex = FinSetObject(len(cls))
        legs = [FinSetMap(objs[s], apex, tuple(labels[offsets[s]:offsets[s + 1]])) for s in range(n)]

        def mediate(cone_legs, other):
            tgt = cone_legs[0].target if cone_legs else other
            table: list[int | None] = [None] * apex.size
            for s, leg in enumerate(cone_legs):
                for x, y in enumerate(leg.table):
                    c = labels[offsets[s] + x]
                    if table[c] is None:
                        table[c] = y
                    elif table[c] != y:
                        raise NotAConeError(f"cocone legs disagree on class {c}")
            return FinSetMap(apex, tgt, tuple(table))

        return Cone(apex, legs, mediate)

    # -- cartesian closed structure ------------------------------------------------
    def unit(self):
        return FinSetObject(1)

    def tensor(self, a, b):
        return FinSetObject(a.size * b.size)

    def tensor_mor(self, f, g):
        nb, nb2 = g.source.size, g.target.size
        table = tuple(f.table[x] * nb2 + g.table[y] for x in range(f.source.size) for y in range(nb))
        return FinSetMap(self.tensor(f.source, g.source), self.tensor(f.target, g.target), table)

    def ihom(self, a, b):
        return exponential(a, b, self.cap)

    def ihom_mor(self, f, g):
        a2, a = f.source, f.target
        b, b2 = g.source, g.target
        src, tgt = self.ihom(a, b), self.ihom(a2, b2)
        table = []
        for v in range(src.size):
            t = _decode(v, a.size, b.size)
            table.append(_encode([g.table[t[f.table[x]]] for x in range(a2.size)], b2.size))
        return FinSetMap(src, tgt, tuple(table))

    def curry(self, phi, a, b, c):
        table = tuple(_encode(phi.table[x * b.size:(x + 1) * b.size], c.size) for x in range(a.size))
        return FinSetMap(a, self.ihom(b, c), table)

    def uncurry(self, psi, a, b, c):
        table = []
        for x in range(a.size):
            table.extend(_decode(psi.table[x], b.size, c.size))
        return FinSetMap(self.tensor(a, b), c, tuple(table))

    def assoc(self, a, b, c):
        n = a.size * b.size * c.size
        return FinSetMap(FinSetObject(n), FinSetObject(n), tuple(range(n)))

    def assoc_inv(self, a, b, c):
        return self.assoc(a, b, c)

    def lunit(self, a):
        return self.identity(a)

    lunit_inv = runit = runit_inv = lunit

    def sym(self, a, b):
        table = tuple(y * a.size + x for x in range(a.size) for y in range(b.size))
        return FinSetMap(self.tensor(a, b), self.tensor(b, a), table)


# -- module-level operations ----------------------------------------------------


def hom_enumerate(a: FinSetObject, b: FinSetObject, cap: int = DEFAULT_CAP) -> list[FinSetMap]:
    """All maps ``a -> b`` in lexicographic order of their tables."""
    count = b.size ** a.size
    if count > cap:
        raise ResourceLimitError(f"|hom({a.size}, {b.size})| = {count} exceeds cap {cap}")
    return [FinSetMap(a, b, t) for t in itertools.product(range(b.size), repeat=a.size)]


def exponential(a: FinSetObject, b: FinSetObject, cap: int = DEFAULT_CAP) -> FinSetObject:
    """``b^a``; element ``v`` is the map whose lexicographic rank is ``v``."""
    count = b.size ** a.size
    if count > cap:
        raise ResourceLimitError(f"exponential {b.size}^{a.size} exceeds cap {cap}")
    return FinSetObject(count)


def evaluation(a: FinSetObject, b: FinSetObject) -> FinSetMap:
    """``b^a x a -> b``."""
    e = exponential(a, b)
    table = []
    for v in range(e.size):
        t = _decode(v, a.size, b.size)
        table.extend(t)
    return FinSetMap(FinSetObject(e.size * a.size), b, tuple(table))


def finite_limit(shape, objs, arrs, cap: int = DEFAULT_CAP) -> Cone:
    return FinSets(cap).limit(shape, objs, arrs)


def finite_colimit(shape, objs, arrs, cap: int = DEFAULT_CAP) -> Cone:
    return FinSets(cap).colimit(shape, objs, arrs)


def U_of(s: FinSetObject, base: ClosedMonoidal):
    """Copower of the unit of ``base`` over ``s``."""
    return base.unit_copower(s.size).apex


def V_of(m, base: ClosedMonoidal) -> FinSetObject:
    """Underlying point set ``base(k, m)``."""
    return FinSetObject(base.hom_count(base.unit(), m))
