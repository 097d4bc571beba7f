"""Independent cross-checks: universal properties, Kunneth, homs as ends."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import linalg as la
from .category import Category
from .chain import ChainComplexes, betti, is_acyclic, is_quasi_iso, mapping_cone
from .diagram import Diagram, end, end_equalizer, hom_bifunctor
from .fincat import FiniteCategory


@dataclass
class CheckList:
    """Named boolean checks."""

    checks: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(ok for _, ok in self.checks)

    def check(self, name: str, ok: bool) -> bool:
        self.checks.append((name, bool(ok)))
        return bool(ok)

    def failures(self) -> list[str]:
        return [name for name, ok in self.checks if not ok]


def universal_check(cat: Category, shape: FiniteCategory, objs, arrs, T, lim: bool = True,
                    rng: np.random.Generator | None = None) -> CheckList:
    """``hom(T, lim X)`` (or ``hom(colim X, T)``) is in bijection with cones on ``T`` via the legs.

    Linear categories compare dimensions of the cone space with the rank of
    the leg map; other categories enumerate all cones. Mediating maps are
    checked against the cones they should reproduce.
    """
    cone = cat.limit(shape, objs, arrs) if lim else cat.colimit(shape, objs, arrs)
    w = CheckList()
    apex, legs = cone.apex, cone.legs
    nonid = shape.non_identity_arrows()

    def along(v, x):
        return cat.compose(arrs[v], x) if lim else cat.compose(x, arrs[v])

    def leg_at(j, m):
        return cat.compose(legs[j], m) if lim else cat.compose(m, legs[j])

    w.check("legs form a cone", all(
        cat.equal(along(v, legs[shape.sources[v] if lim else shape.targets[v]]),
                  legs[shape.targets[v] if lim else shape.sources[v]])
        for v in nonid
    ))

    def hom_T(j):
        return cat.hom(T, objs[j]) if lim else cat.hom(objs[j], T)

    med = cat.hom(T, apex) if lim else cat.hom(apex, T)
    objects = list(shape.objects)
    if cat.linear:
        p = cat.p
        bases = [hom_T(j) for j in objects]
        cols = []
        for j, basis in zip(objects, bases):
            for b in basis:
                col = []
                for v in nonid:
                    s, t = (shape.sources[v], shape.targets[v]) if lim else (shape.targets[v], shape.sources[v])
                    src, tgt = (T, objs[t]) if lim else (objs[t], T)
                    part = np.zeros(cat.flat_len(src, tgt), dtype=np.int64)
                    if j == s:
                        part = part + cat.flatten(along(v, b))
                    if j == t:
                        part = part - cat.flatten(b)
                    col.append(part)
                cols.append(np.concatenate(col) if col else np.zeros(0, dtype=np.int64))
        n = len(cols)
        rows = len(cols[0]) if cols else 0
        A = np.array(cols, dtype=np.int64).T % p if n else la.zeros(0, 0)
        cone_dim = n - la.rank(A, p) if rows else n
        image = [np.concatenate([cat.flatten(leg_at(j, m)) for j in objects]) if objects else np.zeros(0, dtype=np.int64)
                 for m in med]
        img_rank = la.rank(np.array(image, dtype=np.int64).T % p, p) if med and len(image[0]) else 0
        w.check("mediating maps are unique", img_rank == len(med))
        w.check("every cone mediates", cone_dim == len(med))
        if rng is not None and n and rows:
            kern, _ = la.nullspace(A, p)
            if kern.shape[1]:
                vec = (kern @ rng.integers(0, p, size=kern.shape[1])) % p
                fam, pos = [], 0
                for j, basis in zip(objects, bases):
                    src, tgt = (T, objs[j]) if lim else (objs[j], T)
                    fam.append(cat.combine(vec[pos:pos + len(basis)], basis, src, tgt))
                    pos += len(basis)
                m = cone.mediate(fam, T)
                w.check("mediator reproduces a random cone", all(cat.equal(leg_at(j, m), fam[j]) for j in objects))
        return w
    families = []
    for fam in itertools.product(*[hom_T(j) for j in objects]):
        if all(cat.equal(along(v, fam[shape.sources[v] if lim else shape.targets[v]]),
                         fam[shape.targets[v] if lim else shape.sources[v]]) for v in nonid):
            families.append(fam)
    w.check("every cone mediates", len(families) == len(med))
    seen = set()
    for m in med:
        seen.add(tuple(cat.describe(leg_at(j, m)).__repr__() for j in objects))
    w.check("mediating maps are unique", len(seen) == len(med))
    ok = True
    for fam in families:
        m = cone.mediate(list(fam), T)
        if not all(cat.equal(leg_at(j, m), fam[j]) for j in objects):
            ok = False
            break
    w.check("mediators reproduce every cone", ok)
    return w


def kunneth_check(C: ChainComplexes, a, b) -> bool:
    """``b_n(A (x) B) = sum_i b_i(A) b_{n-i}(B)`` over a field."""
    t = C.tensor(a, b)
    for n in t.degrees:
        want = sum(betti(a, i) * betti(b, n - i) for i in a.degrees if (n - i) in b.degrees)
        if betti(t, n) != want:
            return False
    return True


def quasi_iso_cone_check(f) -> bool:
    """A map is a quasi-isomorphism exactly when its mapping cone is acyclic."""
    return is_quasi_iso(f) == is_acyclic(mapping_cone(f))


def hom_end_check(ctx, X: Diagram, Y: Diagram) -> CheckList:
    """Natural transformations versus points of the end of pointwise internal homs."""
    M, MI = ctx.M, ctx.MI
    w = CheckList()
    n_nat = len(MI.hom(X, Y))
    E = ctx.L1.map_end(X, Y)
    n_end = len(M.hom(M.unit(), E.apex))
    w.check("hom versus points of the end", n_nat == n_end)
    if not M.linear:
        T = hom_bifunctor(M, X, Y)
        a, b = end(T).apex, end_equalizer(T).apex
        w.check("end of hom-sets versus hom", a.size == n_nat)
        w.check("wedge end versus equalizer end", a.size == b.size)
    else:
        from .diagram import Bifunctor

        T = Bifunctor(ctx.index, M, lambda i, j: M.ihom(X.objs[i], Y.objs[j]),
                      lambda u, v: M.ihom_mor(X.arrs[u], Y.arrs[v]))
        b = end_equalizer(T).apex
        w.check("wedge end versus equalizer end", len(M.hom(M.unit(), b)) == n_end)
    return w
