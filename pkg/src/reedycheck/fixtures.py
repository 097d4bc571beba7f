"""Seeded random fixtures: complexes, diagrams and constructively sampled (co)fibrations.

Every sampler takes a ``numpy.random.Generator`` and is deterministic given
its state. Cofibrations and fibrations are built so that they lie in the
requested class by construction, never by rejection.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

import numpy as np

from . import linalg as la
from .category import Category
from .chain import ChainComplex, ChainComplexes, ChainMap, chain_map, complex_, mapping_cone
from .diagram import Diagram, DiagramCategory, NatTrans, check_functorial, make_diagram
from .fincat import FiniteCategory, ReedyStructure
from .finset import FinSetMap, FinSetObject, FinSets
from .reedy import ReedyModel


@dataclass(frozen=True)
class ChainParams:
    """Size limits for random complexes: degrees ``0..max_degree``, at most ``max_dim`` per degree."""

    max_degree: int = 1
    max_dim: int = 2


def case_seed(seed: int, case: str | int) -> int:
    """Per-case seed derived from the master seed; independent of evaluation order."""
    h = hashlib.sha256(f"{seed}:{case}".encode()).digest()
    return int.from_bytes(h[:8], "little")


def case_rng(seed: int, case: str | int) -> np.random.Generator:
    return np.random.default_rng(case_seed(seed, case))


# -- chain complexes ---------------------------------------------------------------------


def random_invertible(n: int, p: int, rng: np.random.Generator) -> np.ndarray:
    while True:
        m = rng.integers(0, p, size=(n, n))
        if la.rank(m, p) == n:
            return m % p


def random_complex(p: int, rng: np.random.Generator, params: ChainParams = ChainParams(),
                   acyclic: bool = False, lo: int = 0, spheres: int = 0) -> ChainComplex:
    """A sum of spheres and disks in degrees ``lo..lo+max_degree`` under a random change of basis.

    ``spheres`` forces that many sphere summands, so the result has nonzero homology.
    """
    top = lo + params.max_degree
    dims = {n: 0 for n in range(lo, top + 1)}
    cells = []  # (kind, degree)
    for _ in range(0 if acyclic else spheres):
        n = int(rng.integers(lo, top + 1))
        cells.append(("sphere", n))
        dims[n] += 1
    for _ in range(int(rng.integers(0, params.max_dim * (params.max_degree + 1) + 1))):
        if acyclic or rng.random() < 0.5:
            if params.max_degree == 0:
                continue
            n = int(rng.integers(lo + 1, top + 1))
            if dims[n] < params.max_dim and dims[n - 1] < params.max_dim:
                cells.append(("disk", n))
                dims[n] += 1
                dims[n - 1] += 1
        else:
            n = int(rng.integers(lo, top + 1))
            if dims[n] < params.max_dim:
                cells.append(("sphere", n))
                dims[n] += 1
    pos = {n: 0 for n in dims}
    diffs = {n: la.zeros(dims[n - 1], dims[n]) for n in range(lo + 1, top + 1)}
    for kind, n in cells:
        if kind == "disk":
            diffs[n][pos[n - 1], pos[n]] = 1
            pos[n] += 1
            pos[n - 1] += 1
        else:
            pos[n] += 1
    basis = {n: random_invertible(dims[n], p, rng) for n in dims}
    out = []
    for n in range(lo + 1, top + 1):
        pinv = la.inverse(basis[n], p)
        out.append((basis[n - 1] @ diffs[n] @ pinv) % p if dims[n] and dims[n - 1] else diffs[n])
    return complex_(p, lo, [dims[n] for n in range(lo, top + 1)], out)


def random_combination(cat: Category, basis: list, a, b, rng: np.random.Generator):
    if not basis:
        return cat.zero(a, b)
    return cat.combine(rng.integers(0, cat.p, size=len(basis)), basis, a, b)


def random_morphism(cat: Category, a, b, rng: np.random.Generator):
    """A uniformly random morphism (linear) or random element of the hom-set (sets)."""
    if cat.linear:
        return random_combination(cat, cat.hom(a, b), a, b, rng)
    if isinstance(cat, FinSets):
        if a.size and not b.size:
            return None
        return FinSetMap(a, b, tuple(int(x) for x in rng.integers(0, b.size, size=a.size)))
    hs = cat.hom(a, b)
    return hs[int(rng.integers(len(hs)))] if hs else None


def base_cofibration(C: ChainComplexes, rng: np.random.Generator, trivial: bool = False,
                     params: ChainParams = ChainParams(), source: ChainComplex | None = None) -> ChainMap:
    """``A -> Cone(t)`` for a random ``t: E -> A``; the cokernel is ``E`` shifted, acyclic when ``trivial``."""
    p = C.p
    A = source if source is not None else random_complex(p, rng, params)
    E = random_complex(p, rng, params, acyclic=trivial, lo=-1 if rng.random() < 0.3 else 0, spheres=1)
    t = random_morphism(C, E, A, rng)
    B = mapping_cone(t)
    comps = {}
    for n in A.degrees:
        m = la.zeros(B.dim(n), A.dim(n))
        off = E.dim(n - 1)
        m[off:off + A.dim(n), :] = la.eye(A.dim(n))
        comps[n] = m
    return chain_map(A, B, comps)


def fiber_complex(t: ChainMap) -> tuple[ChainComplex, ChainMap]:
    """``Fib(t)_n = B_n + K_{n+1}`` with ``d(b, k) = (db, t b - dk)`` and its projection onto ``B``."""
    B, K, p = t.source, t.target, t.source.p
    lo = min(B.lo, K.lo - 1) if K.dims else B.lo
    hi = max(B.hi, K.hi - 1) if K.dims else B.hi
    dims = [B.dim(n) + K.dim(n + 1) for n in range(lo, hi + 1)]
    diffs = []
    for n in range(lo + 1, hi + 1):
        b0, k0 = B.dim(n), K.dim(n + 1)
        b1, k1 = B.dim(n - 1), K.dim(n)
        m = la.zeros(b1 + k1, b0 + k0)
        m[:b1, :b0] = B.d(n)
        m[b1:, :b0] = t.comp(n)
        m[b1:, b0:] = -K.d(n + 1)
        diffs.append(m % p)
    F = complex_(p, lo, dims, diffs)
    comps = {}
    for n in B.degrees:
        m = la.zeros(B.dim(n), F.dim(n))
        m[:, :B.dim(n)] = la.eye(B.dim(n))
        comps[n] = m
    return F, chain_map(F, B, comps)


def base_fibration(C: ChainComplexes, rng: np.random.Generator, trivial: bool = False,
                   params: ChainParams = ChainParams(), target: ChainComplex | None = None) -> ChainMap:
    """``Fib(t) -> B`` for a random ``t: B -> K``; the kernel is ``K`` shifted, acyclic when ``trivial``."""
    p = C.p
    B = target if target is not None else random_complex(p, rng, params)
    K = random_complex(p, rng, params, acyclic=trivial, lo=1 if rng.random() < 0.3 else 0, spheres=1)
    t = random_morphism(C, B, K, rng)
    return fiber_complex(t)[1]


# -- diagrams -------------------------------------------------------------------------------


def random_reedy_diagram(model: ReedyModel, rng: np.random.Generator, sample_object) -> Diagram:
    """Random diagram built inductively; each step extends the latching or the matching object.

    Form (a): ``Z_i = L_i Z + R`` with the latching map the inclusion. Form (b):
    ``Z_i = M_i Z + R`` with the matching map the identity on ``M_i Z``. In
    both ``R`` is a fresh object with a random map to ``M_i Z``.
    """
    C = model.C

    def step(i, LZ, MZ, c):
        R = sample_object(rng)
        r = random_morphism(C, R, MZ.apex, rng)
        if r is None:
            R = C.initial()
            r = C.initial_map(MZ.apex)
        if rng.random() < 0.5:
            cop = C.coproduct([LZ.apex, R])
            return cop.apex, cop.legs[0], cop.mediate([c, r], MZ.apex)
        cop = C.coproduct([MZ.apex, R])
        return cop.apex, C.compose(cop.legs[0], c), cop.mediate([C.identity(MZ.apex), r], MZ.apex)

    return model.induct(step)


def random_diagram(cat: Category, r: ReedyStructure, rng: np.random.Generator, sample_object) -> Diagram:
    """Random diagram in any category with finite (co)limits, built inductively."""
    from types import SimpleNamespace

    return random_reedy_diagram(ReedyModel(SimpleNamespace(cat=cat), r), rng, sample_object)


def generators(index: FiniteCategory) -> list[int]:
    """Non-identity arrows that are not composites of two non-identity arrows."""
    nonid = index.non_identity_arrows()
    composite = set()
    for g in nonid:
        for f in nonid:
            h = int(index.comp[g, f])
            if h >= 0:
                composite.add(h)
    return [u for u in nonid if u not in composite]


def random_finset_diagram(index: FiniteCategory, rng: np.random.Generator, max_size: int = 3,
                          tries: int = 200) -> Diagram:
    """Random sizes and generator tables; composites derived; rejected unless functorial."""
    F = FinSets()
    gens = generators(index)
    nonid = index.non_identity_arrows()
    for _ in range(tries):
        sizes = [int(rng.integers(0, max_size + 1)) for _ in index.objects]
        objs = [FinSetObject(s) for s in sizes]
        arrs: dict = {}
        ok = True
        for u in gens:
            f = random_morphism(F, objs[index.sources[u]], objs[index.targets[u]], rng)
            if f is None:
                ok = False
                break
            arrs[u] = f
        if not ok:
            continue
        changed = True
        while changed:
            changed = False
            for g in nonid:
                for f in nonid:
                    h = int(index.comp[g, f])
                    if h >= 0 and h not in arrs and g in arrs and f in arrs:
                        arrs[h] = F.compose(arrs[g], arrs[f])
                        changed = True
        if any(u not in arrs for u in nonid):
            continue
        d = make_diagram(F, index, objs, arrs, check=False)
        if check_functorial(F, d).ok:
            return d
    raise RuntimeError("no functorial diagram found; the index has too many relations for rejection sampling")


def all_finset_diagrams(index: FiniteCategory, max_size: int = 3):
    """Every functor into finite sets of size ``<= max_size`` (small indices only)."""
    import itertools

    F = FinSets()
    gens = generators(index)
    nonid = index.non_identity_arrows()
    for sizes in itertools.product(range(max_size + 1), repeat=index.n_objects):
        objs = [FinSetObject(s) for s in sizes]
        spaces = [F.hom(objs[index.sources[u]], objs[index.targets[u]]) for u in gens]
        for choice in itertools.product(*spaces):
            arrs = dict(zip(gens, choice))
            changed = True
            while changed:
                changed = False
                for g in nonid:
                    for f in nonid:
                        h = int(index.comp[g, f])
                        if h >= 0 and h not in arrs and g in arrs and f in arrs:
                            arrs[h] = F.compose(arrs[g], arrs[f])
                            changed = True
            d = make_diagram(F, index, objs, arrs, check=False)
            if check_functorial(F, d).ok:
                yield d


def random_chain_diagram(model: ReedyModel, rng: np.random.Generator, params: ChainParams = ChainParams(),
                         acyclic: bool = False) -> Diagram:
    p = model.C.p
    return random_reedy_diagram(model, rng, lambda g: random_complex(p, g, params, acyclic=acyclic))


def random_nat(D: DiagramCategory, a: Diagram, b: Diagram, rng: np.random.Generator):
    return random_morphism(D, a, b, rng)


# -- Reedy (co)fibrations ---------------------------------------------------------------------


def reedy_cofibration(model: ReedyModel, X: Diagram, rng: np.random.Generator, trivial: bool = False,
                      params: ChainParams = ChainParams(), sample_E=None) -> NatTrans:
    """``X -> Y`` with ``Y_i = (X_i + _{L_i X} L_i Y) + E_i``; ``E_i`` acyclic when ``trivial``.

    The relative latching map at ``i`` is the summand inclusion, a
    (trivial) cofibration by construction. ``sample_E(rng, trivial)`` must
    return a cofibrant (acyclic when ``trivial``) object; the default draws
    a random complex.
    """
    C = model.C
    idx = model.r.base
    p = C.p
    g_c: dict = {}

    def step(i, LY, MY, c):
        LX, MX = model.latching(X, i), model.matching(X, i)
        Lg = LX.cone.mediate([C.compose(leg, g_c[idx.sources[u]]) for leg, u in zip(LY.cone.legs, LY.labels)], LY.apex)
        po = C.pushout(LX.canonical, Lg)  # legs: L_i X, X_i, L_i Y
        Mg = MY.cone.mediate([C.compose(g_c[idx.targets[u]], leg) for leg, u in zip(MX.cone.legs, MY.labels)], MX.apex)
        x_to_my = C.compose(Mg, MX.canonical)
        p_to_my = po.mediate([C.compose(x_to_my, LX.canonical), x_to_my, c], MY.apex)
        E = sample_E(rng, trivial) if sample_E else random_complex(p, rng, params, acyclic=trivial, spheres=int(rng.integers(2)))
        e = random_morphism(C, E, MY.apex, rng)
        cop = C.coproduct([po.apex, E])
        g_c[i] = C.compose(cop.legs[0], po.legs[1])
        return cop.apex, C.compose(cop.legs[0], po.legs[2]), cop.mediate([p_to_my, e], MY.apex)

    Y = model.induct(step)
    return NatTrans(X, Y, tuple(g_c[i] for i in idx.objects))


def reedy_fibration(model: ReedyModel, Y: Diagram, rng: np.random.Generator, trivial: bool = False,
                    params: ChainParams = ChainParams(), sample_E=None) -> NatTrans:
    """``X -> Y`` with ``X_i = (Y_i x_{M_i Y} M_i X) + E_i``; ``E_i`` fibrant, acyclic when ``trivial``."""
    C = model.C
    idx = model.r.base
    p = C.p
    g_c: dict = {}

    def step(i, LX, MX, c):
        LY, MY = model.latching(Y, i), model.matching(Y, i)
        Mg = MY.cone.mediate([C.compose(g_c[idx.targets[u]], leg) for leg, u in zip(MX.cone.legs, MX.labels)], MX.apex)
        pb = C.pullback(MY.canonical, Mg)  # legs: M_i Y, Y_i, M_i X
        Lg = LX.cone.mediate([C.compose(leg, g_c[idx.sources[u]]) for leg, u in zip(LY.cone.legs, LX.labels)], LY.apex)
        lx_to_y = C.compose(LY.canonical, Lg)
        lx_to_q = pb.mediate([C.compose(MY.canonical, lx_to_y), lx_to_y, c], LX.apex)
        E = sample_E(rng, trivial) if sample_E else random_complex(p, rng, params, acyclic=trivial, spheres=int(rng.integers(2)))
        e = random_morphism(C, LX.apex, E, rng)
        prod = C.product([pb.apex, E])
        proj = C.compose(pb.legs[1], prod.legs[0])
        g_c[i] = proj
        return prod.apex, prod.mediate([lx_to_q, e], LX.apex), C.compose(pb.legs[2], prod.legs[0])

    X = model.induct(step)
    return NatTrans(X, Y, tuple(g_c[i] for i in idx.objects))


def from_zero(D: DiagramCategory, X: Diagram) -> NatTrans:
    C = D.inner
    Z = D.constant(C.initial())
    return NatTrans(Z, X, tuple(C.initial_map(x) for x in X.objs))


def to_terminal(D: DiagramCategory, X: Diagram) -> NatTrans:
    C = D.inner
    T = D.constant(C.terminal())
    return NatTrans(X, T, tuple(C.terminal_map(x) for x in X.objs))
