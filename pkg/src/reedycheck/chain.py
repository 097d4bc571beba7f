"""Bounded chain complexes over GF(p) with the projective model structure.

Over a field the projective model structure has quasi-isomorphisms as weak
equivalences, degreewise surjections as fibrations and degreewise
injections as cofibrations, so every model-theoretic predicate reduces to a
rank computation.

Bases are ordered degree-ascending; a summand ``A_i (x) B_j`` of a tensor
product uses the row-major Kronecker order, and a summand ``Hom(A_k, B_l)``
of an internal hom stores its matrix row-major.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg as la
from .category import Cone, IdCache, NotAConeError
from .monoidal import ClosedMonoidal

COFIB_TRIVFIB = "cof_trivfib"
TRIVCOF_FIB = "trivcof_fib"


@dataclass(frozen=True, eq=False)
class ChainComplex:
    """``diffs[k]`` is the differential from degree ``lo + k + 1`` to ``lo + k``."""

    p: int
    lo: int
    dims: tuple[int, ...]
    diffs: tuple[np.ndarray, ...] = field(repr=False)

    @property
    def hi(self) -> int:
        return self.lo + len(self.dims) - 1

    @property
    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def dim(self, n: int) -> int:
        k = n - self.lo
        return self.dims[k] if 0 <= k < len(self.dims) else 0

    def d(self, n: int) -> np.ndarray:
        k = n - self.lo
        if 1 <= k < len(self.dims):
            return self.diffs[k - 1]
        return la.zeros(self.dim(n - 1), self.dim(n))

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def dim_vector(self) -> dict[int, int]:
        return {n: self.dim(n) for n in self.degrees}

    def __repr__(self):
        return f"ChainComplex(p={self.p}, lo={self.lo}, dims={self.dims})"


def complex_(p: int, lo: int, dims, diffs=None) -> ChainComplex:
    """Build a complex, reducing entries mod ``p`` and trimming zero end degrees.

    ``diffs`` lists the differentials out of degrees ``lo+1 .. hi``; missing
    entries default to zero maps.
    """
    dims = [int(x) for x in dims]
    diffs = list(diffs) if diffs is not None else []
    mats = []
    for k in range(1, len(dims)):
        shape = (dims[k - 1], dims[k])
        if k - 1 < len(diffs) and diffs[k - 1] is not None:
            mats.append(la.as_matrix(diffs[k - 1], p, shape))
        else:
            mats.append(la.zeros(*shape))
    while dims and dims[0] == 0:
        dims.pop(0)
        lo += 1
        if mats:
            mats.pop(0)
    while dims and dims[-1] == 0:
        dims.pop()
        if mats:
            mats.pop()
    if not dims:
        lo = 0
    return ChainComplex(p, lo, tuple(dims), tuple(mats))


def zero_complex(p: int) -> ChainComplex:
    return ChainComplex(p, 0, (), ())


def sphere(p: int, n: int, dim: int = 1) -> ChainComplex:
    """``S^n``: the field (or ``dim`` copies) in degree ``n``."""
    return complex_(p, n, [dim])


def disk(p: int, n: int, dim: int = 1) -> ChainComplex:
    """``D^n``: identity from degree ``n`` to degree ``n - 1``."""
    return complex_(p, n - 1, [dim, dim], [la.eye(dim)])


@dataclass(frozen=True, eq=False)
class ChainMap:
    source: ChainComplex
    target: ChainComplex
    comps: dict = field(repr=False)

    def comp(self, n: int) -> np.ndarray:
        m = self.comps.get(n)
        if m is None:
            return la.zeros(self.target.dim(n), self.source.dim(n))
        return m

    def __repr__(self):
        return f"ChainMap({self.source!r} -> {self.target!r})"


def _common(a: ChainComplex, b: ChainComplex) -> list[int]:
    return [n for n in range(max(a.lo, b.lo), min(a.hi, b.hi) + 1) if a.dim(n) and b.dim(n)]


def _union(*cs: ChainComplex) -> range:
    live = [c for c in cs if c.dims]
    if not live:
        return range(0)
    return range(min(c.lo for c in live), max(c.hi for c in live) + 1)


def chain_map(src: ChainComplex, tgt: ChainComplex, comps) -> ChainMap:
    """Build a map from ``{degree: matrix}``; missing degrees are zero."""
    p = src.p
    out = {}
    for n in _common(src, tgt):
        m = comps.get(n)
        if m is not None:
            out[n] = la.as_matrix(m, p, (tgt.dim(n), src.dim(n)))
        else:
            out[n] = la.zeros(tgt.dim(n), src.dim(n))
    return ChainMap(src, tgt, out)


def _block_diag(mats, rows: int, cols: int) -> np.ndarray:
    out = la.zeros(rows, cols)
    r = c = 0
    for m in mats:
        out[r:r + m.shape[0], c:c + m.shape[1]] = m
        r += m.shape[0]
        c += m.shape[1]
    return out


class _TensorLayout:
    """Summand offsets of ``(A (x) B)_n``."""

    def __init__(self, a: ChainComplex, b: ChainComplex):
        self.blocks: dict[int, list[tuple[int, int, int, int]]] = {}
        self.offset: dict[tuple[int, int], int] = {}
        self.dims: dict[int, int] = {}
        if not a.dims or not b.dims:
            self.lo = 0
            return
        self.lo = a.lo + b.lo
        for n in range(a.lo + b.lo, a.hi + b.hi + 1):
            off = 0
            blocks = []
            for i in a.degrees:
                j = n - i
                size = a.dim(i) * b.dim(j)
                if size:
                    blocks.append((i, j, off, size))
                    self.offset[(i, j)] = off
                    off += size
            self.blocks[n] = blocks
            self.dims[n] = off


class _HomLayout:
    """Summand offsets of ``[A, B]_n = prod_k Hom(A_k, B_{k+n})``."""

    def __init__(self, a: ChainComplex, b: ChainComplex):
        self.blocks: dict[int, list[tuple[int, int, int]]] = {}
        self.offset: dict[tuple[int, int], int] = {}
        self.dims: dict[int, int] = {}
        if not a.dims or not b.dims:
            self.lo = 0
            return
        self.lo = b.lo - a.hi
        for n in range(b.lo - a.hi, b.hi - a.lo + 1):
            off = 0
            blocks = []
            for k in a.degrees:
                size = b.dim(k + n) * a.dim(k)
                if size:
                    blocks.append((k, off, size))
                    self.offset[(n, k)] = off
                    off += size
            self.blocks[n] = blocks
            self.dims[n] = off


class ChainComplexes(ClosedMonoidal):
    """Bounded complexes of finite-dimensional GF(p)-vector spaces."""

    linear = True

    def __init__(self, p: int = 2):
        if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self._hom_cache = IdCache()
        self._tensor_cache = IdCache()
        self._ihom_cache = IdCache()
        self._assoc_cache = IdCache(128)

    def __repr__(self):
        return f"ChainComplexes(p={self.p})"

    def _check(self, *cs):
        for c in cs:
            if c.p != self.p:
                raise TypeError(f"complex over GF({c.p}) used in GF({self.p}) base")

    def complex(self, lo, dims, diffs=None) -> ChainComplex:
        return complex_(self.p, lo, dims, diffs)

    def map(self, src, tgt, comps) -> ChainMap:
        return chain_map(src, tgt, comps)

    # -- category -----------------------------------------------------------------
    def identity(self, a):
        return ChainMap(a, a, {n: la.eye(a.dim(n)) for n in a.degrees if a.dim(n)})

    def compose(self, g, f):
        if f.target.dims != g.source.dims or f.target.lo != g.source.lo:
            raise ValueError("cannot compose: middle complexes differ")
        p = self.p
        return ChainMap(f.source, g.target, {n: (g.comp(n) @ f.comp(n)) % p for n in _common(f.source, g.target)})

    def equal(self, f, g):
        if not (self.same_object(f.source, g.source) and self.same_object(f.target, g.target)):
            return False
        return all(np.array_equal(f.comp(n), g.comp(n)) for n in _common(f.source, f.target))

    def source(self, f):
        return f.source

    def target(self, f):
        return f.target

    def same_object(self, a, b):
        if a is b:
            return True
        return (
            a.p == b.p and a.lo == b.lo and a.dims == b.dims
            and all(np.array_equal(x, y) for x, y in zip(a.diffs, b.diffs))
        )

    def describe(self, f):
        from .serialize import chain_map_to_json

        return chain_map_to_json(f)

    def flat_len(self, a, b):
        return sum(a.dim(n) * b.dim(n) for n in _common(a, b))

    def flatten(self, f):
        degs = _common(f.source, f.target)
        if not degs:
            return np.zeros(0, dtype=np.int64)
        return np.concatenate([f.comp(n).ravel() for n in degs])

    def unflatten(self, vec, a, b):
        comps = {}
        off = 0
        for n in _common(a, b):
            size = a.dim(n) * b.dim(n)
            comps[n] = np.asarray(vec[off:off + size], dtype=np.int64).reshape(b.dim(n), a.dim(n)) % self.p
            off += size
        return ChainMap(a, b, comps)

    def constraint_matrix(self, a, b) -> np.ndarray:
        """Rows express ``d_b f - f d_a = 0`` in flattened coordinates."""
        degs = _common(a, b)
        offs = {}
        off = 0
        for n in degs:
            offs[n] = off
            off += a.dim(n) * b.dim(n)
        rows = []
        for n in _union(a, b):
            nr = b.dim(n - 1) * a.dim(n)
            if not nr:
                continue
            block = la.zeros(nr, off)
            if n in offs and b.dim(n - 1):
                block[:, offs[n]:offs[n] + b.dim(n) * a.dim(n)] += np.kron(b.d(n), la.eye(a.dim(n)))
            if (n - 1) in offs and a.dim(n):
                block[:, offs[n - 1]:offs[n - 1] + b.dim(n - 1) * a.dim(n - 1)] -= np.kron(la.eye(b.dim(n - 1)), a.d(n).T)
            rows.append(block % self.p)
        if not rows:
            return la.zeros(0, off)
        return np.vstack(rows)

    def hom(self, a, b):
        def build():
            basis, _ = la.nullspace(self.constraint_matrix(a, b), self.p)
            return [self.unflatten(basis[:, k], a, b) for k in range(basis.shape[1])]

        return self._hom_cache.get((a, b), build)

    def is_morphism(self, f) -> bool:
        return self.is_chain_map(f)

    def is_chain_map(self, f) -> bool:
        m = self.constraint_matrix(f.source, f.target)
        return not np.any((m @ self.flatten(f)) % self.p) if m.size else True

    def inverse(self, f):
        a, b = f.source, f.target
        if a.lo != b.lo or a.dims != b.dims:
            return None
        comps = {}
        for n in a.degrees:
            if not a.dim(n):
                continue
            inv = la.inverse(f.comp(n), self.p)
            if inv is None:
                return None
            comps[n] = inv
        return ChainMap(b, a, comps)

    def limit(self, shape, objs, arrs):
        p = self.p
        non_id = shape.non_identity_arrows()
        degs = _union(*objs)
        data = {}
        for n in degs:
            sizes = [o.dim(n) for o in objs]
            offs = np.concatenate([[0], np.cumsum(sizes)]).astype(int)
            N = int(offs[-1])
            blocks = []
            for u in non_id:
                s, t = shape.sources[u], shape.targets[u]
                rows = sizes[t]
                if not rows:
                    continue
                blk = la.zeros(rows, N)
                blk[:, offs[s]:offs[s + 1]] += arrs[u].comp(n)
                blk[:, offs[t]:offs[t + 1]] -= la.eye(rows)
                blocks.append(blk % p)
            rel = np.vstack(blocks) if blocks else la.zeros(0, N)
            e, free = la.nullspace(rel, p)
            data[n] = (offs, rel, e, free)
        dims = [data[n][2].shape[1] for n in degs]
        diffs = []
        for n in list(degs)[1:]:
            dv = _block_diag([o.d(n) for o in objs], int(data[n - 1][0][-1]), int(data[n][0][-1]))
            diffs.append(((dv @ data[n][2]) % p)[data[n - 1][3], :])
        apex = complex_(p, degs.start if len(degs) else 0, dims, diffs)
        legs = []
        for s, o in enumerate(objs):
            legs.append(ChainMap(apex, o, {
                n: data[n][2][data[n][0][s]:data[n][0][s + 1], :] for n in _common(apex, o)
            }))

        def mediate(cone_legs, other):
            src = cone_legs[0].source if cone_legs else other
            comps = {}
            for n in _common(src, apex):
                offs, rel, _, free = data[n]
                stacked = np.vstack([leg.comp(n) for leg in cone_legs]) if cone_legs else la.zeros(0, src.dim(n))
                if rel.size and np.any((rel @ stacked) % p):
                    raise NotAConeError(f"legs do not form a cone in degree {n}")
                comps[n] = stacked[free, :]
            return ChainMap(src, apex, comps)

        return Cone(apex, legs, mediate)

    def colimit(self, shape, objs, arrs):
        p = self.p
        non_id = shape.non_identity_arrows()
        degs = _union(*objs)
        data = {}
        for n in degs:
            sizes = [o.dim(n) for o in objs]
            offs = np.concatenate([[0], np.cumsum(sizes)]).astype(int)
            N = int(offs[-1])
            cols = []
            for u in non_id:
                s, t = shape.sources[u], shape.targets[u]
                if not sizes[s]:
                    continue
                blk = la.zeros(N, sizes[s])
                blk[offs[t]:offs[t + 1], :] += arrs[u].comp(n)
                blk[offs[s]:offs[s + 1], :] -= la.eye(sizes[s])
                cols.append(blk % p)
            rel = np.hstack(cols) if cols else la.zeros(N, 0)
            q, sec = la.quotient(rel, N, p)
            data[n] = (offs, rel, q, sec)
        dims = [data[n][2].shape[0] for n in degs]
        diffs = []
        for n in list(degs)[1:]:
            dv = _block_diag([o.d(n) for o in objs], int(data[n - 1][0][-1]), int(data[n][0][-1]))
            diffs.append((data[n - 1][2] @ dv @ data[n][3]) % p)
        apex = complex_(p, degs.start if len(degs) else 0, dims, diffs)
        legs = []
        for s, o in enumerate(objs):
            legs.append(ChainMap(o, apex, {
                n: data[n][2][:, data[n][0][s]:data[n][0][s + 1]] for n in _common(o, apex)
            }))

        def mediate(cone_legs, other):
            tgt = cone_legs[0].target if cone_legs else other
            comps = {}
            for n in _common(apex, tgt):
                offs, rel, _, sec = data[n]
                stacked = np.hstack([leg.comp(n) for leg in cone_legs]) if cone_legs else la.zeros(tgt.dim(n), 0)
                if rel.size and np.any((stacked @ rel) % p):
                    raise NotAConeError(f"legs do not form a cocone in degree {n}")
                comps[n] = (stacked @ sec) % p
            return ChainMap(apex, tgt, comps)

        return Cone(apex, legs, mediate)

    # -- closed symmetric monoidal structure ---------------------------------------
    def unit(self):
        return complex_(self.p, 0, [1])

    def _tlayout(self, a, b) -> _TensorLayout:
        return self._tensor_cache.get((a, b, "layout"), lambda: _TensorLayout(a, b))

    def tensor(self, a, b):
        self._check(a, b)
        return self._tensor_cache.get((a, b), lambda: self._tensor(a, b))

    def _tensor(self, a, b):
        lay = self._tlayout(a, b)
        if not lay.dims:
            return zero_complex(self.p)
        degs = sorted(lay.dims)
        diffs = []
        for n in degs[1:]:
            m = la.zeros(lay.dims[n - 1], lay.dims[n])
            for i, j, off, size in lay.blocks[n]:
                ai, bj = a.dim(i), b.dim(j)
                if (i - 1, j) in lay.offset and a.dim(i - 1):
                    o2 = lay.offset[(i - 1, j)]
                    m[o2:o2 + a.dim(i - 1) * bj, off:off + size] += np.kron(a.d(i), la.eye(bj))
                if (i, j - 1) in lay.offset and b.dim(j - 1):
                    o2 = lay.offset[(i, j - 1)]
                    sign = -1 if i % 2 else 1
                    m[o2:o2 + ai * b.dim(j - 1), off:off + size] += sign * np.kron(la.eye(ai), b.d(j))
            diffs.append(m % self.p)
        return complex_(self.p, degs[0], [lay.dims[n] for n in degs], diffs)

    def tensor_mor(self, f, g):
        src = self.tensor(f.source, g.source)
        tgt = self.tensor(f.target, g.target)
        ls = self._tlayout(f.source, g.source)
        lt = self._tlayout(f.target, g.target)
        comps = {}
        for n in _common(src, tgt):
            m = la.zeros(tgt.dim(n), src.dim(n))
            for i, j, off, size in ls.blocks[n]:
                o2 = lt.offset.get((i, j))
                if o2 is None:
                    continue
                fi, gj = f.comp(i), g.comp(j)
                m[o2:o2 + fi.shape[0] * gj.shape[0], off:off + size] = np.kron(fi, gj)
            comps[n] = m % self.p
        return ChainMap(src, tgt, comps)

    def _hlayout(self, a, b) -> _HomLayout:
        return self._ihom_cache.get((a, b, "layout"), lambda: _HomLayout(a, b))

    def ihom(self, a, b):
        self._check(a, b)
        return self._ihom_cache.get((a, b), lambda: self._ihom(a, b))

    def _ihom(self, a, b):
        lay = self._hlayout(a, b)
        if not lay.dims:
            return zero_complex(self.p)
        degs = sorted(lay.dims)
        diffs = []
        for n in degs[1:]:
            m = la.zeros(lay.dims[n - 1], lay.dims[n])
            sign = 1 if n % 2 else -1  # -(-1)^n
            for k, off, size in lay.blocks[n]:
                ak = a.dim(k)
                o2 = lay.offset.get((n - 1, k))
                if o2 is not None and b.dim(k + n - 1):
                    m[o2:o2 + b.dim(k + n - 1) * ak, off:off + size] += np.kron(b.d(k + n), la.eye(ak))
                o3 = lay.offset.get((n - 1, k + 1))
                if o3 is not None:
                    bl = b.dim(k + n)
                    m[o3:o3 + bl * a.dim(k + 1), off:off + size] += sign * np.kron(la.eye(bl), a.d(k + 1).T)
            diffs.append(m % self.p)
        return complex_(self.p, degs[0], [lay.dims[n] for n in degs], diffs)

    def ihom_mor(self, f, g):
        a2, a = f.source, f.target
        b, b2 = g.source, g.target
        src, tgt = self.ihom(a, b), self.ihom(a2, b2)
        ls, lt = self._hlayout(a, b), self._hlayout(a2, b2)
        comps = {}
        for n in _common(src, tgt):
            m = la.zeros(tgt.dim(n), src.dim(n))
            for k, off, size in ls.blocks[n]:
                o2 = lt.offset.get((n, k))
                if o2 is None:
                    continue
                gk, fk = g.comp(k + n), f.comp(k)
                m[o2:o2 + gk.shape[0] * fk.shape[1], off:off + size] = np.kron(gk, fk.T)
            comps[n] = m % self.p
        return ChainMap(src, tgt, comps)

    def curry(self, phi, a, b, c):
        hom_bc = self.ihom(b, c)
        lt = self._tlayout(a, b)
        lh = self._hlayout(b, c)
        comps = {}
        for i in _common(a, hom_bc):
            m = la.zeros(hom_bc.dim(i), a.dim(i))
            for k, off, size in lh.blocks[i]:
                ot = lt.offset.get((i, k))
                if ot is None:
                    continue
                ai, bk, cn = a.dim(i), b.dim(k), c.dim(i + k)
                blk = phi.comp(i + k)[:, ot:ot + ai * bk].reshape(cn, ai, bk)
                m[off:off + size, :] = blk.transpose(0, 2, 1).reshape(cn * bk, ai)
            comps[i] = m
        return ChainMap(a, hom_bc, comps)

    def uncurry(self, psi, a, b, c):
        ab = self.tensor(a, b)
        lt = self._tlayout(a, b)
        lh = self._hlayout(b, c)
        comps = {}
        for n in _common(ab, c):
            m = la.zeros(c.dim(n), ab.dim(n))
            for i, j, off, size in lt.blocks[n]:
                oh = lh.offset.get((i, j))
                if oh is None:
                    continue
                ai, bj, cn = a.dim(i), b.dim(j), c.dim(n)
                blk = psi.comp(i)[oh:oh + cn * bj, :].reshape(cn, bj, ai)
                m[:, off:off + size] = blk.transpose(0, 2, 1).reshape(cn, ai * bj)
            comps[n] = m
        return ChainMap(ab, c, comps)

    def _perm_map(self, src, tgt, entries) -> ChainMap:
        comps = {n: la.zeros(tgt.dim(n), src.dim(n)) for n in _common(src, tgt)}
        for n, row, col, val in entries:
            comps[n][row, col] = val % self.p
        return ChainMap(src, tgt, comps)

    def sym(self, a, b):
        ab, ba = self.tensor(a, b), self.tensor(b, a)
        lab, lba = self._tlayout(a, b), self._tlayout(b, a)
        comps = {}
        for n in _common(ab, ba):
            m = la.zeros(ba.dim(n), ab.dim(n))
            for i, j, off, size in lab.blocks[n]:
                o2 = lba.offset[(j, i)]
                ai, bj = a.dim(i), b.dim(j)
                sign = -1 if (i * j) % 2 else 1
                r = np.arange(ai)[:, None]
                s = np.arange(bj)[None, :]
                m[(o2 + s * ai + r).ravel(), (off + r * bj + s).ravel()] = sign
            comps[n] = m % self.p
        return ChainMap(ab, ba, comps)

    def assoc(self, a, b, c):
        return self._assoc_cache.get((a, b, c), lambda: self._assoc(a, b, c))

    def _assoc(self, a, b, c):
        ab = self.tensor(a, b)
        bc = self.tensor(b, c)
        src = self.tensor(ab, c)
        tgt = self.tensor(a, bc)
        l_ab, l_bc = self._tlayout(a, b), self._tlayout(b, c)
        l_src, l_tgt = self._tlayout(ab, c), self._tlayout(a, bc)
        comps = {n: la.zeros(tgt.dim(n), src.dim(n)) for n in _common(src, tgt)}
        for n, blocks in l_src.blocks.items():
            for m_deg, l, off, _ in blocks:
                cl = c.dim(l)
                for i, j, o_ab, _s in l_ab.blocks.get(m_deg, []):
                    q = j + l
                    o_t = l_tgt.offset[(i, q)]
                    o_bc = l_bc.offset[(j, l)]
                    bcq = bc.dim(q)
                    bj = b.dim(j)
                    r = np.arange(a.dim(i))[:, None, None]
                    s = np.arange(bj)[None, :, None]
                    t = np.arange(cl)[None, None, :]
                    col = off + (o_ab + r * bj + s) * cl + t
                    row = o_t + r * bcq + o_bc + s * cl + t
                    comps[n][row.ravel(), col.ravel()] = 1
        return ChainMap(src, tgt, comps)

    def assoc_inv(self, a, b, c):
        f = self.assoc(a, b, c)
        return ChainMap(f.target, f.source, {n: m.T.copy() for n, m in f.comps.items()})

    def lunit(self, a):
        return ChainMap(self.tensor(self.unit(), a), a, {n: la.eye(a.dim(n)) for n in a.degrees if a.dim(n)})

    def lunit_inv(self, a):
        return ChainMap(a, self.tensor(self.unit(), a), {n: la.eye(a.dim(n)) for n in a.degrees if a.dim(n)})

    def runit(self, a):
        return ChainMap(self.tensor(a, self.unit()), a, {n: la.eye(a.dim(n)) for n in a.degrees if a.dim(n)})

    def runit_inv(self, a):
        return ChainMap(a, self.tensor(a, self.unit()), {n: la.eye(a.dim(n)) for n in a.degrees if a.dim(n)})

    def unit_copower(self, n):
        k = self.unit()
        return self.coproduct([k] * n)

    # -- model structure -------------------------------------------------------------
    def homology(self, a) -> dict[int, int]:
        return homology(a)

    def flags(self, f) -> dict[str, bool]:
        return classify(f)

    def factorize(self, f, kind: str):
        return factorize(f, kind)


# -- homological algebra ------------------------------------------------------------


def is_complex(a: ChainComplex) -> bool:
    """``d . d == 0`` in every degree."""
    return all(not np.any((a.d(n - 1) @ a.d(n)) % a.p) for n in a.degrees)


def homology(a: ChainComplex) -> dict[int, int]:
    p = a.p
    out = {}
    for n in a.degrees:
        out[n] = a.dim(n) - la.rank(a.d(n), p) - la.rank(a.d(n + 1), p)
    return out


def betti(a: ChainComplex, n: int) -> int:
    return a.dim(n) - la.rank(a.d(n), a.p) - la.rank(a.d(n + 1), a.p)


def is_acyclic(a: ChainComplex) -> bool:
    return all(v == 0 for v in homology(a).values())


def induced_homology_iso(f: ChainMap, n: int) -> bool:
    """Whether ``H_n(f)`` is an isomorphism, via ranks of the induced map."""
    a, b, p = f.source, f.target, f.source.p
    if betti(a, n) != betti(b, n):
        return False
    z, _ = la.nullspace(a.d(n), p)
    if z.shape[1] == 0:
        return True
    fz = (f.comp(n) @ z) % p
    dbn = b.d(n + 1)
    pre = z.shape[1] - la.rank(np.hstack([fz, dbn]), p) + la.rank(dbn, p)
    return pre == la.rank(a.d(n + 1), p)


def is_quasi_iso(f: ChainMap) -> bool:
    return all(induced_homology_iso(f, n) for n in _union(f.source, f.target))


def is_injective(f: ChainMap) -> bool:
    p = f.source.p
    return all(la.is_injective(f.comp(n), p) for n in f.source.degrees)


def is_surjective(f: ChainMap) -> bool:
    p = f.source.p
    return all(la.is_surjective(f.comp(n), p) for n in f.target.degrees)


def classify(f: ChainMap) -> dict[str, bool]:
    cof = is_injective(f)
    fib = is_surjective(f)
    we = is_quasi_iso(f)
    return {
        "cofibration": cof,
        "fibration": fib,
        "weak_equivalence": we,
        "trivial_cofibration": cof and we,
        "trivial_fibration": fib and we,
    }


def mapping_cone(f: ChainMap) -> ChainComplex:
    """``Cone(f)_n = A_{n-1} + B_n`` with ``d(a, b) = (-da, f a + db)``."""
    a, b, p = f.source, f.target, f.source.p
    degs = _union(a, b)
    if not len(degs):
        return zero_complex(p)
    lo, hi = degs.start, degs.stop
    dims = [a.dim(n - 1) + b.dim(n) for n in range(lo, hi + 1)]
    diffs = []
    for n in range(lo + 1, hi + 1):
        a1, b0 = a.dim(n - 1), b.dim(n)
        a2, b1 = a.dim(n - 2), b.dim(n - 1)
        m = la.zeros(a2 + b1, a1 + b0)
        m[:a2, :a1] = -a.d(n - 1)
        m[a2:, :a1] = f.comp(n - 1)
        m[a2:, a1:] = b.d(n)
        diffs.append(m % p)
    return complex_(p, lo, dims, diffs)


def _cone_of_identity(a: ChainComplex) -> tuple[int, list[int], list[np.ndarray]]:
    """``Cone(id_A)_n = A_{n-1} + A_n``; returns (lo, dims, diffs) over ``lo..hi+1``."""
    p = a.p
    lo, hi = a.lo, a.hi + 1
    dims = [a.dim(n - 1) + a.dim(n) for n in range(lo, hi + 1)]
    diffs = []
    for n in range(lo + 1, hi + 1):
        a1, a0 = a.dim(n - 1), a.dim(n)
        a2 = a.dim(n - 2)
        m = la.zeros(a2 + a1, a1 + a0)
        m[:a2, :a1] = -a.d(n - 1)
        m[a2:, :a1] = la.eye(a1)
        m[a2:, a1:] = a.d(n)
        diffs.append(m % p)
    return lo, dims, diffs


def _path_of(b: ChainComplex) -> tuple[int, list[int], list[np.ndarray]]:
    """``P_n = B_n + B_{n+1}`` with ``d(x, y) = (dx, x - dy)``; acyclic, onto ``B``."""
    p = b.p
    lo, hi = b.lo - 1, b.hi
    dims = [b.dim(n) + b.dim(n + 1) for n in range(lo, hi + 1)]
    diffs = []
    for n in range(lo + 1, hi + 1):
        x0, y0 = b.dim(n), b.dim(n + 1)
        x1 = b.dim(n - 1)
        m = la.zeros(x1 + x0, x0 + y0)
        m[:x1, :x0] = b.d(n)
        m[x1:, :x0] = la.eye(x0)
        m[x1:, x0:] = -b.d(n + 1)
        diffs.append(m % p)
    return lo, dims, diffs


def _direct_sum(parts: list[tuple[int, list[int], list[np.ndarray]]], p: int):
    """Sum of complexes given as (lo, dims, diffs); returns complex and per-part offsets."""
    live = [(lo, dims, diffs) for lo, dims, diffs in parts if dims]
    lo = min(x[0] for x in live)
    hi = max(x[0] + len(x[1]) - 1 for x in live)

    def dim(part, n):
        plo, pdims, _ = part
        k = n - plo
        return pdims[k] if 0 <= k < len(pdims) else 0

    def diff(part, n):
        plo, pdims, pdiffs = part
        k = n - plo
        if 1 <= k < len(pdims):
            return pdiffs[k - 1]
        return la.zeros(dim(part, n - 1), dim(part, n))

    offsets = {n: [] for n in range(lo, hi + 1)}
    dims = []
    for n in range(lo, hi + 1):
        off = 0
        for part in parts:
            offsets[n].append(off)
            off += dim(part, n) if part[1] else 0
        dims.append(off)
    diffs = []
    for n in range(lo + 1, hi + 1):
        diffs.append(_block_diag([diff(part, n) if part[1] else la.zeros(0, 0) for part in parts], dims[n - 1 - lo], dims[n - lo]))
    return complex_(p, lo, dims, diffs), offsets, (lo, dims)


def factorize(f: ChainMap, kind: str) -> tuple[ChainMap, ChainMap]:
    """Factor ``f`` as cofibration-then-trivial-fibration or the reverse."""
    cat = ChainComplexes(f.source.p)
    a, b, p = f.source, f.target, f.source.p
    fl = classify(f)
    if kind == COFIB_TRIVFIB:
        if fl["cofibration"]:
            return f, cat.identity(b)
        if fl["trivial_fibration"]:
            return cat.identity(a), f
        lo_c, dims_c, diffs_c = _cone_of_identity(a)
        parts = [(b.lo, list(b.dims), list(b.diffs)), (lo_c, dims_c, diffs_c)]
        z, offs, (zlo, zdims) = _direct_sum(parts, p)
        # Z_n = B_n + A_{n-1} + A_n
        i_comps, q_comps = {}, {}
        for n in z.degrees:
            zn = z.dim(n)
            ob, oc = offs[n]
            if a.dim(n):
                m = la.zeros(zn, a.dim(n))
                m[ob:ob + b.dim(n), :] = f.comp(n)
                m[oc + a.dim(n - 1):oc + a.dim(n - 1) + a.dim(n), :] = la.eye(a.dim(n))
                i_comps[n] = m
            if b.dim(n):
                m = la.zeros(b.dim(n), zn)
                m[:, ob:ob + b.dim(n)] = la.eye(b.dim(n))
                q_comps[n] = m
        return chain_map(a, z, i_comps), chain_map(z, b, q_comps)
    if kind == TRIVCOF_FIB:
        if fl["trivial_cofibration"]:
            return f, cat.identity(b)
        if fl["fibration"]:
            return cat.identity(a), f
        lo_p, dims_p, diffs_p = _path_of(b)
        parts = [(a.lo, list(a.dims), list(a.diffs)), (lo_p, dims_p, diffs_p)]
        z, offs, _ = _direct_sum(parts, p)
        # Z_n = A_n + B_n + B_{n+1}
        i_comps, q_comps = {}, {}
        for n in z.degrees:
            zn = z.dim(n)
            oa, op_ = offs[n]
            if a.dim(n):
                m = la.zeros(zn, a.dim(n))
                m[oa:oa + a.dim(n), :] = la.eye(a.dim(n))
                i_comps[n] = m
            if b.dim(n):
                m = la.zeros(b.dim(n), zn)
                m[:, oa:oa + a.dim(n)] = f.comp(n)
                m[:, op_:op_ + b.dim(n)] = la.eye(b.dim(n))
                q_comps[n] = m
        return chain_map(a, z, i_comps), chain_map(z, b, q_comps)
    raise ValueError(f"unknown factorization kind {kind!r}")
