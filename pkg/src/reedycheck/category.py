"""The category interface shared by the concrete bases and diagram categories.

Two flavours exist. *Set-like* categories enumerate hom-sets exhaustively;
*linear* categories (over GF(p)) return a basis of each hom-space and expose
a faithful flattening of morphisms into coordinate vectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Sequence

import numpy as np

from .fincat import FiniteCategory, discrete, from_generators

DEFAULT_CAP = 10**6


class ResourceLimitError(RuntimeError):
    """An enumeration would exceed the configured cap."""


class NotAConeError(ValueError):
    """Mediating data does not form a (co)cone over the diagram."""


@dataclass
class Cone:
    """A limit (or colimit) of a finite diagram, with its universal arrow.

    ``legs[s]`` goes apex -> D(s) for limits and D(s) -> apex for colimits.
    ``mediate(legs, other)`` returns the unique comparison map for another
    (co)cone with vertex ``other``; ``other`` may be omitted when ``legs`` is
    non-empty.
    """

    apex: Any
    legs: list
    _mediate: Callable[[Sequence, Any], Any]

    def mediate(self, legs: Sequence, other=None):
        return self._mediate(list(legs), other)


_SPAN = from_generators(3, [(0, 1), (0, 2)], lambda g, f: -1)
_COSPAN = from_generators(3, [(1, 0), (2, 0)], lambda g, f: -1)
_PARALLEL = from_generators(2, [(0, 1), (0, 1)], lambda g, f: -1)


def _id_arrows(cat, shape: FiniteCategory, objs, arrs):
    out = list(arrs)
    for i in shape.objects:
        out[shape.identities[i]] = cat.identity(objs[i])
    return out


class Category:
    linear = False
    cap = DEFAULT_CAP

    # -- required --------------------------------------------------------------
    def identity(self, a): raise NotImplementedError
    def compose(self, g, f): raise NotImplementedError
    def equal(self, f, g) -> bool: raise NotImplementedError
    def source(self, f): raise NotImplementedError
    def target(self, f): raise NotImplementedError
    def hom(self, a, b) -> list: raise NotImplementedError
    def limit(self, shape: FiniteCategory, objs: Sequence, arrs: Sequence) -> Cone: raise NotImplementedError
    def colimit(self, shape: FiniteCategory, objs: Sequence, arrs: Sequence) -> Cone: raise NotImplementedError
    def inverse(self, f): raise NotImplementedError
    def same_object(self, a, b) -> bool: raise NotImplementedError
    def describe(self, f) -> Any: return repr(f)
    def is_morphism(self, f) -> bool:
        """Structural validity of ``f`` (chain map, naturality); trivially true by default."""
        return True

    # -- derived ---------------------------------------------------------------
    def hom_count(self, a, b) -> int:
        n = len(self.hom(a, b))
        return self.p ** n if self.linear else n

    def comp(self, *fs):
        """``comp(h, g, f) == h . g . f``."""
        out = fs[-1]
        for g in reversed(fs[:-1]):
            out = self.compose(g, out)
        return out

    def is_identity(self, f) -> bool:
        return self.same_object(self.source(f), self.target(f)) and self.equal(f, self.identity(self.source(f)))

    def product(self, objs: Sequence) -> Cone:
        n = len(objs)
        shape = discrete(n)
        return self.limit(shape, list(objs), [self.identity(o) for o in objs])

    def coproduct(self, objs: Sequence) -> Cone:
        shape = discrete(len(objs))
        return self.colimit(shape, list(objs), [self.identity(o) for o in objs])

    def terminal(self):
        return self.product([]).apex

    def initial(self):
        return self.coproduct([]).apex

    def initial_map(self, a):
        return self.coproduct([]).mediate([], a)

    def terminal_map(self, a):
        return self.product([]).mediate([], a)

    def pushout(self, f, g) -> Cone:
        """Pushout of ``B <-f- A -g-> C``; legs are (A, B, C)."""
        a = self.source(f)
        objs = [a, self.target(f), self.target(g)]
        arrs = _id_arrows(self, _SPAN, objs, [None] * _SPAN.n_arrows)
        arrs[3], arrs[4] = f, g
        return self.colimit(_SPAN, objs, arrs)

    def pullback(self, f, g) -> Cone:
        """Pullback of ``B -f-> A <-g- C``; legs are (A, B, C)."""
        a = self.target(f)
        objs = [a, self.source(f), self.source(g)]
        arrs = _id_arrows(self, _COSPAN, objs, [None] * _COSPAN.n_arrows)
        arrs[3], arrs[4] = f, g
        return self.limit(_COSPAN, objs, arrs)

    def equalizer(self, f, g) -> Cone:
        objs = [self.source(f), self.target(f)]
        arrs = _id_arrows(self, _PARALLEL, objs, [None] * 4)
        arrs[2], arrs[3] = f, g
        return self.limit(_PARALLEL, objs, arrs)

    def coequalizer(self, f, g) -> Cone:
        objs = [self.source(f), self.target(f)]
        arrs = _id_arrows(self, _PARALLEL, objs, [None] * 4)
        arrs[2], arrs[3] = f, g
        return self.colimit(_PARALLEL, objs, arrs)

    def is_iso(self, f) -> bool:
        return self.inverse(f) is not None

    # -- linear structure (linear categories only) -------------------------------
    p: int = 0

    def flatten(self, f) -> np.ndarray: raise NotImplementedError
    def unflatten(self, vec: np.ndarray, a, b): raise NotImplementedError
    def flat_len(self, a, b) -> int: raise NotImplementedError

    def add(self, f, g):
        return self.unflatten((self.flatten(f) + self.flatten(g)) % self.p, self.source(f), self.target(f))

    def scale(self, c: int, f):
        return self.unflatten((c * self.flatten(f)) % self.p, self.source(f), self.target(f))

    def zero(self, a, b):
        return self.unflatten(np.zeros(self.flat_len(a, b), dtype=np.int64), a, b)

    def combine(self, coeffs, basis: Sequence, a, b):
        vec = np.zeros(self.flat_len(a, b), dtype=np.int64)
        for c, f in zip(coeffs, basis):
            if c:
                vec = vec + int(c) * self.flatten(f)
        return self.unflatten(vec % self.p, a, b)


class IdCache:
    """Small LRU keyed by object identity; keeps the keys alive while cached."""

    def __init__(self, maxsize: int = 512):
        from collections import OrderedDict

        self.maxsize = maxsize
        self._data: "OrderedDict[tuple, tuple]" = OrderedDict()

    def get(self, objs: tuple, build: Callable[[], Any]):
        key = tuple(id(o) for o in objs)
        hit = self._data.get(key)
        if hit is not None:
            self._data.move_to_end(key)
            return hit[1]
        value = build()
        self._data[key] = (objs, value)
        if len(self._data) > self.maxsize:
            self._data.popitem(last=False)
        return value
