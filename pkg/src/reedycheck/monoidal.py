"""Closed symmetric monoidal bases and closed modules over them.

A closed module supplies an action ``m (x) c``, a power ``c^m`` and an
enriched hom ``map(c, d)`` together with the two transpositions

    C(m (x) c, d)  ~  M(m, map(c, d))  ~  C(c, d^m).

Everything else here (copowers of the unit, maps out of them, the power
unitor) is derived from those primitives, so it works verbatim for the base
acting on itself and for pointwise actions on diagram categories.
"""

from __future__ import annotations

from typing import Sequence

from .category import Category, Cone


class ClosedMonoidal(Category):
    """A bicomplete closed symmetric monoidal category."""

    def unit(self): raise NotImplementedError
    def tensor(self, a, b): raise NotImplementedError
    def tensor_mor(self, f, g): raise NotImplementedError
    def ihom(self, a, b): raise NotImplementedError
    def ihom_mor(self, f, g):
        """``[a, b] -> [a', b']`` for ``f: a' -> a`` and ``g: b -> b'``."""
        raise NotImplementedError
    def curry(self, phi, a, b, c):
        """``a (x) b -> c``  to  ``a -> [b, c]``."""
        raise NotImplementedError
    def uncurry(self, psi, a, b, c): raise NotImplementedError
    def assoc(self, a, b, c):
        """``(a (x) b) (x) c -> a (x) (b (x) c)``."""
        raise NotImplementedError
    def assoc_inv(self, a, b, c): raise NotImplementedError
    def lunit(self, a): raise NotImplementedError
    def lunit_inv(self, a): raise NotImplementedError
    def runit(self, a): raise NotImplementedError
    def runit_inv(self, a): raise NotImplementedError
    def sym(self, a, b): raise NotImplementedError

    def unit_copower(self, n: int) -> Cone:
        """Coproduct of ``n`` copies of the unit, with its injections."""
        k = self.unit()
        return self.coproduct([k] * n)

    def points(self, a) -> list:
        """Generators of ``M(k, a)``: the underlying points of ``a``."""
        return self.hom(self.unit(), a)


class ClosedModule:
    """A closed module ``C`` over a closed symmetric monoidal ``M``."""

    base: ClosedMonoidal
    cat: Category

    def act(self, m, c): raise NotImplementedError
    def act_mor(self, f, g): raise NotImplementedError
    def power(self, c, m): raise NotImplementedError
    def power_mor(self, g, f):
        """``c^m -> c'^m'`` for ``g: c -> c'`` and ``f: m' -> m``."""
        raise NotImplementedError
    def mapc(self, c, d): raise NotImplementedError
    def mapc_mor(self, f, g):
        """``map(c, d) -> map(c', d')`` for ``f: c' -> c`` and ``g: d -> d'``."""
        raise NotImplementedError
    def to_map(self, phi, m, c, d): raise NotImplementedError
    def from_map(self, psi, m, c, d): raise NotImplementedError
    def to_power(self, phi, m, c, d): raise NotImplementedError
    def from_power(self, chi, m, c, d): raise NotImplementedError
    def lunit(self, c): raise NotImplementedError
    def lunit_inv(self, c): raise NotImplementedError
    def assoc(self, m, n, c):
        """``(m (x) n) (x) c -> m (x) (n (x) c)``."""
        raise NotImplementedError
    def assoc_inv(self, m, n, c): raise NotImplementedError

    # -- derived --------------------------------------------------------------
    def copower_out(self, n: int, c, d, maps: Sequence):
        """The map ``(k + ... + k) (x) c -> d`` that is ``maps[f]`` on summand ``f``."""
        M = self.base
        k = M.unit()
        cop = M.unit_copower(n)
        mc = self.mapc(c, d)
        lu = self.lunit(c)
        legs = [self.to_map(self.cat.compose(g, lu), k, c, d) for g in maps]
        psi = cop.mediate(legs, mc)
        return self.from_map(psi, cop.apex, c, d)

    def copower_in(self, n: int, c, f: int):
        """Injection of ``c`` as summand ``f`` of ``(k + ... + k) (x) c``."""
        M = self.base
        cop = M.unit_copower(n)
        return self.cat.compose(self.act_mor(cop.legs[f], self.cat.identity(c)), self.lunit_inv(c))

    def power_unit(self, c):
        """The canonical isomorphism ``c^k -> c``."""
        k = self.base.unit()
        ck = self.power(c, k)
        ev = self.from_power(self.cat.identity(ck), k, ck, c)
        return self.cat.compose(ev, self.lunit_inv(ck))

    def power_unit_inv(self, c):
        k = self.base.unit()
        return self.to_power(self.lunit(c), k, c, c)


class SelfModule(ClosedModule):
    """``M`` acting on itself: action = tensor, power and map = internal hom."""

    def __init__(self, base: ClosedMonoidal):
        self.base = base
        self.cat = base

    def act(self, m, c):
        return self.base.tensor(m, c)

    def act_mor(self, f, g):
        return self.base.tensor_mor(f, g)

    def power(self, c, m):
        return self.base.ihom(m, c)

    def power_mor(self, g, f):
        return self.base.ihom_mor(f, g)

    def mapc(self, c, d):
        return self.base.ihom(c, d)

    def mapc_mor(self, f, g):
        return self.base.ihom_mor(f, g)

    def to_map(self, phi, m, c, d):
        return self.base.curry(phi, m, c, d)

    def from_map(self, psi, m, c, d):
        return self.base.uncurry(psi, m, c, d)

    def to_power(self, phi, m, c, d):
        M = self.base
        return M.curry(M.compose(phi, M.sym(c, m)), c, m, d)

    def from_power(self, chi, m, c, d):
        M = self.base
        return M.compose(M.uncurry(chi, c, m, d), M.sym(m, c))

    def lunit(self, c):
        return self.base.lunit(c)

    def lunit_inv(self, c):
        return self.base.lunit_inv(c)

    def assoc(self, m, n, c):
        return self.base.assoc(m, n, c)

    def assoc_inv(self, m, n, c):
        return self.base.assoc_inv(m, n, c)
