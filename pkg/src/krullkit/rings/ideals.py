"""Finitely generated ideals, radical membership and saturation.

Over ``ZZ`` and ``ZZmod(n)`` every ideal is principal and everything is gcd
arithmetic.  Over polynomial kinds membership goes through a Groebner basis,
radical membership through Rabinowitsch (``f`` is in the radical of ``I`` iff
``1`` is in ``I + <1 - t*f>``) and saturation by eliminating ``t`` from
``I + <1 - t*g>``.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from functools import cached_property

from ..errors import InputError
from .core import CompRing, Integers, IntegersMod, Polynomials, ext_gcd, gcd_all
from .groebner import GroebnerBasis, groebner, lift
from .poly import Poly, PolyRing


def strip_shared_primes(g: int, b: int) -> int:
    """Divide out of ``g`` every prime that also divides ``b`` (``g != 0``)."""
    g = abs(g)
    while True:
        d = math.gcd(g, b)
        if d <= 1:
            return g
        g //= d


def _fresh(names: Sequence[str]) -> str:
    t = "_t"
    while t in names:
        t = "_" + t
    return t


class FGIdeal:
    """The ideal of ``ring`` generated by ``generators``; immutable."""

    def __init__(self, ring: CompRing, generators: Sequence = ()):
        self.ring = ring
        self.generators = tuple(ring.convert(g) for g in generators)

    def __repr__(self) -> str:
        return f"<{', '.join(self.ring.fmt(g) for g in self.generators)}> in {self.ring.spec()}"

    # principal kinds

    @cached_property
    def principal(self) -> int:
        """The nonnegative generator (a divisor of ``n`` over ``ZZmod(n)``)."""
        if isinstance(self.ring, Integers):
            return gcd_all(self.generators)
        if isinstance(self.ring, IntegersMod):
            return gcd_all([*self.generators, self.ring.n])
        raise InputError("only ZZ and ZZmod ideals are principal here")

    # polynomial kinds

    def _poly_gens(self) -> list[Poly]:
        return [g for g in (*self.generators, *self.ring.relations) if g]

    @cached_property
    def groebner(self) -> GroebnerBasis:
        ring = self.ring
        if not isinstance(ring, Polynomials):
            raise InputError("Groebner bases need a polynomial ring")
        return groebner(self._poly_gens(), ring.R) if self._poly_gens() else GroebnerBasis(ring.R, ())

    # queries

    def contains(self, f) -> bool:
        ring = self.ring
        f = ring.convert(f)
        if isinstance(ring, Integers):
            d = self.principal
            return f == 0 if d == 0 else f % d == 0
        if isinstance(ring, IntegersMod):
            return f % self.principal == 0
        return self.groebner.reduce(f).is_zero()

    def contains_one(self) -> bool:
        return self.contains(self.ring.one)

    def normal_form(self, f):
        f = self.ring.convert(f)
        if isinstance(self.ring, Integers):
            d = self.principal
            return f if d == 0 else f % d
        if isinstance(self.ring, IntegersMod):
            return f % self.principal
        return self.groebner.reduce(f)

    def plus(self, more: Sequence) -> FGIdeal:
        return FGIdeal(self.ring, [*self.generators, *more])

    def same_as(self, other: FGIdeal) -> bool:
        return all(other.contains(g) for g in self.generators) and all(self.contains(g) for g in other.generators)

    def saturate(self, b) -> FGIdeal:
        """``(I : b^oo)``."""
        ring = self.ring
        b = ring.convert(b)
        if isinstance(ring, (Integers, IntegersMod)):
            d = self.principal
            if isinstance(ring, Integers) and d == 0:
                return FGIdeal(ring, [1 if b == 0 else 0])
            return FGIdeal(ring, [strip_shared_primes(d, b)])
        if ring.is_zero(b):
            return FGIdeal(ring, [ring.one])
        names = ring.variables
        t = _fresh(names)
        E = PolyRing(ring.field, (t, *names), "block1")
        up = lambda p: Poly(E, {(0, *e): c for e, c in p.terms.items()})  # noqa: E731
        gens = [up(g) for g in self._poly_gens()]
        gens.append(E.one - E.var(0) * up(b))
        G = groebner(gens, E)
        kept = [Poly(ring.R, {e[1:]: c for e, c in g.terms.items()}) for g in G.basis if all(e[0] == 0 for e in g.terms)]
        return FGIdeal(ring, [ring.check(k) for k in kept])

    def radical_contains(self, f) -> bool:
        ring = self.ring
        f = ring.convert(f)
        if isinstance(ring, Integers):
            d = self.principal
            if d == 0:
                return f == 0
            return strip_shared_primes(d, f) == 1
        if isinstance(ring, IntegersMod):
            return strip_shared_primes(self.principal, f) == 1
        names = ring.variables
        t = _fresh(names)
        E = PolyRing(ring.field, (*names, t), "grevlex")
        up = lambda p: Poly(E, {(*e, 0): c for e, c in p.terms.items()})  # noqa: E731
        gens = [up(g) for g in self._poly_gens()]
        gens.append(E.one - E.var(len(names)) * up(f))
        return groebner(gens, E).is_unit()

    def cofactors(self, f) -> list | None:
        """``c`` with ``f == sum(c_k * generators_k)`` in the ring, or ``None``."""
        ring = self.ring
        f = ring.convert(f)
        gens = self.generators
        if isinstance(ring, (Integers, IntegersMod)):
            mod = ring.n if isinstance(ring, IntegersMod) else 0
            cs, g = _ext_gcd_many([*gens, mod] if mod else list(gens))
            if g == 0:  # only over ZZ with all generators zero
                return [0] * len(gens) if f == 0 else None
            if f % g:
                return None
            q = f // g
            return [ring.convert(c * q) for c in cs[: len(gens)]]
        all_gens = [*gens, *ring.relations]
        cs = lift(f, [ring.R.coerce(g) for g in all_gens])
        if cs is None:
            return None
        return [ring.check(c) for c in cs[: len(gens)]]


def _ext_gcd_many(xs: Sequence[int]) -> tuple[list[int], int]:
    """Cofactors ``c`` and ``g = gcd(xs) >= 0`` with ``sum(c_k * x_k) = g``."""
    cs = [0] * len(xs)
    g = 0
    for k, x in enumerate(xs):
        g2, a, b = ext_gcd(g, x)
        cs = [c * a for c in cs]
        cs[k] = b
        g = g2
    return cs, g


def ideal(ring: CompRing, generators: Sequence = ()) -> FGIdeal:
    return FGIdeal(ring, generators)


def radical_member(f, I: FGIdeal) -> bool:
    return I.radical_contains(f)


def saturation(I: FGIdeal, g) -> FGIdeal:
    return I.saturate(g)


def zar_entails(ring: CompRing, U: Sequence, J: Sequence) -> bool:
    """``prod(U)`` lies in the radical of ``<J>``: the entailment of the Zariski lattice."""
    return FGIdeal(ring, J).radical_contains(ring.product(ring.convert(u) for u in U))


class ZarElement:
    """The radical of the ideal generated by ``generators``."""

    def __init__(self, ring: CompRing, generators: Sequence = ()):
        self.ring = ring
        self.generators = tuple(ring.convert(g) for g in generators)

    def __le__(self, other: ZarElement) -> bool:
        I = FGIdeal(self.ring, other.generators)
        return all(I.radical_contains(g) for g in self.generators)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ZarElement) and self <= other and other <= self

    __hash__ = None  # equality is not structural

    def join(self, other: ZarElement) -> ZarElement:
        return ZarElement(self.ring, self.generators + other.generators)

    def meet(self, other: ZarElement) -> ZarElement:
        ring = self.ring
        return ZarElement(ring, [ring.mul(a, b) for a in self.generators for b in other.generators])


def is_comaximal(ring: CompRing, ss: Sequence) -> list | None:
    """Cofactors ``c`` with ``sum(c_i * s_i) == 1``, or ``None`` when ``<s> != <1>``."""
    ss = [ring.convert(s) for s in ss]
    if isinstance(ring, Integers):
        cs, g = _ext_gcd_many(ss)
        if g != 1:
            return None
        if len(ss) == 2 and ss[1]:
            m = abs(ss[1])
            c1 = cs[0] % m
            cs = [c1, (1 - c1 * ss[0]) // ss[1]]
        return cs
    cs = FGIdeal(ring, ss).cofactors(ring.one)
    return cs
