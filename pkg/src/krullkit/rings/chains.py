"""Chains of idealistic primes in a ring and their collapse.

A chain ``(J_0;U_0), ..., (J_l;U_l)`` collapses when

    u_0 (u_1 ( ... (u_l + j_l) ... ) + j_1) + j_0 = 0

for some ``u_i`` in the monoid generated by ``U_i`` and ``j_i`` in ``<J_i>``.
Every element of that monoid divides a power of ``prod(U_i)``, so it is
enough to saturate by the single product.  Reading the identity from the
outside in gives the decision procedure

    C_0 = <J_0> : u_0^oo,   C_i = (C_{i-1} + <J_i>) : u_i^oo,   collapse iff 1 in C_l.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

from .core import CompRing
from .ideals import FGIdeal


@dataclass(frozen=True)
class RingChain:
    levels: tuple[tuple[tuple, tuple], ...]

    @classmethod
    def of(cls, ring: CompRing, levels: Sequence[tuple[Sequence, Sequence]]) -> RingChain:
        return cls(tuple((tuple(ring.convert(j) for j in J), tuple(ring.convert(u) for u in U)) for J, U in levels))

    @property
    def length(self) -> int:
        return len(self.levels) - 1


def elementary_ring_chain(ring: CompRing, xs: Sequence) -> RingChain:
    """``(;x_1), (x_1;x_2), ..., (x_l;)`` for the sequence ``xs``."""
    xs = [ring.convert(x) for x in xs]
    if not xs:
        return RingChain((((), ()),))
    levels = [((), (xs[0],))]
    for i in range(1, len(xs)):
        levels.append(((xs[i - 1],), (xs[i],)))
    levels.append(((xs[-1],), ()))
    return RingChain(tuple(levels))


def boundary_ideals(ring: CompRing, chain: RingChain) -> list[FGIdeal]:
    """The ideals ``C_0, ..., C_l`` above."""
    out = []
    current = None
    for J, U in chain.levels:
        base = FGIdeal(ring, J) if current is None else current.plus(J)
        current = base.saturate(ring.product(U)) if U else base
        out.append(current)
    return out


def chain_collapses_ring(ring: CompRing, chain: RingChain) -> bool:
    return boundary_ideals(ring, chain)[-1].contains_one()


def is_singular(ring: CompRing, xs: Sequence) -> bool:
    return chain_collapses_ring(ring, elementary_ring_chain(ring, xs))
