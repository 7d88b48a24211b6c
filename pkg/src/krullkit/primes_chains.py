"""Idealistic primes and chains in a finite distributive lattice.

An idealistic prime ``(J; U)`` partially specifies a prime ideal: the
elements of ``J`` are meant to lie in it and those of ``U`` outside it.  A
chain of them specifies an increasing chain of primes.

Chain collapse is decided through the ladder

    x1 & U0 <= J0,   x2 & U1 <= J1 | x1,   ...,   Ul <= Jl | xl

(writing ``U`` for the meet of ``U`` and ``J`` for the join of ``J``).
Working from the top down, each ``x`` is taken as small as possible with the
co-Heyting difference.  A smaller ``x_i`` only weakens the constraint above
it, so this greedy choice is complete.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from .finlat import FinLattice


@dataclass(frozen=True)
class IdealisticPrime:
    J: frozenset
    U: frozenset

    @classmethod
    def of(cls, J: Iterable[int] = (), U: Iterable[int] = ()) -> IdealisticPrime:
        return cls(frozenset(J), frozenset(U))


@dataclass(frozen=True)
class IdealisticChain:
    levels: tuple[IdealisticPrime, ...]

    def __post_init__(self):
        if not self.levels:
            raise ValueError("an idealistic chain has at least one level")

    @classmethod
    def of(cls, *levels: tuple[Iterable[int], Iterable[int]] | IdealisticPrime) -> IdealisticChain:
        return cls(tuple(lv if isinstance(lv, IdealisticPrime) else IdealisticPrime.of(*lv) for lv in levels))

    @property
    def length(self) -> int:
        """The ``l`` of a chain with ``l + 1`` levels."""
        return len(self.levels) - 1

    def __len__(self) -> int:
        return len(self.levels)

    def add_j(self, i: int, *xs: int) -> IdealisticChain:
        lv = self.levels[i]
        return self._replace(i, IdealisticPrime(lv.J | set(xs), lv.U))

    def add_u(self, i: int, *xs: int) -> IdealisticChain:
        lv = self.levels[i]
        return self._replace(i, IdealisticPrime(lv.J, lv.U | set(xs)))

    def _replace(self, i: int, level: IdealisticPrime) -> IdealisticChain:
        return IdealisticChain(self.levels[:i] + (level,) + self.levels[i + 1 :])


@dataclass(frozen=True)
class ChainWitness:
    """Elements ``x1..xl`` solving the collapse ladder of a chain."""

    xs: tuple[int, ...]

    def verify(self, lattice: FinLattice, chain: IdealisticChain) -> bool:
        us = [lattice.meet_all(lv.U) for lv in chain.levels]
        js = [lattice.join_all(lv.J) for lv in chain.levels]
        return ladder_holds(lattice, us, js, self.xs)


def ladder_holds(lattice: FinLattice, us: Sequence[int], js: Sequence[int], xs: Sequence[int]) -> bool:
    """Check ``x_{i+1} & u_i <= j_i | x_i`` for every level (with ``x_0 = 0``, ``x_{l+1} = 1``)."""
    if len(xs) != len(us) - 1:
        return False
    full = (0, *xs, lattice.top)
    return all(lattice.leq(full[i + 1] & us[i], js[i] | full[i]) for i in range(len(us)))


def greedy_ladder(lattice: FinLattice, us: Sequence[int], js: Sequence[int]) -> tuple[int, ...] | None:
    """Least solution ``x1..xl`` of the ladder, or ``None`` when there is none."""
    ell = len(us) - 1
    xs = [0] * ell
    upper = lattice.top
    for i in range(ell, 0, -1):
        upper = lattice.diff(upper & us[i], js[i])
        xs[i - 1] = upper
    if lattice.leq(upper & us[0], js[0]):
        return tuple(xs)
    return None


def exhaustive_ladder(lattice: FinLattice, us: Sequence[int], js: Sequence[int]) -> tuple[int, ...] | None:
    """Brute-force search over all candidate tuples (cross-check for the greedy path)."""
    elems = lattice.elements()
    for xs in itertools.product(elems, repeat=len(us) - 1):
        if ladder_holds(lattice, us, js, xs):
            return xs
    return None


def _ladder_data(lattice: FinLattice, chain: IdealisticChain) -> tuple[list[int], list[int]]:
    for lv in chain.levels:
        for x in lv.J | lv.U:
            lattice.check(x)
    us = [lattice.meet_all(lv.U) for lv in chain.levels]
    js = [lattice.join_all(lv.J) for lv in chain.levels]
    return us, js


def quotient_leq(lattice: FinLattice, J: Iterable[int], U: Iterable[int], a: int, b: int) -> bool:
    """``a <= b`` in the quotient forcing ``J`` to 0 and ``U`` to 1."""
    return lattice.leq(a & lattice.meet_all(U), b | lattice.join_all(J))


def proi_collapses(lattice: FinLattice, prime: IdealisticPrime) -> bool:
    return lattice.leq(lattice.meet_all(prime.U), lattice.join_all(prime.J))


@dataclass(frozen=True)
class Saturation:
    ideal: frozenset
    filter: frozenset


def saturate_proi(lattice: FinLattice, prime: IdealisticPrime) -> Saturation:
    """Saturate a single idealistic prime by testing each element."""
    ideal = frozenset(x for x in lattice.elements() if proi_collapses(lattice, IdealisticPrime(prime.J, prime.U | {x})))
    filt = frozenset(x for x in lattice.elements() if proi_collapses(lattice, IdealisticPrime(prime.J | {x}, prime.U)))
    return Saturation(ideal, filt)


def saturate_proi_principal(lattice: FinLattice, prime: IdealisticPrime) -> tuple[int, int]:
    """Generators ``(i, f)`` of the saturation: ideal ``<= i`` and filter ``>= f``."""
    u = lattice.meet_all(prime.U)
    j = lattice.join_all(prime.J)
    return lattice.impl(u, j), lattice.diff(u, j)


def chain_collapses(lattice: FinLattice, chain: IdealisticChain) -> ChainWitness | None:
    us, js = _ladder_data(lattice, chain)
    xs = greedy_ladder(lattice, us, js)
    return None if xs is None else ChainWitness(xs)


def chain_collapses_exhaustive(lattice: FinLattice, chain: IdealisticChain) -> ChainWitness | None:
    us, js = _ladder_data(lattice, chain)
    xs = exhaustive_ladder(lattice, us, js)
    return None if xs is None else ChainWitness(xs)


def trivial_chain(lattice: FinLattice, length: int) -> IdealisticChain:
    everything = frozenset(lattice.elements())
    return IdealisticChain(tuple(IdealisticPrime(everything, everything) for _ in range(length + 1)))


def saturate_chain(lattice: FinLattice, chain: IdealisticChain) -> IdealisticChain:
    """Least saturated chain refining ``chain``.

    An element joins ``J_i`` when putting it in ``U_i`` collapses the chain,
    and joins ``U_i`` when putting it in ``J_i`` does.  Levels are revisited
    until nothing changes.
    """
    if chain_collapses(lattice, chain) is not None:
        return trivial_chain(lattice, chain.length)
    elems = lattice.elements()
    current = chain
    changed = True
    while changed:
        changed = False
        for i in range(len(current)):
            level = current.levels[i]
            new_j = {x for x in elems if x not in level.J and chain_collapses(lattice, current.add_u(i, x)) is not None}
            new_u = {x for x in elems if x not in level.U and chain_collapses(lattice, current.add_j(i, x)) is not None}
            if new_j or new_u:
                current = current._replace(i, IdealisticPrime(level.J | new_j, level.U | new_u))
                changed = True
    return current


def simultaneous_collapse_check(lattice: FinLattice, chain: IdealisticChain, i: int, x: int) -> bool:
    """Whether this instance obeys: both augmented chains collapse implies ``chain`` collapses."""
    both = chain_collapses(lattice, chain.add_j(i, x)) is not None and chain_collapses(lattice, chain.add_u(i, x)) is not None
    return not both or chain_collapses(lattice, chain) is not None


def refining_prime_chain(lattice: FinLattice, chain: IdealisticChain) -> tuple[int, ...] | None:
    """Brute force: points ``p_0 <= ... <= p_l`` whose primes refine ``chain``.

    The prime of point ``p`` is ``{z : p not in z}``; it contains ``J`` when
    ``p`` is outside the join of ``J`` and misses ``U`` when ``p`` lies in the
    meet of ``U``.
    """
    n = lattice.base.size
    base = lattice.base
    for pts in itertools.product(range(n), repeat=len(chain)):
        if not all(base.leq(pts[k], pts[k + 1]) for k in range(len(pts) - 1)):
            continue
        ok = True
        for p, lv in zip(pts, chain.levels):
            if any(x >> p & 1 for x in lv.J) or not all(u >> p & 1 for u in lv.U):
                ok = False
                break
        if ok:
            return pts
    return None
