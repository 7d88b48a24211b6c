"""Constructive Krull dimension of finite distributive lattices.

``dim L <= l`` holds when every elementary chain ``((0;x0),(x0;x1),...,(xl;1))``
collapses.  By the generator lemma it is enough to let the ``x_i`` range over
join-irreducibles.  The Boolean envelope and its difference normal forms
give a second characterization, computed by :func:`dim_espanol`.
"""

from __future__ import annotations

import itertools
from collections.abc import Sequence
from dataclasses import dataclass, field

from .errors import ContractError, ResourceError
from .finlat import FinLattice
from .primes_chains import IdealisticChain, IdealisticPrime

DEFAULT_ENVELOPE_CAP = 1 << 12


@dataclass(frozen=True)
class ComplementaryPair:
    """Sequences ``xs`` and ``ys`` obeying the complementarity ladder.

    ``1 <= y_l | x_l``,  ``y_i & x_i <= y_{i-1} | x_{i-1}``,  ``y_0 & x_0 = 0``.
    """

    xs: tuple[int, ...]
    ys: tuple[int, ...]

    def verify(self, lattice: FinLattice) -> bool:
        xs, ys = self.xs, self.ys
        if len(xs) != len(ys) or not xs:
            return False
        if not lattice.leq(lattice.top, ys[-1] | xs[-1]):
            return False
        if any(not lattice.leq(ys[i] & xs[i], ys[i - 1] | xs[i - 1]) for i in range(1, len(xs))):
            return False
        return ys[0] & xs[0] == 0


def elementary_chain(xs: Sequence[int]) -> IdealisticChain:
    """The chain ``((0;x0), (x0;x1), ..., (xl;1))``; the 0 and 1 are left implicit."""
    if not xs:
        raise ContractError("elementary_chain needs at least one element")
    levels = [IdealisticPrime.of((), (xs[0],))]
    levels += [IdealisticPrime.of((xs[i - 1],), (xs[i],)) for i in range(1, len(xs))]
    levels.append(IdealisticPrime.of((xs[-1],), ()))
    return IdealisticChain(tuple(levels))


def complement_sequence(lattice: FinLattice, xs: Sequence[int]) -> tuple[int, ...] | None:
    """Least ``ys`` complementary to ``xs``, or ``None`` if none exists."""
    y = lattice.diff(lattice.top, xs[-1])
    ys = [y]
    for i in range(len(xs) - 1, 0, -1):
        y = lattice.diff(y & xs[i], xs[i - 1])
        ys.append(y)
    if y & xs[0]:
        return None
    return tuple(reversed(ys))


@dataclass
class DimResult:
    holds: bool
    ell: int
    witnesses: list[ComplementaryPair] = field(default_factory=list)
    counterexample: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.holds


def _candidates(lattice: FinLattice, generators: str) -> list[int]:
    if generators == "irreducibles":
        return sorted(set(lattice.irreducibles()))
    if generators == "all":
        return list(lattice.elements())
    raise ValueError(f"unknown generator set {generators!r}")


def dim_leq(
    lattice: FinLattice,
    ell: int,
    generators: str = "irreducibles",
    increasing: bool = False,
    witnesses: bool = True,
) -> DimResult:
    """Decide ``dim lattice <= ell``.

    Tuples range over join-irreducibles (or all elements with
    ``generators="all"``); ``increasing`` keeps only tuples ``x0 <= ... <= xl``.
    The search runs depth-first from ``x_l`` downwards so the greedy ``y``
    values are shared between tuples with a common suffix.
    """
    if ell < -1:
        raise ContractError("ell must be at least -1")
    if ell == -1:
        return DimResult(lattice.is_trivial, ell)
    cands = _candidates(lattice, generators)
    result = DimResult(True, ell)
    xs = [0] * (ell + 1)
    ys = [0] * (ell + 1)

    def rec(i: int, y_above: int, x_above: int | None) -> bool:
        for x in cands:
            if increasing and x_above is not None and not lattice.leq(x, x_above):
                continue
            xs[i] = x
            y = lattice.diff(lattice.top, x) if i == ell else lattice.diff(y_above & xs[i + 1], x)
            ys[i] = y
            if i == 0:
                if y & x:
                    result.holds = False
                    result.counterexample = tuple(xs)
                    return False
                if witnesses:
                    result.witnesses.append(ComplementaryPair(tuple(xs), tuple(ys)))
            elif not rec(i - 1, y, x):
                return False
        return True

    rec(ell, lattice.top, None)
    if not result.holds:
        result.witnesses.clear()
    return result


def dimension(lattice: FinLattice) -> int:
    """Least ``l`` with ``dim <= l``."""
    ell = -1
    while not dim_leq(lattice, ell, witnesses=False).holds:
        ell += 1
    return ell


def complementary_monotone(lattice: FinLattice, xs: Sequence[int], as_: Sequence[int]) -> tuple[int, ...]:
    """Replace ``as_`` by the increasing sequence ``b_i = a_i & a_{i+1} & ... & a_l``.

    ``xs`` must be increasing and complementary to ``as_``; the result is
    again complementary to ``xs``.
    """
    xs, as_ = tuple(xs), tuple(as_)
    if any(not lattice.leq(xs[i], xs[i + 1]) for i in range(len(xs) - 1)):
        raise ContractError("xs is not increasing")
    if not ComplementaryPair(xs, as_).verify(lattice):
        raise ContractError("the sequences are not complementary")
    bs = []
    acc = lattice.top
    for a in reversed(as_):
        acc &= a
        bs.append(acc)
    bs.reverse()
    out = tuple(bs)
    if not ComplementaryPair(xs, out).verify(lattice):
        raise AssertionError("monotone replacement lost complementarity")
    return out


# Boolean envelope


@dataclass(frozen=True)
class BooleanEnvelope:
    """The powerset of the join-irreducibles, containing the lattice as downsets."""

    lattice: FinLattice

    @property
    def top(self) -> int:
        return self.lattice.top

    def embed(self, x: int) -> int:
        return self.lattice.check(x)

    def elements(self) -> range:
        return range(self.top + 1)

    def complement(self, e: int) -> int:
        return self.top & ~e

    @staticmethod
    def difference(a: int, b: int) -> int:
        return a & ~b

    def entails(self, A, Bbar, A2, B2bar) -> bool:
        """``A, not(Bbar) |- A2, not(B2bar)`` computed inside the envelope."""
        left = self.top
        for a in A:
            left &= self.embed(a)
        for b in Bbar:
            left &= self.complement(self.embed(b))
        right = 0
        for a in A2:
            right |= self.embed(a)
        for b in B2bar:
            right |= self.complement(self.embed(b))
        return left & ~right == 0


def boolean_envelope(lattice: FinLattice) -> BooleanEnvelope:
    return BooleanEnvelope(lattice)


@dataclass(frozen=True)
class DifferenceChain:
    """A decreasing chain ``a1 >= a2 >= ...`` read as ``(a1-a2) | (a3-a4) | ...``."""

    as_: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.as_)

    def value(self) -> int:
        out = 0
        for a in reversed(self.as_):
            out = a & ~out
        return out

    def is_decreasing(self, lattice: FinLattice) -> bool:
        return all(lattice.leq(self.as_[i + 1], self.as_[i]) for i in range(len(self.as_) - 1))


class _EspanolTables:
    """Values reachable by decreasing chains of each length, with back pointers.

    ``layers[k][a]`` maps each value of a length-``k`` chain starting at ``a``
    to the start and value of its tail.  The value of ``(a, rest...)`` is
    ``a - value(rest)``.
    """

    def __init__(self, env: BooleanEnvelope, cap: int):
        lat = env.lattice
        if env.top + 1 > cap:
            raise ResourceError(f"envelope has {env.top + 1} elements, over the cap of {cap}")
        self.lattice = lat
        self.elems = lat.elements()
        self.below = {a: [b for b in self.elems if lat.leq(b, a)] for a in self.elems}
        self.layers: list[dict[int, dict[int, tuple[int, int] | None]]] = [{}]
        self.layers.append({a: {a: None} for a in self.elems})
        self.first_length = {0: 0}
        for a in self.elems:
            self.first_length.setdefault(a, 1)

    def extend(self) -> None:
        prev = self.layers[-1]
        k = len(self.layers)
        layer = {}
        for a in self.elems:
            vals: dict[int, tuple[int, int] | None] = {}
            for b in self.below[a]:
                for v in prev[b]:
                    w = a & ~v
                    if w not in vals:
                        vals[w] = (b, v)
            layer[a] = vals
            for w in vals:
                self.first_length.setdefault(w, k)
        self.layers.append(layer)

    def chain_for(self, e: int) -> DifferenceChain:
        k = self.first_length[e]
        if k == 0:
            return DifferenceChain(())
        start = next(a for a in self.elems if e in self.layers[k][a])
        out = []
        value = e
        while k >= 1:
            out.append(start)
            back = self.layers[k][start][value]
            if back is None:
                break
            start, value = back
            k -= 1
        return DifferenceChain(tuple(out))


def _tables(env: BooleanEnvelope, cap: int, until: int | None = None) -> _EspanolTables:
    tables = _EspanolTables(env, cap)
    total = env.top + 1
    while (until is None and len(tables.first_length) < total) or (until is not None and until not in tables.first_length):
        before = len(tables.first_length)
        tables.extend()
        if len(tables.layers) > total + 2 and len(tables.first_length) == before:
            raise AssertionError("difference normal forms failed to cover the envelope")
    return tables


def espanol_normal_form(env: BooleanEnvelope, e: int, cap: int = DEFAULT_ENVELOPE_CAP) -> DifferenceChain:
    """Shortest decreasing chain whose difference form equals ``e``.

    Lengths are tried in increasing order, so no shorter chain exists.
    """
    if not 0 <= e <= env.top:
        raise ContractError(f"{e} is not an element of the envelope")
    return _tables(env, cap, until=e).chain_for(e)


def normal_form_lengths(lattice: FinLattice, cap: int = DEFAULT_ENVELOPE_CAP) -> dict[int, int]:
    """Minimal normal-form length of every envelope element."""
    return dict(_tables(BooleanEnvelope(lattice), cap).first_length)


def dim_espanol(lattice: FinLattice, cap: int = DEFAULT_ENVELOPE_CAP) -> int:
    return max(normal_form_lengths(lattice, cap).values()) - 1


def espanol_brute_length(lattice: FinLattice, e: int, max_len: int) -> int | None:
    """Reference search over all decreasing chains; used to certify minimality in tests."""
    elems = lattice.elements()
    for k in range(max_len + 1):
        for chain in itertools.product(elems, repeat=k):
            dc = DifferenceChain(chain)
            if dc.is_decreasing(lattice) and dc.value() == e:
                return k
    return None


__all__ = [
    "BooleanEnvelope",
    "ComplementaryPair",
    "DifferenceChain",
    "DimResult",
    "boolean_envelope",
    "complement_sequence",
    "complementary_monotone",
    "dim_espanol",
    "dim_leq",
    "dimension",
    "elementary_chain",
    "espanol_brute_length",
    "espanol_normal_form",
    "normal_form_lengths",
]
