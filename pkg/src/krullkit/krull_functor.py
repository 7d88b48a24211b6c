"""Krull lattices ``Kr_l(T)``.

``Kr_l(T)`` is generated by ``l + 1`` copies ``phi_0 >= ... >= phi_l`` of ``T``.
A sequent ``phi_0(A_0), ..., phi_l(A_l) |- phi_0(B_0), ..., phi_l(B_l)`` holds
iff there are ``u_1..u_l`` in ``T`` with

    u_1, A_0 |- B_0;   u_2, A_1 |- B_1, u_1;   ...;   A_l |- B_l, u_l

which is the chain-collapse ladder again, solved greedily.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from .errors import InputError, ResourceError
from .finlat import FinLattice, iter_bits
from .morphisms import LatticeMorphism, jointly_injective
from .primes_chains import exhaustive_ladder, greedy_ladder

DEFAULT_POINT_CAP = 20_000


@dataclass(frozen=True)
class TaggedElement:
    level: int
    elem: int


@dataclass
class KrEntailment:
    holds: bool
    us: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.holds


def _levels(base: FinLattice, ell: int, tagged: Iterable[TaggedElement] | Sequence[Iterable[int]]) -> list[list[int]]:
    """Accept either tagged elements or one collection per level."""
    tagged = list(tagged)
    out: list[list[int]] = [[] for _ in range(ell + 1)]
    if tagged and all(isinstance(t, TaggedElement) for t in tagged):
        for t in tagged:
            if not 0 <= t.level <= ell:
                raise InputError(f"tag {t.level} outside 0..{ell}")
            out[t.level].append(base.check(t.elem))
        return out
    if len(tagged) > ell + 1:
        raise InputError(f"{len(tagged)} levels given for order {ell}")
    for i, group in enumerate(tagged):
        out[i] = [base.check(x) for x in group]
    return out


def kr_entails(base: FinLattice, ell: int, A, B, exhaustive: bool = False) -> KrEntailment:
    """Decide the derived sequent ``phi(A) |- phi(B)`` in ``Kr_ell(base)``.

    ``A`` and ``B`` are given as :class:`TaggedElement` collections or as one
    collection of base elements per level.
    """
    a_lv, b_lv = _levels(base, ell, A), _levels(base, ell, B)
    us = [base.meet_all(x) for x in a_lv]
    js = [base.join_all(x) for x in b_lv]
    xs = exhaustive_ladder(base, us, js) if exhaustive else greedy_ladder(base, us, js)
    return KrEntailment(xs is not None, xs)


@dataclass
class KrullLattice:
    """A materialized ``Kr_order(base)``.

    ``tags[k] = (i, p)`` says generator ``k`` of ``materialized`` is
    ``phi_i`` of the join-irreducible at base point ``p``; ``valuations``
    lists, for each point of ``materialized``, the set of true generators.
    """

    base: FinLattice
    order: int
    materialized: FinLattice
    tags: tuple[tuple[int, int], ...]
    valuations: tuple[int, ...]

    def generator(self, i: int, p: int) -> int:
        return self.materialized.generators[self.tags_names[(i, p)]]

    @property
    def tags_names(self) -> dict[tuple[int, int], str]:
        return {t: _tag_name(self.base, *t) for t in self.tags}

    def phi(self, i: int, a: int) -> int:
        """``phi_i(a)``, the join of ``phi_i`` over the points of ``a``."""
        if not 0 <= i <= self.order:
            raise InputError(f"level {i} outside 0..{self.order}")
        self.base.check(a)
        names = self.tags_names
        out = 0
        for p in iter_bits(a):
            out |= self.materialized.generators[names[(i, p)]]
        return out

    def point_chain(self, k: int) -> tuple[int, ...]:
        """The monotone tuple of base points encoded by point ``k``."""
        v = self.valuations[k]
        n = self.base.base.size
        out = []
        for i in range(self.order + 1):
            true = sum(1 << p for p in range(n) if v >> (i * n + p) & 1)
            least = [p for p in iter_bits(true) if self.base.base.above(p) == true]
            if len(least) != 1:
                raise AssertionError(f"point {k} does not encode a prime at level {i}")
            out.append(least[0])
        return tuple(out)

    def to_dict(self) -> dict:
        base = self.base
        return {
            "order": self.order,
            "lattice": self.materialized.to_dict(),
            "tags": [[i, str(base.base.labels[p])] for i, p in self.tags],
            "phi": [
                {base.label(a): list(iter_bits(self.phi(i, a))) for a in base.elements()}
                for i in range(self.order + 1)
            ],
        }


def _tag_name(base: FinLattice, i: int, p: int) -> str:
    return f"phi{i}({base.base.labels[p]})"


def kr_lattice(base: FinLattice, ell: int, cap: int = DEFAULT_POINT_CAP) -> KrullLattice:
    """Materialize ``Kr_ell(base)`` through its points.

    Generators are ``phi_i`` of the join-irreducibles.  A truth assignment to
    them is a point exactly when ``true |- false`` is not derivable, and a
    partial assignment already deriving it has no extension, which prunes
    the search.
    """
    if ell < 0:
        raise InputError("order must be nonnegative")
    n = base.base.size
    order = base.base.linear_extension()
    tags = tuple((i, p) for i in range(ell + 1) for p in range(n))
    variables = [(i, p) for i in range(ell + 1) for p in order]
    found: list[int] = []

    def rec(k: int, meets: list[int], joins: list[int], bits: int) -> None:
        if greedy_ladder(base, meets, joins) is not None:
            return
        if k == len(variables):
            found.append(bits)
            if len(found) > cap:
                raise ResourceError(f"Kr_{ell} has more than {cap} points")
            return
        i, p = variables[k]
        irr = base.irreducible(p)
        saved_m, saved_j = meets[i], joins[i]
        meets[i] = saved_m & irr
        rec(k + 1, meets, joins, bits | 1 << (i * n + p))
        meets[i] = saved_m
        joins[i] = saved_j | irr
        rec(k + 1, meets, joins, bits)
        joins[i] = saved_j

    rec(0, [base.top] * (ell + 1), [0] * (ell + 1), 0)
    names = [_tag_name(base, i, p) for i, p in tags]
    mat = FinLattice.from_valuations(names, found)
    return KrullLattice(base, ell, mat, tags, tuple(found))


def monotone_prime_tuples(base: FinLattice, length: int) -> list[tuple[int, ...]]:
    """All ``p_0 <= ... <= p_{length-1}`` in the base poset (increasing prime chains)."""
    n = base.base.size
    out = []
    for pts in itertools.product(range(n), repeat=length):
        if all(base.base.leq(pts[k], pts[k + 1]) for k in range(length - 1)):
            out.append(pts)
    return out


def spec_bijection(kr: KrullLattice) -> dict[int, tuple[int, ...]]:
    """Map each point of ``kr`` to its chain of base primes; raises if not a bijection."""
    chains = {k: kr.point_chain(k) for k in range(len(kr.valuations))}
    expected = set(monotone_prime_tuples(kr.base, kr.order + 1))
    if len(set(chains.values())) != len(chains) or set(chains.values()) != expected:
        raise AssertionError("points of the Krull lattice do not match the monotone prime chains")
    return chains


def joyal_sigma(big: KrullLattice, small: KrullLattice, i: int, validate: bool = False) -> LatticeMorphism:
    """``sigma_i : Kr_{l+1} -> Kr_l`` with ``phi_j -> phi_j`` for ``j <= i`` and ``phi_{j-1}`` above."""
    if big.order != small.order + 1 or big.base is not small.base:
        raise InputError("sigma needs Kr_{l+1} and Kr_l of the same base")
    pairs = []
    for j, p in big.tags:
        target = j if j <= i else j - 1
        pairs.append((big.generator(j, p), small.generator(target, p)))
    return LatticeMorphism.from_generators(big.materialized, small.materialized, pairs, validate=validate)


def joyal_sigma_injective(base: FinLattice, ell: int, cap: int = DEFAULT_POINT_CAP) -> bool:
    """Whether ``(sigma_0, ..., sigma_ell) : Kr_{ell+1} -> Kr_ell^{ell+1}`` is injective."""
    if ell == -1:
        return base.is_trivial
    big = kr_lattice(base, ell + 1, cap)
    small = kr_lattice(base, ell, cap)
    if not big.valuations:
        return True
    validate = big.materialized.base.size <= 64
    sigmas = [joyal_sigma(big, small, i, validate=validate) for i in range(ell + 1)]
    return jointly_injective(sigmas)


def joyal_dimension(base: FinLattice, cap: int = DEFAULT_POINT_CAP) -> int:
    ell = -1
    while not joyal_sigma_injective(base, ell, cap):
        ell += 1
    return ell


def defA_dim_leq(base: FinLattice, ell: int) -> bool:
    """Check ``phi_0(x_1),...,phi_l(x_{l+1}) |- phi_1(x_1),...,phi_{l+1}(x_{l+1})`` in ``Kr_{l+1}``."""
    if ell == -1:
        return base.is_trivial
    cands = sorted(set(base.irreducibles()))
    for xs in itertools.product(cands, repeat=ell + 1):
        A = [[xs[i]] for i in range(ell + 1)] + [[]]
        B = [[]] + [[xs[j - 1]] for j in range(1, ell + 2)]
        if not kr_entails(base, ell + 1, A, B).holds:
            return False
    return True
