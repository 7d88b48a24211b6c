"""Entailment relations presented by generators and axioms.

Two decision procedures are provided for ``A |- B`` in the distributive
lattice generated by a presentation:

* :func:`entails_free` searches for a two-valued valuation satisfying the
  axioms, with ``A`` true and ``B`` false (a countermodel);
* :func:`entails_derivation` builds a derivation by repeatedly cutting with an
  applicable axiom.

They share nothing except the presentation and are tested against each other.
"""

from __future__ import annotations

import itertools
from collections.abc import Callable, Collection, Hashable, Iterable, Iterator, Sequence
from dataclasses import dataclass, field

from .errors import InputError, ResourceError
from .finlat import iter_bits

DEFAULT_GENERATOR_CAP = 20


@dataclass(frozen=True)
class Sequent:
    lhs: frozenset
    rhs: frozenset

    @classmethod
    def of(cls, lhs: Iterable = (), rhs: Iterable = ()) -> Sequent:
        return cls(frozenset(lhs), frozenset(rhs))

    def __str__(self) -> str:
        left = ", ".join(sorted(map(str, self.lhs)))
        right = ", ".join(sorted(map(str, self.rhs)))
        return f"{left} |- {right}".strip()


@dataclass(frozen=True)
class EntailmentPresentation:
    """Generators plus axioms ``lhs |- rhs`` (meet of lhs below join of rhs)."""

    generators: tuple[str, ...]
    axioms: tuple[Sequent, ...] = ()
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        gens = tuple(self.generators)
        if len(set(gens)) != len(gens):
            raise InputError("generators must be distinct")
        index = {g: i for i, g in enumerate(gens)}
        seen = []
        for ax in self.axioms:
            ax = ax if isinstance(ax, Sequent) else Sequent.of(*ax)
            for g in ax.lhs | ax.rhs:
                if g not in index:
                    raise InputError(f"unknown generator {g!r} in axiom {ax}")
            if ax not in seen:
                seen.append(ax)
        seen.sort(key=lambda s: (sorted(index[g] for g in s.lhs), sorted(index[g] for g in s.rhs)))
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "axioms", tuple(seen))
        object.__setattr__(self, "_index", index)

    def mask(self, names: Iterable) -> int:
        out = 0
        for g in names:
            try:
                out |= 1 << self._index[g]
            except KeyError:
                raise InputError(f"unknown generator {g!r}") from None
        return out

    def axiom_masks(self) -> list[tuple[int, int]]:
        return [(self.mask(ax.lhs), self.mask(ax.rhs)) for ax in self.axioms]

    def with_axioms(self, *axioms: Sequent) -> EntailmentPresentation:
        return EntailmentPresentation(self.generators, self.axioms + tuple(axioms))

    def names(self, mask: int) -> frozenset:
        return frozenset(self.generators[i] for i in iter_bits(mask))


def _as_sequent(q) -> Sequent:
    return q if isinstance(q, Sequent) else Sequent.of(*q)


def _models(n: int, clauses: Sequence[tuple[int, int]], forced_true: int = 0, forced_false: int = 0) -> Iterator[int]:
    """Valuations (bitmasks) violating no clause ``(l, r)``.

    A clause is violated when every variable of ``l`` is true and every
    variable of ``r`` is false.  Clauses are checked as soon as their last
    variable is assigned.
    """
    if forced_true & forced_false:
        return
    by_var: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for lm, rm in clauses:
        both = lm | rm
        if not both:
            return
        by_var[both.bit_length() - 1].append((lm, rm))

    def rec(i: int, true: int) -> Iterator[int]:
        if i == n:
            yield true
            return
        bit = 1 << i
        choices = (1,) if forced_true & bit else (0,) if forced_false & bit else (0, 1)
        assigned = (bit << 1) - 1
        for val in choices:
            t = true | bit if val else true
            false = assigned & ~t
            if all(lm & ~t or rm & ~false for lm, rm in by_var[i]):
                yield from rec(i + 1, t)

    yield from rec(0, 0)


def _check_cap(pres: EntailmentPresentation, cap: int) -> None:
    if len(pres.generators) > cap:
        raise ResourceError(f"{len(pres.generators)} generators exceed the cap of {cap}")


def satisfying_valuations(pres: EntailmentPresentation, cap: int = DEFAULT_GENERATOR_CAP) -> list[int]:
    """All two-valued valuations of the generators satisfying every axiom."""
    _check_cap(pres, cap)
    return list(_models(len(pres.generators), pres.axiom_masks()))


def find_countermodel(pres: EntailmentPresentation, q, cap: int = DEFAULT_GENERATOR_CAP) -> frozenset | None:
    """The true set of a model of the axioms refuting ``q``, if one exists."""
    _check_cap(pres, cap)
    q = _as_sequent(q)
    found = next(_models(len(pres.generators), pres.axiom_masks(), pres.mask(q.lhs), pres.mask(q.rhs)), None)
    return None if found is None else pres.names(found)


def entails_free(pres: EntailmentPresentation, q, cap: int = DEFAULT_GENERATOR_CAP) -> bool:
    """Decide ``q.lhs |- q.rhs`` in the lattice generated by ``pres``."""
    return find_countermodel(pres, q, cap) is None


def entails_derivation(pres: EntailmentPresentation, q, cap: int = DEFAULT_GENERATOR_CAP) -> bool:
    """Decide ``q`` by searching for a derivation.

    ``A`` proves the goal when it already meets the right-hand side.  Otherwise
    an axiom ``L |- R`` with ``L`` inside ``A`` and ``R`` disjoint from ``A`` is
    cut in: the goal must follow from ``A + r`` for every ``r`` in ``R``.  When
    no axiom applies, ``A`` itself is a countermodel, so the choice of axiom
    does not matter.
    """
    _check_cap(pres, cap)
    q = _as_sequent(q)
    axioms = pres.axiom_masks()
    goal = pres.mask(q.rhs)
    memo: dict[int, bool] = {}

    def proves(a: int) -> bool:
        if a & goal:
            return True
        if a in memo:
            return memo[a]
        result = False
        for lm, rm in axioms:
            if lm & ~a == 0 and rm & a == 0:
                result = all(proves(a | 1 << r) for r in iter_bits(rm))
                break
        memo[a] = result
        return result

    return proves(pres.mask(q.lhs))


def is_consistent(pres: EntailmentPresentation, cap: int = DEFAULT_GENERATOR_CAP) -> bool:
    return not entails_free(pres, Sequent.of(), cap)


# law checking on explicit relations


@dataclass
class LawReport:
    reflexivity: list = field(default_factory=list)
    monotonicity: list = field(default_factory=list)
    transitivity: list = field(default_factory=list)
    distributivity: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.reflexivity or self.monotonicity or self.transitivity or self.distributivity)

    def violations(self) -> list[tuple[str, object]]:
        out = []
        for kind in ("reflexivity", "monotonicity", "transitivity", "distributivity"):
            out.extend((kind, v) for v in getattr(self, kind))
        return out


def check_entailment_laws(
    carrier: Collection[Hashable],
    rel: Callable[[frozenset, frozenset], bool] | Iterable,
    join: Callable | None = None,
    meet: Callable | None = None,
    cap: int = 7,
) -> LawReport:
    """Report every violation of the entailment laws by ``rel``.

    ``rel`` is either a predicate on pairs of finite subsets, or an explicit
    table of ``(lhs, rhs)`` pairs (any pair absent from the table is taken not
    to hold).  The distributivity rules are checked when ``join`` and ``meet``
    are supplied; pairs whose join or meet leaves the carrier are skipped.
    """
    items = list(carrier)
    if len(items) > cap:
        raise ResourceError(f"carrier of size {len(items)} exceeds the cap of {cap}")
    if callable(rel):
        holds = rel
    else:
        table = {Sequent.of(lhs, rhs) for lhs, rhs in rel}
        holds = lambda a, b: Sequent(a, b) in table  # noqa: E731
    subsets = [frozenset(c) for k in range(len(items) + 1) for c in itertools.combinations(items, k)]
    value = {(a, b): bool(holds(a, b)) for a in subsets for b in subsets}
    report = LawReport()
    members = set(items)

    for x in items:
        if not value[frozenset([x]), frozenset([x])]:
            report.reflexivity.append(Sequent.of([x], [x]))
    for (a, b), ok in value.items():
        if ok:
            for x in items:
                if x not in a and not value[a | {x}, b]:
                    report.monotonicity.append((Sequent(a, b), Sequent(a | {x}, b)))
                if x not in b and not value[a, b | {x}]:
                    report.monotonicity.append((Sequent(a, b), Sequent(a, b | {x})))
        else:
            for x in items:
                if value[a | {x}, b] and value[a, b | {x}]:
                    report.transitivity.append((Sequent(a, b), x))
    if join is not None and meet is not None:
        for a, b in value:
            for x, y in itertools.combinations_with_replacement(items, 2):
                j, m = join(x, y), meet(x, y)
                if j in members:
                    left = value[a | {x}, b] and value[a | {y}, b]
                    if left != value[a | {j}, b]:
                        report.distributivity.append((Sequent(a, b), "join", x, y))
                if m in members:
                    right = value[a, b | {x}] and value[a, b | {y}]
                    if right != value[a, b | {m}]:
                        report.distributivity.append((Sequent(a, b), "meet", x, y))
    return report


def lattice_relation(lattice) -> Callable[[frozenset, frozenset], bool]:
    """The entailment relation ``meet(A) <= join(B)`` of a finite lattice."""
    return lambda a, b: lattice.leq(lattice.meet_all(a), lattice.join_all(b))


def prime_theory(
    elements: Sequence,
    add: Callable,
    mul: Callable,
    zero,
    one,
    ideal: Iterable = (),
    monoid: Iterable = (),
    dichotomy: bool = False,
) -> EntailmentPresentation:
    """Geometric theory of a prime ideal containing ``ideal`` and missing ``monoid``.

    The generator ``P[a]`` reads "a is in the prime" and ``S[a]`` reads "a is
    outside it".  With ``dichotomy`` every element is forced to one side.
    """
    elements = list(elements)
    p = {a: f"P[{a}]" for a in elements}
    s = {a: f"S[{a}]" for a in elements}
    axioms = [Sequent.of([], [p[a]]) for a in ideal]
    axioms += [Sequent.of([], [s[u]]) for u in monoid]
    axioms += [Sequent.of([], [p[zero]]), Sequent.of([], [s[one]])]
    for a in elements:
        axioms.append(Sequent.of([p[a], s[a]], []))
        if dichotomy:
            axioms.append(Sequent.of([], [p[a], s[a]]))
        for b in elements:
            axioms.append(Sequent.of([p[a], p[b]], [p[add(a, b)]]))
            axioms.append(Sequent.of([p[a]], [p[mul(a, b)]]))
            axioms.append(Sequent.of([s[a], s[b]], [s[mul(a, b)]]))
    gens = [p[a] for a in elements] + [s[a] for a in elements]
    return EntailmentPresentation(tuple(gens), tuple(axioms))
