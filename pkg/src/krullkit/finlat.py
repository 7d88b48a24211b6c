"""Finite distributive lattices in Birkhoff form.

A lattice is stored as the set of downsets of a finite poset (its
join-irreducibles).  Each element is a Python ``int`` used as a bitmask over
the points of the poset, so meet and join are ``&`` and ``|``.
"""

from __future__ import annotations

import json
import random
from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass

from .errors import InputError, ResourceError

DEFAULT_ELEMENT_CAP = 200_000


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


class Poset:
    """A finite partial order on ``labels``.

    ``leq`` is an iterable of index pairs ``(i, j)`` meaning ``i <= j``.
    Reflexive pairs are implied.  The relation must already be transitive and
    antisymmetric; use :meth:`from_covers` to start from a generating relation.
    """

    __slots__ = ("labels", "_below", "_above")

    def __init__(self, labels: Sequence, leq: Iterable[tuple[int, int]] = ()):
        self.labels = tuple(labels)
        if len(set(self.labels)) != len(self.labels):
            raise InputError("poset labels must be distinct")
        n = len(self.labels)
        below = [1 << i for i in range(n)]
        for i, j in leq:
            if not (0 <= i < n and 0 <= j < n):
                raise InputError(f"pair ({i}, {j}) out of range")
            below[j] |= 1 << i
        for j in range(n):
            for i in iter_bits(below[j]):
                if below[i] & ~below[j]:
                    raise InputError("relation is not transitive")
                if i != j and below[i] >> j & 1:
                    raise InputError("relation is not antisymmetric")
        self._below = tuple(below)
        above = [0] * n
        for j in range(n):
            for i in iter_bits(below[j]):
                above[i] |= 1 << j
        self._above = tuple(above)

    @classmethod
    def from_covers(cls, labels: Sequence, pairs: Iterable[tuple[int, int]]) -> Poset:
        """Build the reflexive-transitive closure of ``pairs``."""
        n = len(labels)
        below = [1 << i for i in range(n)]
        for i, j in pairs:
            below[j] |= 1 << i
        changed = True
        while changed:
            changed = False
            for j in range(n):
                acc = below[j]
                for i in iter_bits(below[j]):
                    acc |= below[i]
                if acc != below[j]:
                    below[j] = acc
                    changed = True
        return cls(labels, ((i, j) for j in range(n) for i in iter_bits(below[j])))

    @classmethod
    def antichain(cls, labels: Sequence) -> Poset:
        return cls(labels)

    @classmethod
    def chain(cls, labels: Sequence) -> Poset:
        return cls.from_covers(labels, [(i, i + 1) for i in range(len(labels) - 1)])

    def __len__(self) -> int:
        return len(self.labels)

    @property
    def size(self) -> int:
        return len(self.labels)

    def below(self, i: int) -> int:
        """Bitmask of the principal downset of point ``i``."""
        return self._below[i]

    def above(self, i: int) -> int:
        return self._above[i]

    def leq(self, i: int, j: int) -> bool:
        return bool(self._below[j] >> i & 1)

    def pairs(self) -> list[tuple[int, int]]:
        """All strict pairs ``i < j``."""
        return [(i, j) for j in range(self.size) for i in iter_bits(self._below[j]) if i != j]

    def covers(self) -> list[tuple[int, int]]:
        out = []
        for i, j in self.pairs():
            between = self._above[i] & self._below[j] & ~(1 << i) & ~(1 << j)
            if not between:
                out.append((i, j))
        return out

    def linear_extension(self) -> list[int]:
        return sorted(range(self.size), key=lambda i: (popcount(self._below[i]), i))

    def height(self) -> int:
        """Number of edges in a longest chain; -1 for the empty poset."""
        if not self.size:
            return -1
        depth = {}
        for i in self.linear_extension():
            strict = self._below[i] & ~(1 << i)
            depth[i] = max((depth[k] + 1 for k in iter_bits(strict)), default=0)
        return max(depth.values())

    def is_downset(self, mask: int) -> bool:
        if mask >> self.size:
            return False
        return all(not (self._below[i] & ~mask) for i in iter_bits(mask))

    def down_closure(self, mask: int) -> int:
        out = 0
        for i in iter_bits(mask):
            out |= self._below[i]
        return out

    def downsets(self) -> Iterator[int]:
        """Enumerate every downset, each exactly once."""
        order = self.linear_extension()
        below = self._below

        def rec(k: int, acc: int) -> Iterator[int]:
            if k == len(order):
                yield acc
                return
            i = order[k]
            yield from rec(k + 1, acc)
            if not (below[i] & ~(1 << i) & ~acc):
                yield from rec(k + 1, acc | 1 << i)

        yield from rec(0, 0)

    def opposite(self) -> Poset:
        return Poset(self.labels, ((j, i) for i, j in self.pairs()))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Poset) and self.labels == other.labels and self._below == other._below

    def __hash__(self) -> int:
        return hash((self.labels, self._below))

    def __repr__(self) -> str:
        return f"Poset({list(self.labels)!r}, {self.pairs()!r})"


def random_poset(n: int, rng: random.Random, density: float = 0.35) -> Poset:
    """Seeded random poset on ``n`` points (labels ``p0..p{n-1}``)."""
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < density]
    perm = list(range(n))
    rng.shuffle(perm)
    return Poset.from_covers([f"p{k}" for k in range(n)], [(perm[i], perm[j]) for i, j in pairs])


@dataclass(frozen=True)
class PrimeIdeal:
    """The detachable prime ideal ``{z : point not in z}`` of a finite lattice."""

    lattice: FinLattice
    point: int

    def __contains__(self, z: int) -> bool:
        return not (z >> self.point & 1)

    def elements(self) -> list[int]:
        return [z for z in self.lattice.elements() if z in self]

    @property
    def largest(self) -> int:
        """The largest element of the ideal (it is principal)."""
        return self.lattice.top & ~self.lattice.base.above(self.point)

    def __repr__(self) -> str:
        return f"PrimeIdeal({self.lattice.base.labels[self.point]!r})"


class FinLattice:
    """The lattice of downsets of ``base``.

    ``generators`` optionally names some elements; it is filled in when a
    lattice is built from a presentation.
    """

    def __init__(self, base: Poset, generators: Mapping[str, int] | None = None):
        self.base = base
        self.top = (1 << base.size) - 1
        self.bot = 0
        gens = dict(generators or {})
        for name, x in gens.items():
            if not base.is_downset(x):
                raise InputError(f"generator {name!r} is not a downset")
        self.generators = gens
        self._elements: tuple[int, ...] | None = None

    # construction helpers

    @classmethod
    def chain(cls, k: int) -> FinLattice:
        """The chain with ``k >= 1`` elements."""
        return cls(Poset.chain([f"c{i}" for i in range(1, k)]))

    @classmethod
    def boolean(cls, n: int) -> FinLattice:
        return cls(Poset.antichain([f"b{i}" for i in range(n)]))

    @classmethod
    def trivial(cls) -> FinLattice:
        return cls(Poset([]))

    @classmethod
    def from_valuations(cls, names: Sequence[str], valuations: Sequence[int]) -> FinLattice:
        """Lattice generated by ``names`` whose points are the given valuations.

        A valuation is a bitmask over ``names`` (bit set = true).  Points are
        ordered by reverse inclusion of their true sets, and a generator is the
        set of valuations making it true.
        """
        vals = list(dict.fromkeys(valuations))
        labels = ["{" + ",".join(names[i] for i in iter_bits(v)) + "}" for v in vals]
        pairs = [(i, j) for i, v in enumerate(vals) for j, w in enumerate(vals) if v & w == w]
        base = Poset(labels, pairs)
        gens = {}
        for g, name in enumerate(names):
            gens[name] = sum(1 << i for i, v in enumerate(vals) if v >> g & 1)
        return cls(base, gens)

    # element access

    def check(self, x: int) -> int:
        if not isinstance(x, int) or x < 0 or not self.base.is_downset(x):
            raise InputError(f"{x!r} is not an element of this lattice")
        return x

    def elements(self, cap: int = DEFAULT_ELEMENT_CAP) -> tuple[int, ...]:
        if self._elements is None:
            out = []
            for x in self.base.downsets():
                out.append(x)
                if len(out) > cap:
                    raise ResourceError(f"lattice has more than {cap} elements")
            out.sort(key=lambda x: (popcount(x), x))
            self._elements = tuple(out)
        return self._elements

    def size(self, cap: int = DEFAULT_ELEMENT_CAP) -> int:
        return len(self.elements(cap))

    @property
    def is_trivial(self) -> bool:
        return self.top == 0

    def irreducible(self, i: int) -> int:
        """The join-irreducible element attached to base point ``i``."""
        return self.base.below(i)

    def irreducibles(self) -> list[int]:
        return [self.base.below(i) for i in range(self.base.size)]

    # lattice operations

    def meet(self, *xs: int) -> int:
        out = self.top
        for x in xs:
            out &= x
        return out

    def join(self, *xs: int) -> int:
        out = 0
        for x in xs:
            out |= x
        return out

    def meet_all(self, xs: Iterable[int]) -> int:
        return self.meet(*xs)

    def join_all(self, xs: Iterable[int]) -> int:
        return self.join(*xs)

    @staticmethod
    def leq(a: int, b: int) -> bool:
        return a & ~b == 0

    def diff(self, a: int, b: int) -> int:
        """Co-Heyting difference: the least x with ``a <= b | x``."""
        return self.base.down_closure(a & ~b)

    def impl(self, a: int, b: int) -> int:
        """Heyting implication: the greatest x with ``a & x <= b``."""
        allowed = (self.top & ~a) | b
        out = 0
        for i in range(self.base.size):
            below = self.base.below(i)
            if below & ~allowed == 0:
                out |= 1 << i
        return out

    def complement(self, a: int) -> int | None:
        """The complement of ``a`` when it exists."""
        c = self.diff(self.top, a)
        return c if c & a == 0 else None

    # duality

    def join_irreducibles(self) -> Poset:
        """Compute the join-irreducible elements from the element set itself.

        Labels of the returned poset are the elements (bitmasks).
        """
        elems = self.elements()
        irr = []
        for x in elems:
            if x == 0:
                continue
            strictly_below = 0
            for y in elems:
                if y != x and y & ~x == 0:
                    strictly_below |= y
            if strictly_below != x:
                irr.append(x)
        pairs = [(i, j) for i, x in enumerate(irr) for j, y in enumerate(irr) if x & ~y == 0]
        return Poset(irr, pairs)

    def primes(self) -> list[PrimeIdeal]:
        return [PrimeIdeal(self, i) for i in range(self.base.size)]

    def prime_order(self) -> list[tuple[int, int]]:
        """Strict inclusions ``P_i < P_j`` between the primes of :meth:`primes`."""
        return self.base.pairs()

    def classical_dim(self) -> int:
        return self.base.height()

    def opposite(self) -> FinLattice:
        """The order dual, realized on the opposite poset.

        ``x -> top & ~x`` is an order-reversing bijection onto it.
        """
        return FinLattice(self.base.opposite())

    def dual_element(self, x: int) -> int:
        return self.top & ~x

    # display and serialization

    def label(self, x: int) -> str:
        if x == self.top:
            return "1"
        if x == 0:
            return "0"
        for name, g in self.generators.items():
            if g == x:
                return name
        maximal = [i for i in iter_bits(x) if self.base.above(i) & x == 1 << i]
        return "<" + ",".join(str(self.base.labels[i]) for i in maximal) + ">"

    def to_dict(self) -> dict:
        return {
            "irreducibles": [str(lab) for lab in self.base.labels],
            "leq": [list(p) for p in self.base.pairs()],
            "generators": {name: list(iter_bits(x)) for name, x in self.generators.items()},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: Mapping) -> FinLattice:
        base = Poset(data["irreducibles"], [tuple(p) for p in data["leq"]])
        gens = {name: sum(1 << i for i in idx) for name, idx in data.get("generators", {}).items()}
        return cls(base, gens)

    @classmethod
    def from_json(cls, text: str) -> FinLattice:
        return cls.from_dict(json.loads(text))

    def to_dot(self, name: str = "L") -> str:
        """Hasse diagram of the whole lattice in Graphviz syntax."""
        elems = self.elements()
        index = {x: k for k, x in enumerate(elems)}
        lines = [f"digraph {name} {{", "  rankdir=BT;"]
        for x in elems:
            lines.append(f'  n{index[x]} [label="{self.label(x)}"];')
        for x in elems:
            for i in range(self.base.size):
                if x >> i & 1:
                    continue
                y = x | 1 << i
                if y in index and self.base.below(i) & ~y == 0:
                    lines.append(f"  n{index[x]} -> n{index[y]};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FinLattice) and self.base == other.base and self.generators == other.generators

    def __hash__(self) -> int:
        return hash(self.base)

    def __repr__(self) -> str:
        return f"FinLattice(points={list(self.base.labels)!r}, order={self.base.pairs()!r})"


def build_from_presentation(pres, cap: int = DEFAULT_ELEMENT_CAP) -> FinLattice:
    """Materialize the distributive lattice presented by ``pres``.

    The points are the valuations satisfying every axiom.
    """
    from .entailment import satisfying_valuations

    vals = satisfying_valuations(pres)
    lat = FinLattice.from_valuations(pres.generators, vals)
    lat.elements(cap)
    return lat


def random_lattice(rng: random.Random, max_points: int = 6, density: float | None = None) -> FinLattice:
    n = rng.randint(0, max_points)
    d = rng.uniform(0.1, 0.7) if density is None else density
    return FinLattice(random_poset(n, rng, d))
