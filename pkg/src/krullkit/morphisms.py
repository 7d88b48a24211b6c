"""Morphisms of finite distributive lattices.

A morphism is stored by the images of the join-irreducibles of its domain;
``f(x)`` is the join of the images of the points of ``x``.  This module also
decides lying over, going up and going down, and computes relative
dimension.
"""

from __future__ import annotations

import itertools
import random
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, field

from .dimension import elementary_chain
from .errors import ContractError, InputError
from .finlat import FinLattice, Poset, iter_bits, popcount
from .primes_chains import (
    ChainWitness,
    IdealisticChain,
    IdealisticPrime,
    chain_collapses,
)


class LatticeMorphism:
    """A 0, 1, meet and join preserving map ``dom -> cod``."""

    def __init__(self, dom: FinLattice, cod: FinLattice, point_images: Sequence[int], validate: bool = True):
        if len(point_images) != dom.base.size:
            raise InputError("one image per domain point is required")
        self.dom = dom
        self.cod = cod
        self.point_images = tuple(point_images)
        if validate:
            problem = self.homomorphism_defect()
            if problem:
                raise ContractError(f"not a lattice morphism: {problem}")

    @classmethod
    def from_generators(
        cls,
        dom: FinLattice,
        cod: FinLattice,
        pairs: Iterable[tuple[int, int]],
        validate: bool = True,
    ) -> LatticeMorphism:
        """Extend an assignment on generating elements of ``dom``.

        Each principal downset of a point is the meet of the generators that
        contain the point, so its image is the meet of their images.
        """
        pairs = list(pairs)
        images = []
        for p in range(dom.base.size):
            img = cod.top
            for g, h in pairs:
                if g >> p & 1:
                    img &= h
            images.append(img)
        f = cls(dom, cod, images, validate=validate)
        for g, h in pairs:
            if f(g) != h:
                raise ContractError(f"the assignment on generators does not extend (at {dom.label(g)})")
        return f

    @classmethod
    def from_function(cls, dom: FinLattice, cod: FinLattice, fn: Callable[[int], int], validate: bool = True) -> LatticeMorphism:
        f = cls(dom, cod, [fn(dom.irreducible(p)) for p in range(dom.base.size)], validate=validate)
        if validate and any(f(x) != fn(x) for x in dom.elements()):
            raise ContractError("function is not determined by its values on join-irreducibles")
        return f

    @classmethod
    def identity(cls, lat: FinLattice) -> LatticeMorphism:
        return cls(lat, lat, lat.irreducibles())

    @classmethod
    def from_dual_map(cls, dom: FinLattice, cod: FinLattice, g: Sequence[int]) -> LatticeMorphism:
        """The morphism ``x -> {q : g(q) in x}`` of a monotone map ``g`` between point sets."""
        images = []
        for p in range(dom.base.size):
            down = dom.base.below(p)
            images.append(sum(1 << q for q in range(cod.base.size) if down >> g[q] & 1))
        return cls(dom, cod, images)

    def __call__(self, x: int) -> int:
        out = 0
        for p in iter_bits(x):
            out |= self.point_images[p]
        return out

    def homomorphism_defect(self) -> str | None:
        dom, cod = self.dom, self.cod
        for p, img in enumerate(self.point_images):
            if not cod.base.is_downset(img):
                return f"image of point {dom.base.labels[p]!r} is not an element"
        if self(dom.top) != cod.top:
            return "top is not preserved"
        n = dom.base.size
        for p in range(n):
            if self(dom.irreducible(p)) != self.point_images[p]:
                return "images are not monotone"
            for q in range(p + 1, n):
                lhs = self(dom.irreducible(p) & dom.irreducible(q))
                if lhs != self.point_images[p] & self.point_images[q]:
                    return "meets are not preserved"
        return None

    def is_injective(self) -> bool:
        """Injective iff no point's downset maps to the image of its lower cover."""
        dom = self.dom
        for p in range(dom.base.size):
            down = dom.irreducible(p)
            if self(down) == self(down & ~(1 << p)):
                return False
        return True

    def dual_map(self) -> list[int]:
        """For each cod point ``q``, the dom point ``p`` with ``q in f(x)`` iff ``p in x``."""
        out = []
        for q in range(self.cod.base.size):
            hits = [p for p in range(self.dom.base.size) if self.point_images[p] >> q & 1]
            least = [p for p in hits if all(self.dom.base.leq(p, r) for r in hits)]
            out.append(least[0])
        return out

    def image(self) -> list[int]:
        return sorted({self(x) for x in self.dom.elements()})

    def opposite(self) -> LatticeMorphism:
        """The same map between the order duals of domain and codomain."""
        dom_op, cod_op = self.dom.opposite(), self.cod.opposite()
        return LatticeMorphism.from_function(dom_op, cod_op, lambda x: self.cod.dual_element(self(self.dom.dual_element(x))))

    def __repr__(self) -> str:
        return f"LatticeMorphism({self.dom!r} -> {self.cod!r})"


def jointly_injective(maps: Sequence[LatticeMorphism]) -> bool:
    """Whether ``x -> (f(x) for f in maps)`` is injective; all maps share a domain."""
    dom = maps[0].dom
    for p in range(dom.base.size):
        down = dom.irreducible(p)
        lower = down & ~(1 << p)
        if all(f(down) == f(lower) for f in maps):
            return False
    return True


@dataclass
class PropertyResult:
    holds: bool
    counterexample: tuple | None = None

    def __bool__(self) -> bool:
        return self.holds


def _dom_generators(alpha: LatticeMorphism) -> list[int]:
    gens = set(alpha.dom.irreducibles()) | set(alpha.dom.generators.values())
    return sorted(gens, key=lambda x: (popcount(x), x))


def is_lying_over(alpha: LatticeMorphism, max_generators: int = 10) -> PropertyResult:
    """Whether every sequent between generators is reflected by ``alpha``.

    The counterexample is a pair ``(A, B)`` of generator sets with
    ``alpha(meet A) <= alpha(join B)`` but ``meet A`` not below ``join B``.
    """
    dom, cod = alpha.dom, alpha.cod
    gens = _dom_generators(alpha)
    if len(gens) > max_generators:
        return PropertyResult(alpha.is_injective())
    subsets = [c for k in range(len(gens) + 1) for c in itertools.combinations(gens, k)]
    for a in subsets:
        ma = dom.meet_all(a)
        for b in subsets:
            jb = dom.join_all(b)
            if not dom.leq(ma, jb) and cod.leq(alpha(ma), alpha(jb)):
                return PropertyResult(False, (a, b))
    return PropertyResult(True)


def is_going_up(alpha: LatticeMorphism) -> PropertyResult:
    """Going up, decided with the least candidate ``x* = a - b``.

    For fixed ``a, b`` the codomain elements ``y`` with ``alpha(a) <= alpha(b) | y``
    are exactly those above ``d = alpha(a) - alpha(b)``, so it suffices to
    test ``alpha(x*) <= d``.
    """
    dom, cod = alpha.dom, alpha.cod
    elems = dom.elements()
    for a in elems:
        fa = alpha(a)
        for b in elems:
            d = cod.diff(fa, alpha(b))
            if not cod.leq(alpha(dom.diff(a, b)), d):
                return PropertyResult(False, (a, b, d))
    return PropertyResult(True)


def is_going_down(alpha: LatticeMorphism) -> PropertyResult:
    """Going down, decided with the greatest candidate ``x* = a -> b``."""
    dom, cod = alpha.dom, alpha.cod
    elems = dom.elements()
    for a in elems:
        fa = alpha(a)
        for b in elems:
            y = cod.impl(fa, alpha(b))
            if not cod.leq(y, alpha(dom.impl(a, b))):
                return PropertyResult(False, (a, b, y))
    return PropertyResult(True)


def is_going_up_bruteforce(alpha: LatticeMorphism) -> PropertyResult:
    dom, cod = alpha.dom, alpha.cod
    d_elems, c_elems = dom.elements(), cod.elements()
    for a in d_elems:
        for b in d_elems:
            imgs = {alpha(x) for x in d_elems if dom.leq(a, b | x)}
            lhs, fb = alpha(a), alpha(b)
            for y in c_elems:
                if cod.leq(lhs, fb | y) and not any(cod.leq(i, y) for i in imgs):
                    return PropertyResult(False, (a, b, y))
    return PropertyResult(True)


def is_going_down_bruteforce(alpha: LatticeMorphism) -> PropertyResult:
    dom, cod = alpha.dom, alpha.cod
    d_elems, c_elems = dom.elements(), cod.elements()
    for a in d_elems:
        for b in d_elems:
            imgs = {alpha(x) for x in d_elems if dom.leq(a & x, b)}
            fa, fb = alpha(a), alpha(b)
            for y in c_elems:
                if cod.leq(fa & y, fb) and not any(cod.leq(y, i) for i in imgs):
                    return PropertyResult(False, (a, b, y))
    return PropertyResult(True)


# relative collapse


@dataclass
class RelativeWitness:
    """Elements of the domain whose images make every split of the chain collapse."""

    as_: tuple[int, ...]
    images: tuple[int, ...]
    per_split: dict[frozenset, ChainWitness] = field(default_factory=dict)

    def verify(self, alpha: LatticeMorphism, chain: IdealisticChain) -> bool:
        if tuple(alpha(a) for a in self.as_) != self.images:
            return False
        for h in _splits(len(self.as_)):
            w = self.per_split.get(h)
            if w is None or not w.verify(alpha.cod, _augmented(chain, self.images, h)):
                return False
        return True


@dataclass
class RelativeResult:
    witness: RelativeWitness | None
    definitive: bool
    searched_up_to: int

    @property
    def found(self) -> bool:
        return self.witness is not None

    def __bool__(self) -> bool:
        return self.found


def _splits(k: int) -> list[frozenset]:
    return [frozenset(h) for r in range(k + 1) for h in itertools.combinations(range(k), r)]


def _augmented(chain: IdealisticChain, images: Sequence[int], h: frozenset) -> IdealisticChain:
    """Put ``images[i]`` into ``J_0`` for ``i`` in ``h`` and into ``U_l`` otherwise."""
    into_j = [images[i] for i in h]
    into_u = [images[i] for i in range(len(images)) if i not in h]
    out = chain.add_j(0, *into_j)
    return out.add_u(out.length, *into_u)


def _split_witnesses(cod: FinLattice, chain: IdealisticChain, images: Sequence[int]) -> dict | None:
    found = {}
    for h in _splits(len(images)):
        w = chain_collapses(cod, _augmented(chain, images, h))
        if w is None:
            return None
        found[h] = w
    return found


def relative_candidates(alpha: LatticeMorphism) -> list[int]:
    """Domain join-irreducibles with pairwise distinct images.

    A prime of the codomain traces to the domain prime determined by which of
    these images it contains, so using all of them is the strongest a-list.
    """
    seen = {}
    for p in range(alpha.dom.base.size):
        x = alpha.dom.irreducible(p)
        seen.setdefault(alpha(x), x)
    return sorted(seen.values(), key=lambda x: (popcount(x), x))


def relative_chain_collapses(alpha: LatticeMorphism, chain: IdealisticChain, k_max: int | None = None) -> RelativeResult:
    """Search for an a-list of size at most ``k_max`` over which ``chain`` collapses.

    Failure is definitive once ``k_max`` reaches the number of candidates.
    """
    if not alpha.is_injective():
        raise ContractError("relative collapse needs an injective morphism; restrict the codomain to the image first")
    cands = relative_candidates(alpha)
    limit = len(cands) if k_max is None else min(k_max, len(cands))
    definitive = limit == len(cands)
    if definitive and _split_witnesses(alpha.cod, chain, [alpha(a) for a in cands]) is None:
        return RelativeResult(None, True, limit)
    for k in range(limit + 1):
        for sub in itertools.combinations(cands, k):
            imgs = tuple(alpha(a) for a in sub)
            splits = _split_witnesses(alpha.cod, chain, imgs)
            if splits is not None:
                return RelativeResult(RelativeWitness(tuple(sub), imgs, splits), definitive, limit)
    return RelativeResult(None, definitive, limit)


@dataclass
class RelativeDimResult:
    holds: bool
    definitive: bool
    counterexample: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.holds


def relative_dim_leq(alpha: LatticeMorphism, n: int, k_max: int | None = None) -> RelativeDimResult:
    """Whether every elementary chain on ``n + 1`` codomain irreducibles collapses over the domain."""
    cod = alpha.cod
    if n < -1:
        raise ContractError("n must be at least -1")
    if n == -1:
        res = relative_chain_collapses(alpha, IdealisticChain((IdealisticPrime.of(),)), k_max)
        return RelativeDimResult(res.found, res.found or res.definitive, None if res.found else ())
    cands = sorted(set(cod.irreducibles()))
    for xs in itertools.product(cands, repeat=n + 1):
        res = relative_chain_collapses(alpha, elementary_chain(xs), k_max)
        if not res.found:
            return RelativeDimResult(False, res.definitive, tuple(xs))
    return RelativeDimResult(True, True)


def relative_dimension(alpha: LatticeMorphism) -> int:
    n = -1
    while not relative_dim_leq(alpha, n).holds:
        n += 1
    return n


def relative_refining_chain(alpha: LatticeMorphism, chain: IdealisticChain) -> tuple[int, ...] | None:
    """Brute force: a prime chain refining ``chain`` whose levels all trace to one domain prime."""
    cod = alpha.cod
    trace = alpha.dual_map()
    n = cod.base.size
    for pts in itertools.product(range(n), repeat=len(chain)):
        if len({trace[p] for p in pts}) != 1:
            continue
        if not all(cod.base.leq(pts[k], pts[k + 1]) for k in range(len(pts) - 1)):
            continue
        if _refines(cod, chain, pts):
            return pts
    return None


def _refines(lat: FinLattice, chain: IdealisticChain, pts: Sequence[int]) -> bool:
    for p, lv in zip(pts, chain.levels):
        if any(x >> p & 1 for x in lv.J) or not all(u >> p & 1 for u in lv.U):
            return False
    return True


def image_inclusion(alpha: LatticeMorphism) -> tuple[FinLattice, LatticeMorphism]:
    """Factor out the image: returns the image lattice and its inclusion into ``cod``.

    The image of a finite lattice morphism is a sublattice of the codomain; its
    points are the cod-elements of the image that are join-irreducible there.
    """
    img = alpha.image()
    irr = []
    for x in img:
        if x == 0:
            continue
        below = 0
        for y in img:
            if y != x and alpha.cod.leq(y, x):
                below |= y
        if below != x:
            irr.append(x)
    base = Poset([alpha.cod.label(x) for x in irr], [(i, j) for i, x in enumerate(irr) for j, y in enumerate(irr) if alpha.cod.leq(x, y)])
    lat = FinLattice(base)
    return lat, LatticeMorphism(lat, alpha.cod, irr)


# random morphisms for tests and experiments


def random_monotone_map(rng: random.Random, src: FinLattice, dst: FinLattice, tries: int = 50) -> list[int] | None:
    """A random order-preserving map from the points of ``src`` to those of ``dst``."""
    n_src, n_dst = src.base.size, dst.base.size
    if n_src and not n_dst:
        return None
    order = src.base.linear_extension()
    for _ in range(tries):
        g = [0] * n_src
        ok = True
        for q in order:
            lower = [g[r] for r in iter_bits(src.base.below(q) & ~(1 << q))]
            options = [p for p in range(n_dst) if all(dst.base.leq(r, p) for r in lower)]
            if not options:
                ok = False
                break
            g[q] = rng.choice(options)
        if ok:
            return g
    return None


def random_morphism(rng: random.Random, dom: FinLattice, cod: FinLattice) -> LatticeMorphism | None:
    g = random_monotone_map(rng, cod, dom)
    if g is None:
        return None
    return LatticeMorphism.from_dual_map(dom, cod, g)

