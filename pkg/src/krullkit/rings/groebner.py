"""Buchberger's algorithm with reduced output and optional cofactor tracking."""

from __future__ import annotations

import heapq
from collections.abc import Sequence
from dataclasses import dataclass

from .poly import Exp, Poly, PolyRing


def _divides(a: Exp, b: Exp) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Exp, b: Exp) -> Exp:
    return tuple(max(x, y) for x, y in zip(a, b))


def _sub(a: Exp, b: Exp) -> Exp:
    return tuple(x - y for x, y in zip(a, b))


def _neg_key(ring: PolyRing, e: Exp) -> tuple[int, ...]:
    return tuple(-k for k in ring.key(e))


def reduce(f: Poly, basis: Sequence[Poly], track: bool = False):
    """Full reduction of ``f`` by ``basis``.

    Returns the remainder, or ``(remainder, quotients)`` with ``track=True``
    where ``f = remainder + sum(q_k * basis_k)``.
    """
    ring = f.ring
    field = ring.field
    norm = field.normalize
    leads = [(g.lm(), field.inv(g.lc()), g) for g in basis if g]
    terms = dict(f.terms)
    heap = [(_neg_key(ring, e), e) for e in terms]
    heapq.heapify(heap)
    rem: dict[Exp, object] = {}
    quots: list[dict[Exp, object]] = [dict() for _ in basis] if track else []
    index = {id(g): k for k, g in enumerate(basis)}
    while heap:
        _, e = heapq.heappop(heap)
        c = terms.pop(e, None)
        if c is None:
            continue
        for lm, inv_lc, g in leads:
            if _divides(lm, e):
                shift = _sub(e, lm)
                q = norm(c * inv_lc)
                for eg, cg in g.terms.items():
                    if eg == lm:
                        continue
                    e2 = tuple(a + b for a, b in zip(eg, shift))
                    old = terms.get(e2)
                    v = norm((old or 0) - q * cg)
                    if v:
                        terms[e2] = v
                        if old is None:
                            heapq.heappush(heap, (_neg_key(ring, e2), e2))
                    elif old is not None:
                        del terms[e2]
                if track:
                    qd = quots[index[id(g)]]
                    v = norm(qd.get(shift, 0) + q)
                    if v:
                        qd[shift] = v
                    else:
                        qd.pop(shift, None)
                break
        else:
            rem[e] = c
    remainder = Poly(ring, rem)
    if track:
        return remainder, [Poly(ring, q) for q in quots]
    return remainder


@dataclass
class GroebnerBasis:
    ring: PolyRing
    basis: tuple[Poly, ...]

    def reduce(self, f: Poly) -> Poly:
        return reduce(self.ring.coerce(f), self.basis)

    normal_form = reduce

    def contains(self, f: Poly) -> bool:
        return self.reduce(f).is_zero()

    def is_unit(self) -> bool:
        return any(g.is_constant() and g for g in self.basis)

    def __len__(self) -> int:
        return len(self.basis)


def _spoly(f: Poly, g: Poly) -> tuple[Poly, tuple[Exp, object], tuple[Exp, object]]:
    (ef, cf), (eg, cg) = f.lead(), g.lead()
    lcm = _lcm(ef, eg)
    field = f.ring.field
    mf = (_sub(lcm, ef), field.inv(cf))
    mg = (_sub(lcm, eg), field.inv(cg))
    return f.mul_term(*mf) - g.mul_term(*mg), mf, mg


def buchberger(gens: Sequence[Poly], ring: PolyRing | None = None, track: bool = False, reduced: bool = True):
    """Groebner basis of the ideal generated by ``gens`` in ``ring``'s order.

    With ``track=True`` also returns, for each basis element, its cofactors
    with respect to ``gens``; the output is then not inter-reduced.
    """
    if ring is None:
        ring = gens[0].ring
    gens = [ring.coerce(g) for g in gens]
    m = len(gens)
    zero = ring.zero
    G: list[Poly] = []
    reps: list[list[Poly]] = []

    def unit_vector(k: int) -> list[Poly]:
        return [ring.one if i == k else zero for i in range(m)]

    pairs: list[tuple[tuple[int, ...], int, int]] = []

    def add(g: Poly, rep: list[Poly] | None) -> None:
        inv = ring.field.inv(g.lc())
        g = g.scale(inv)
        if track:
            rep = [r.scale(inv) for r in rep]
        k = len(G)
        G.append(g)
        if track:
            reps.append(rep)
        for i in range(k):
            lcm = _lcm(G[i].lm(), g.lm())
            heapq.heappush(pairs, (ring.key(lcm), i, k))

    for k, f in enumerate(gens):
        if f:
            add(f, unit_vector(k) if track else None)
    processed: set[tuple[int, int]] = set()
    while pairs:
        _, i, j = heapq.heappop(pairs)
        processed.add((i, j))
        fi, fj = G[i], G[j]
        li, lj = fi.lm(), fj.lm()
        lcm = _lcm(li, lj)
        if all(a == 0 or b == 0 for a, b in zip(li, lj)):
            continue
        if _chain_skip(G, i, j, lcm, processed):
            continue
        s, (si, ci), (sj, cj) = _spoly(fi, fj)
        if track:
            r, quots = reduce(s, G, track=True)
            if r:
                rep = []
                for idx in range(m):
                    v = reps[i][idx].mul_term(si, ci) - reps[j][idx].mul_term(sj, cj)
                    for q, rk in zip(quots, reps):
                        if q:
                            v = v - q * rk[idx]
                    rep.append(v)
                add(r, rep)
        else:
            r = reduce(s, G)
            if r:
                add(r, None)
                if r.is_constant():
                    break
    if track:
        return G, reps
    if any(g.is_constant() for g in G):
        return [ring.one]
    return _interreduce(G) if reduced else G


def _chain_skip(G, i, j, lcm, processed) -> bool:
    """Buchberger's chain criterion: some ``k`` divides the lcm and both side pairs are done."""
    for k, g in enumerate(G):
        if k in (i, j) or not _divides(g.lm(), lcm):
            continue
        if (min(i, k), max(i, k)) in processed and (min(j, k), max(j, k)) in processed:
            return True
    return False


def _interreduce(G: list[Poly]) -> list[Poly]:
    minimal = []
    for k, g in enumerate(G):
        lm = g.lm()
        if any(_divides(h.lm(), lm) and (h.lm() != lm or idx < k) for idx, h in enumerate(G) if idx != k):
            continue
        minimal.append(g)
    out = []
    for k, g in enumerate(minimal):
        others = minimal[:k] + minimal[k + 1 :]
        r = reduce(g, others)
        out.append(r.monic())
    out.sort(key=lambda p: p.ring.key(p.lm()))
    return out


def groebner(gens: Sequence[Poly], ring: PolyRing | None = None) -> GroebnerBasis:
    if ring is None:
        ring = gens[0].ring
    nonzero = [ring.coerce(g) for g in gens if g]
    if not nonzero:
        return GroebnerBasis(ring, ())
    return GroebnerBasis(ring, tuple(buchberger(nonzero, ring)))


def lift(f: Poly, gens: Sequence[Poly]) -> list[Poly] | None:
    """Cofactors ``c`` with ``f = sum(c_k * gens_k)``, or ``None`` if ``f`` is not in the ideal."""
    ring = f.ring
    gens = [ring.coerce(g) for g in gens]
    if not any(gens):
        return [ring.zero for _ in gens] if f.is_zero() else None
    G, reps = buchberger(gens, ring, track=True)
    r, quots = reduce(f, G, track=True)
    if r:
        return None
    out = []
    for idx in range(len(gens)):
        v = ring.zero
        for q, rk in zip(quots, reps):
            if q:
                v = v + q * rk[idx]
        out.append(v)
    return out
