"""Singular sequences and their certificates.

A certificate ``(m, a)`` for ``x_1, ..., x_l`` is an identity

    x_1^m_1 (x_2^m_2 ( ... x_l^m_l (1 + a_l x_l) ... ) + a_1 x_1) = 0.

Expanded, the left side is ``P_l + sum_i a_i x_i P_i`` with
``P_i = x_1^m_1 ... x_i^m_i``, which is linear in the ``a_i``.
"""

from __future__ import annotations

import itertools
import json
import math
from collections.abc import Mapping, Sequence
from dataclasses import dataclass

from ..errors import ContractError, InputError, NotFoundWithinBounds, ResourceError
from .core import ZZ, CompRing, Integers, IntegersMod, Polynomials
from .linalg import nullspace, solve
from .poly import Poly, PolyRing, monomials_up_to


@dataclass(frozen=True)
class SingularCertificate:
    ms: tuple[int, ...]
    as_: tuple

    def __post_init__(self):
        if len(self.ms) != len(self.as_):
            raise InputError("a certificate needs as many exponents as cofactors")
        if any(m < 0 for m in self.ms):
            raise InputError("exponents must be natural numbers")

    def to_dict(self, ring: CompRing) -> dict:
        return {"m": list(self.ms), "a": [ring.fmt(a) for a in self.as_]}

    def to_json(self, ring: CompRing) -> str:
        return json.dumps(self.to_dict(ring))

    @classmethod
    def from_dict(cls, ring: CompRing, data: Mapping) -> SingularCertificate:
        try:
            ms, as_ = data["m"], data["a"]
        except (KeyError, TypeError):
            raise InputError('a certificate is {"m": [...], "a": [...]}') from None
        return cls(tuple(int(m) for m in ms), tuple(ring.convert(a) for a in as_))

    @classmethod
    def from_json(cls, ring: CompRing, text: str) -> SingularCertificate:
        return cls.from_dict(ring, json.loads(text))


def expand_certificate(ring: CompRing, xs: Sequence, cert: SingularCertificate):
    """The nested expression of the certificate, evaluated from the inside out."""
    xs = [ring.convert(x) for x in xs]
    if len(xs) != len(cert.ms):
        raise InputError(f"certificate has length {len(cert.ms)}, sequence has length {len(xs)}")
    if not xs:
        return ring.one
    value = ring.one
    for x, m, a in zip(reversed(xs), reversed(cert.ms), reversed(cert.as_)):
        value = ring.mul(ring.pow(x, m), ring.add(value, ring.mul(a, x)))
    return value


def verify_singular_certificate(ring: CompRing, xs: Sequence, cert: SingularCertificate) -> bool:
    return ring.is_zero(expand_certificate(ring, xs, cert))


# search


def exponent_tuples(length: int, max_exp: int):
    """Tuples in ``[0, max_exp]^length`` by total sum, then lexicographically."""
    for total in range(length * max_exp + 1):
        for t in itertools.product(range(max_exp + 1), repeat=length):
            if sum(t) == total:
                yield t


def find_singular_certificate(
    ring: CompRing, xs: Sequence, max_exp: int = 3, max_degree: int = 3, max_tries: int = 200_000
) -> SingularCertificate:
    """First certificate within the bounds; raises :class:`NotFoundWithinBounds` otherwise.

    Over ``ZZ`` the search is replaced by a direct construction, so the bounds
    are ignored and failure means the sequence is not singular.
    """
    xs = [ring.convert(x) for x in xs]
    if isinstance(ring, Integers):
        cert = integer_certificate(xs)
        if cert is None:
            raise NotFoundWithinBounds("the sequence is not singular in ZZ")
        return cert
    if isinstance(ring, IntegersMod):
        return _residue_search(ring, xs, max_exp, max_tries)
    if isinstance(ring, Polynomials):
        return _poly_search(ring, xs, max_exp, max_degree)
    raise InputError(f"no certificate search for {ring!r}")


def integer_certificate(xs: Sequence[int]) -> SingularCertificate | None:
    """A certificate over ``ZZ`` built from gcd arithmetic, or ``None`` if none exists."""
    xs = list(xs)
    ell = len(xs)
    if ell == 0:
        return None
    x1 = xs[0]
    if x1 == 0:
        return SingularCertificate((1,) + (0,) * (ell - 1), (0,) * ell)
    if ell == 1:
        if abs(x1) == 1:
            return SingularCertificate((0,), (-x1,))
        return None
    # x1 must divide x2^m2 (1 + a2 x2): the primes of x1 shared with x2 go into
    # x2^m2, the others are handled by a2 = -1/x2 modulo the coprime part
    M = abs(x1)
    coprime = M
    x2 = xs[1]
    while True:
        d = math.gcd(coprime, x2)
        if d <= 1:
            break
        coprime //= d
    shared = M // coprime
    m2 = 0
    while pow(x2, m2) % shared:
        m2 += 1
    a2 = (-pow(x2, -1, coprime)) % coprime if coprime > 1 else 0
    e2 = pow(x2, m2) * (1 + a2 * x2)
    a1 = -(e2 // x1)
    ms = (0, m2) + (0,) * (ell - 2)
    as_ = (a1, a2) + (0,) * (ell - 2)
    cert = SingularCertificate(ms, as_)
    assert verify_singular_certificate(ZZ, xs, cert)
    return cert


def _residue_search(ring: IntegersMod, xs: list[int], max_exp: int, max_tries: int) -> SingularCertificate:
    n = ring.n
    tries = 0
    for ms in exponent_tuples(len(xs), max_exp):
        for as_ in itertools.product(range(n), repeat=len(xs)):
            tries += 1
            if tries > max_tries:
                raise ResourceError(f"more than {max_tries} candidate certificates")
            cert = SingularCertificate(ms, as_)
            if verify_singular_certificate(ring, xs, cert):
                return cert
    raise NotFoundWithinBounds(f"no certificate with exponents <= {max_exp}")


def _poly_search(ring: Polynomials, xs: list[Poly], max_exp: int, max_degree: int) -> SingularCertificate:
    ell = len(xs)
    field = ring.field
    if ell == 0:
        if ring.is_trivial:
            return SingularCertificate((), ())
        raise NotFoundWithinBounds("the empty sequence is singular only in the zero ring")
    for ms in exponent_tuples(ell, max_exp):
        prefix = []
        acc = ring.one
        for x, m in zip(xs, ms):
            acc = ring.mul(acc, ring.pow(x, m))
            prefix.append(acc)
        # E = P_l + sum_i a_i * (x_i P_i)
        targets = [ring.mul(x, p) for x, p in zip(xs, prefix)]
        const = prefix[-1]
        for deg in range(max_degree + 1):
            monos = monomials_up_to(ring.R.nvars, deg)
            columns = []
            for i in range(ell):
                for mono in monos:
                    columns.append(ring.mul(ring.R.monomial(mono), targets[i]))
            support = sorted({e for col in [const, *columns] for e in col.terms})
            rows = [[col.terms.get(e, field.zero) for col in columns] for e in support]
            rhs = [-const.terms.get(e, field.zero) for e in support]
            if not support:
                sol = [field.zero] * len(columns)
            elif not columns:
                sol = None
            else:
                sol = solve(rows, rhs, field)
            if sol is None:
                continue
            as_ = []
            for i in range(ell):
                chunk = sol[i * len(monos) : (i + 1) * len(monos)]
                as_.append(ring.check(ring.R.poly(dict(zip(monos, chunk)))))
            cert = SingularCertificate(tuple(ms), tuple(as_))
            if not verify_singular_certificate(ring, xs, cert):
                raise AssertionError("linear solve produced a failing certificate")
            return cert
    raise NotFoundWithinBounds(f"no certificate with exponents <= {max_exp} and cofactor degree <= {max_degree}")


# algebraic dependence


def collapse_from_dependence(ring: Polynomials, ys: Sequence, Q: Poly) -> SingularCertificate:
    """Certificate for ``ys`` read off a nonzero relation ``Q(ys) = 0``.

    ``Q`` lives in a polynomial ring with one variable per ``y``.  Its
    lexicographically least monomial ``y^m`` (coefficient scaled to 1) gives
    the exponents; every other monomial ``y^e`` first exceeds ``m`` at some
    index ``j`` and lands in the cofactor ``a_j``.
    """
    ys = [ring.convert(y) for y in ys]
    if Q.ring.nvars != len(ys):
        raise InputError(f"relation has {Q.ring.nvars} variables for {len(ys)} elements")
    if Q.is_zero():
        raise ContractError("the relation must be nonzero")
    if not ring.is_zero(_evaluate(ring, Q, ys)):
        raise ContractError("the relation does not vanish on the given elements")
    field = ring.field
    m = min(Q.terms)
    inv = field.inv(field.convert(Q.terms[m]))
    ell = len(ys)
    R = [dict() for _ in range(ell)]
    for e, c in Q.terms.items():
        if e == m:
            continue
        j = next(k for k in range(ell) if e[k] != m[k])
        rest = tuple(0 if k < j else (e[j] - m[j] - 1 if k == j else e[k]) for k in range(ell))
        R[j][rest] = field.normalize(field.convert(c) * inv)
    as_ = tuple(_evaluate(ring, Q.ring.poly(r), ys) for r in R)
    cert = SingularCertificate(tuple(m), as_)
    if not verify_singular_certificate(ring, ys, cert):
        raise AssertionError("dependence certificate does not verify")
    return cert


def _evaluate(ring: Polynomials, Q: Poly, ys: Sequence):
    return Q.evaluate(
        list(ys), ring.one, mul=ring.mul, add=ring.add, scale=lambda c, a: ring.check(a.scale(c))
    )


def find_dependence(ring: Polynomials, ys: Sequence, max_degree: int = 8) -> Poly:
    """A nonzero ``Q`` with ``Q(ys) = 0``, of least total degree up to ``max_degree``."""
    ys = [ring.convert(y) for y in ys]
    field = ring.field
    names = [f"y{k + 1}" for k in range(len(ys))]
    Yring = PolyRing(field, names, "lex")
    for deg in range(1, max_degree + 1):
        monos = monomials_up_to(len(ys), deg)
        values = [_evaluate(ring, Yring.monomial(mono), ys) for mono in monos]
        support = sorted({e for v in values for e in v.terms})
        rows = [[v.terms.get(e, field.zero) for v in values] for e in support]
        kernel = nullspace(rows, len(monos), field)
        if kernel:
            return Yring.poly(dict(zip(monos, kernel[0])))
    raise NotFoundWithinBounds(f"no relation of degree <= {max_degree}")


def relation_degree_bound(nvars: int, degree: int) -> int:
    """Least ``D`` with more monomials of degree <= D in ``nvars + 1`` unknowns than
    polynomials of degree <= ``degree * D`` in ``nvars`` variables."""
    D = 1
    while math.comb(D + nvars + 1, nvars + 1) <= math.comb(degree * D + nvars, nvars):
        D += 1
    return D


# integral extensions


@dataclass(frozen=True)
class IntegralIdentity:
    """``x^m (g1 + b x) = g`` with ``g = sum(cofactors[i] * a_i)`` over the ``G`` side."""

    m: int
    g1: object
    b: object
    g: object
    cofactors: Mapping[int, object]

    def verify(self, ring: CompRing, x, coeffs: Mapping[int, object], G: set[int]) -> bool:
        lhs = ring.mul(ring.pow(x, self.m), ring.add(self.g1, ring.mul(self.b, x)))
        if not ring.eq(lhs, self.g):
            return False
        if not set(self.cofactors) <= G:
            return False
        spanned = ring.total(ring.mul(c, ring.convert(coeffs[i])) for i, c in self.cofactors.items())
        return ring.eq(spanned, self.g)


def integral_relative_collapse(ring: CompRing, x, k: int, coeffs: Mapping[int, object], G1: set[int]) -> IntegralIdentity:
    """Identity for the relation ``x^k = sum_{i != k} a_i x^i`` and the split ``G1`` of the indices.

    Indices outside ``G1`` form ``G``.  With ``G1`` empty ``m = k`` and
    ``g1 = 1``; otherwise ``h`` is the least index in ``G1`` and ``g1`` is
    ``a_h`` (if ``h < k``) or ``1`` (if ``h > k``).
    """
    x = ring.convert(x)
    coeffs = {int(i): ring.convert(a) for i, a in coeffs.items()}
    if k in coeffs or k < 0 or any(i < 0 for i in coeffs):
        raise InputError("coefficients are indexed by exponents other than k")
    if not set(G1) <= set(coeffs):
        raise InputError("the split must use the coefficient indices")
    rhs = ring.total(ring.mul(a, ring.pow(x, i)) for i, a in coeffs.items())
    if not ring.eq(ring.pow(x, k), rhs):
        raise ContractError("x does not satisfy the relation")
    G = set(coeffs) - set(G1)
    one, zero = ring.one, ring.zero
    xp = lambda e: ring.pow(x, e)  # noqa: E731
    if not G1:
        m, g1, b = k, one, zero
        cof = {i: xp(i) for i in coeffs}
    else:
        h = min(G1)
        if h < k:
            m, g1 = h, coeffs[h]
            b = ring.sub(
                ring.total(ring.mul(a, xp(i - h - 1)) for i, a in coeffs.items() if i > h),
                xp(k - h - 1),
            )
            cof = {i: ring.neg(xp(i)) for i in coeffs if i < h}
        else:
            m, g1 = k, one
            b = ring.neg(ring.total(ring.mul(a, xp(i - k - 1)) for i, a in coeffs.items() if i > k))
            cof = {i: xp(i) for i in coeffs if i < k}
    g = ring.total(ring.mul(c, coeffs[i]) for i, c in cof.items())
    ident = IntegralIdentity(m, g1, b, g, cof)
    if not ident.verify(ring, x, coeffs, G):
        raise AssertionError("integral identity does not verify")
    return ident
