"""Sparse multivariate polynomials over an exact field.

A polynomial maps exponent tuples to nonzero coefficients.  Monomial orders
are given by flat integer sort keys (larger key = larger monomial), which the
Groebner engine also uses for its heaps.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable, Mapping, Sequence
from fractions import Fraction

from ..errors import InputError

Exp = tuple[int, ...]


def grevlex_key(e: Exp) -> tuple[int, ...]:
    return (sum(e), *(-x for x in reversed(e)))


def lex_key(e: Exp) -> tuple[int, ...]:
    return e


def block_key(split: int) -> Callable[[Exp], tuple[int, ...]]:
    """Elimination order: grevlex on ``e[:split]`` first, then grevlex on the rest."""

    def key(e: Exp) -> tuple[int, ...]:
        return grevlex_key(e[:split]) + grevlex_key(e[split:])

    return key


def order_key(order: str) -> Callable[[Exp], tuple[int, ...]]:
    if order == "grevlex":
        return grevlex_key
    if order == "lex":
        return lex_key
    if order.startswith("block"):
        return block_key(int(order[5:]))
    raise InputError(f"unknown monomial order {order!r}")


class PolyRing:
    """``field[variables]`` with a fixed monomial order."""

    def __init__(self, field, variables: Sequence[str], order: str = "grevlex"):
        self.field = field
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise InputError("variable names must be distinct")
        self.nvars = len(self.variables)
        self.order = order
        self.key = order_key(order)
        self._zero_exp = (0,) * self.nvars

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, PolyRing)
            and self.field == other.field
            and self.variables == other.variables
            and self.order == other.order
        )

    def __hash__(self) -> int:
        return hash((self.field, self.variables, self.order))

    def __repr__(self) -> str:
        return f"poly({self.field!r}, [{', '.join(self.variables)}])"

    def with_order(self, order: str) -> PolyRing:
        return PolyRing(self.field, self.variables, order)

    # constructors

    def poly(self, terms: Mapping[Exp, object]) -> Poly:
        norm = self.field.normalize
        conv = self.field.convert
        out = {}
        for e, c in terms.items():
            c = norm(conv(c))
            if c:
                out[tuple(e)] = c
        return Poly(self, out)

    def const(self, c) -> Poly:
        c = self.field.convert(c)
        return Poly(self, {self._zero_exp: c} if c else {})

    @property
    def zero(self) -> Poly:
        return Poly(self, {})

    @property
    def one(self) -> Poly:
        return self.const(1)

    def var(self, name_or_index: str | int) -> Poly:
        i = self.variables.index(name_or_index) if isinstance(name_or_index, str) else name_or_index
        e = [0] * self.nvars
        e[i] = 1
        return Poly(self, {tuple(e): self.field.one})

    def gens(self) -> list[Poly]:
        return [self.var(i) for i in range(self.nvars)]

    def monomial(self, e: Exp, c=1) -> Poly:
        return self.poly({tuple(e): c})

    def coerce(self, x) -> Poly:
        if isinstance(x, Poly):
            if x.ring == self:
                return x
            if x.ring.variables == self.variables and x.ring.field == self.field:
                return Poly(self, dict(x.terms))
            raise InputError(f"cannot move {x} into {self}")
        return self.const(x)


class Poly:
    __slots__ = ("ring", "terms", "_lead")

    def __init__(self, ring: PolyRing, terms: dict[Exp, object]):
        self.ring = ring
        self.terms = terms
        self._lead = None

    # structure

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def lead(self) -> tuple[Exp, object]:
        if self._lead is None:
            if not self.terms:
                raise ValueError("the zero polynomial has no leading term")
            e = max(self.terms, key=self.ring.key)
            self._lead = (e, self.terms[e])
        return self._lead

    def lm(self) -> Exp:
        return self.lead()[0]

    def lc(self):
        return self.lead()[1]

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self):
        return self.terms.get(self.ring._zero_exp, self.ring.field.zero)

    def monic(self) -> Poly:
        inv = self.ring.field.inv(self.lc())
        return self.scale(inv)

    def scale(self, c) -> Poly:
        c = self.ring.field.convert(c)
        if not c:
            return Poly(self.ring, {})
        norm = self.ring.field.normalize
        return Poly(self.ring, {e: norm(v * c) for e, v in self.terms.items()})

    def mul_term(self, e: Exp, c) -> Poly:
        norm = self.ring.field.normalize
        return Poly(self.ring, {tuple(a + b for a, b in zip(f, e)): norm(v * c) for f, v in self.terms.items()})

    # arithmetic

    def _other(self, other) -> Poly | None:
        if isinstance(other, Poly):
            if other.ring is self.ring or other.ring == self.ring:
                return other
            return None
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        norm = self.ring.field.normalize
        out = dict(self.terms)
        for e, c in o.terms.items():
            v = norm(out.get(e, 0) + c)
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        norm = self.ring.field.normalize
        return Poly(self.ring, {e: norm(-c) for e, c in self.terms.items()})

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        norm = self.ring.field.normalize
        out: dict[Exp, object] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Poly(self.ring, {e: v for e, v in ((e, norm(v)) for e, v in out.items()) if v})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Poly:
        if k < 0:
            raise ValueError("negative power")
        result = self.ring.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    # evaluation

    def evaluate(self, values: Sequence, one, mul=None, add=None, scale=None):
        """Substitute ``values`` for the variables.

        Operations default to Python operators; pass ``mul``/``add``/``scale``
        to evaluate inside another ring.
        """
        mul = mul or (lambda a, b: a * b)
        add = add or (lambda a, b: a + b)
        scale = scale or (lambda c, a: a * c)
        powers: dict[tuple[int, int], object] = {}

        def power(i: int, k: int):
            if (i, k) not in powers:
                powers[i, k] = one if k == 0 else mul(power(i, k - 1), values[i])
            return powers[i, k]

        total = None
        for e, c in self.terms.items():
            term = one
            for i, k in enumerate(e):
                if k:
                    term = mul(term, power(i, k))
            term = scale(c, term)
            total = term if total is None else add(total, term)
        return scale(0, one) if total is None else total

    # display

    def sorted_terms(self) -> list[tuple[Exp, object]]:
        return sorted(self.terms.items(), key=lambda t: self.ring.key(t[0]), reverse=True)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.ring.variables, e) if k
            )
            c = _signed_int(c, self.ring.field)
            neg = c < 0
            mag = -c if neg else c
            if mono:
                body = mono if mag == 1 else f"{_fmt(mag)}*{mono}"
            else:
                body = _fmt(mag)
            parts.append(("-" if neg else "+", body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"Poly({self})"


def _signed_int(c, field):
    """Prime-field residues print in the symmetric range."""
    p = getattr(field, "p", None)
    if p is not None and c > p // 2:
        return c - p
    return c


def _fmt(c) -> str:
    if isinstance(c, Fraction) and c.denominator == 1:
        return str(c.numerator)
    if isinstance(c, Fraction):
        return f"({c.numerator}/{c.denominator})"
    return str(c)


def monomials_up_to(nvars: int, degree: int) -> list[Exp]:
    """All exponent tuples of total degree at most ``degree``, by degree then lex."""
    out: list[Exp] = []

    def rec(prefix: list[int], left: int, remaining: int) -> Iterable[Exp]:
        if remaining == 0:
            yield tuple(prefix)
            return
        for k in range(left, -1, -1):
            yield from rec(prefix + [k], left - k, remaining - 1)

    for d in range(degree + 1):
        out.extend(sorted(e for e in rec([], d, nvars) if sum(e) == d))
    return out
