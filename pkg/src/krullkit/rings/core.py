"""Computable commutative rings.

Four kinds share one small interface: the integers, the integers modulo
``n``, polynomial rings over ``QQ`` or ``GF(p)``, and quotients of the latter
by finitely generated ideals.  Elements are plain values (``int`` or
:class:`Poly`) kept in canonical form, so ``==`` is equality in the ring.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Sequence
from functools import cached_property

from .. import syntax
from ..errors import InputError
from ..syntax import ExprOps, ParseError, TokenStream
from .fields import GF, QQ, PrimeField, RationalField
from .groebner import GroebnerBasis, groebner, lift
from .poly import Poly, PolyRing


class CompRing:
    kind = "ring"

    # subclasses provide: zero, one, from_int, add, mul, neg, is_zero, var, spec

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def pow(self, a, k: int):
        if k < 0:
            raise InputError("negative exponent")
        result, base = self.one, a
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def eq(self, a, b) -> bool:
        return self.is_zero(self.sub(a, b))

    def product(self, xs: Iterable):
        out = self.one
        for x in xs:
            out = self.mul(out, x)
        return out

    def total(self, xs: Iterable):
        out = self.zero
        for x in xs:
            out = self.add(out, x)
        return out

    def dot(self, cs: Sequence, xs: Sequence):
        if len(cs) != len(xs):
            raise InputError("cofactor count does not match generator count")
        return self.total(self.mul(c, x) for c, x in zip(cs, xs))

    @property
    def is_trivial(self) -> bool:
        return self.is_zero(self.one)

    # text

    def ops(self) -> ExprOps:
        return ExprOps(
            const=self.from_int, var=self.var, add=self.add, sub=self.sub, mul=self.mul, neg=self.neg, pow=self.pow,
            div=self._div if hasattr(self, "_div") else None,
        )

    def parse(self, text: str):
        return syntax.parse_expression(text, self.ops())

    def convert(self, x):
        """Accept an element, an ``int`` or a string."""
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, bool):
            raise InputError("booleans are not ring elements")
        if isinstance(x, int):
            return self.from_int(x)
        return self.check(x)

    def check(self, x):
        return x

    def fmt(self, x) -> str:
        return str(x)

    def __repr__(self) -> str:
        return self.spec()

    def __eq__(self, other: object) -> bool:
        return isinstance(other, CompRing) and self.spec() == other.spec()

    def __hash__(self) -> int:
        return hash(self.spec())


class Integers(CompRing):
    kind = "ZZ"
    zero = 0
    one = 1

    def from_int(self, k: int) -> int:
        return k

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def is_zero(self, a) -> bool:
        return a == 0

    def var(self, name: str):
        raise KeyError(name)

    def check(self, x):
        if isinstance(x, int) and not isinstance(x, bool):
            return x
        raise InputError(f"{x!r} is not an integer")

    def spec(self) -> str:
        return "ZZ"


class IntegersMod(CompRing):
    kind = "ZZmod"

    def __init__(self, n: int):
        if n < 1:
            raise InputError("the modulus must be positive")
        self.n = n
        self.zero = 0
        self.one = 1 % n

    def from_int(self, k: int) -> int:
        return k % self.n

    def add(self, a, b):
        return (a + b) % self.n

    def mul(self, a, b):
        return a * b % self.n

    def neg(self, a):
        return -a % self.n

    def is_zero(self, a) -> bool:
        return a % self.n == 0

    def var(self, name: str):
        raise KeyError(name)

    def check(self, x):
        if isinstance(x, int) and not isinstance(x, bool):
            return x % self.n
        raise InputError(f"{x!r} is not a residue")

    def spec(self) -> str:
        return f"ZZmod({self.n})"


class Polynomials(CompRing):
    """``field[variables]`` with grevlex as the working order."""

    kind = "poly"

    def __init__(self, field, variables: Sequence[str]):
        if not isinstance(field, (RationalField, PrimeField)):
            raise InputError("polynomial coefficients must be QQ or GF(p)")
        self.field = field
        self.variables = tuple(variables)
        self.R = PolyRing(field, self.variables, "grevlex")

    @property
    def zero(self) -> Poly:
        return self.R.zero

    @property
    def one(self) -> Poly:
        return self.R.one

    @property
    def base(self) -> Polynomials:
        return self

    @property
    def relations(self) -> tuple[Poly, ...]:
        return ()

    def from_int(self, k: int) -> Poly:
        return self.R.const(k)

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def is_zero(self, a) -> bool:
        return a.is_zero()

    def var(self, name: str) -> Poly:
        if name not in self.variables:
            raise KeyError(name)
        return self.R.var(name)

    def _div(self, a, b, tok=None):
        if not b.is_constant() or b.is_zero():
            raise ParseError(syntax.SYNTAX, "division is only by nonzero constants", *_pos(tok))
        return a.scale(self.field.inv(b.constant_value()))

    def check(self, x):
        return self.R.coerce(x)

    def reduce(self, f: Poly) -> Poly:
        return f

    def fmt(self, x) -> str:
        return str(x)

    def spec(self) -> str:
        return f"poly({self.field!r}, [{', '.join(self.variables)}])"


class Quotient(Polynomials):
    """``base / <relations>``; elements are normal forms for the relation basis."""

    kind = "quot"

    def __init__(self, base: Polynomials, relations: Sequence[Poly]):
        super().__init__(base.field, base.variables)
        rels = [base.base.relations, [base.R.coerce(r) for r in relations]]
        self.relations_given = tuple(r for group in rels for r in group if r)
        self._poly = Polynomials(base.field, base.variables)

    @property
    def base(self) -> Polynomials:
        return self._poly

    @property
    def relations(self) -> tuple[Poly, ...]:
        return self.relations_given

    @cached_property
    def gb(self) -> GroebnerBasis:
        return groebner(list(self.relations_given), self.R) if self.relations_given else GroebnerBasis(self.R, ())

    def reduce(self, f: Poly) -> Poly:
        return self.gb.reduce(f)

    @property
    def one(self) -> Poly:
        return self.reduce(self.R.one)

    def from_int(self, k: int) -> Poly:
        return self.reduce(self.R.const(k))

    def add(self, a, b):
        return self.reduce(a + b)

    def mul(self, a, b):
        return self.reduce(a * b)

    def neg(self, a):
        return -a

    def is_zero(self, a) -> bool:
        return self.reduce(a).is_zero()

    def var(self, name: str) -> Poly:
        return self.reduce(super().var(name))

    def check(self, x):
        return self.reduce(self.R.coerce(x))

    def spec(self) -> str:
        rels = ", ".join(str(r) for r in self.relations_given)
        return f"quot({self.base.spec()}, [{rels}])"


ZZ = Integers()


def _pos(tok) -> tuple[int, int]:
    return (tok.line, tok.col) if tok is not None else (0, 0)


# ring spec grammar


def parse_ring_spec(ts: TokenStream) -> CompRing:
    tok = ts.peek()
    if ts.accept("ZZ"):
        return ZZ
    if ts.accept("ZZmod"):
        (n,) = _args(ts, tok, "ZZmod", [_int_arg])
        if n < 1:
            raise ParseError(syntax.TYPE, "the modulus must be positive", tok.line, tok.col)
        return IntegersMod(n)
    if ts.accept("poly"):
        field, names = _args(ts, tok, "poly", [_field_arg, _ident_list])
        if len(set(names)) != len(names):
            raise ParseError(syntax.NAME, "duplicate variable name", tok.line, tok.col)
        return Polynomials(field, names)
    if ts.accept("quot"):
        ts.expect("(")
        base = parse_ring_spec(ts)
        if not isinstance(base, Polynomials):
            raise ParseError(syntax.TYPE, "quot needs a polynomial ring", tok.line, tok.col)
        if not ts.accept(","):
            if ts.at(")"):
                raise ParseError(syntax.ARITY, "quot takes 2 arguments, got 1", tok.line, tok.col)
            ts.fail()
        ts.expect("[")
        rels = []
        if not ts.at("]"):
            rels.append(syntax.parse_expr(ts, base.ops()))
            while ts.accept(","):
                rels.append(syntax.parse_expr(ts, base.ops()))
        ts.expect("]")
        _close(ts, tok, "quot", 2)
        return Quotient(base, rels)
    ts.fail()


def _args(ts: TokenStream, tok, name: str, readers) -> list:
    ts.expect("(")
    out = []
    for k, read in enumerate(readers):
        if k:
            if not ts.accept(","):
                if ts.at(")"):
                    raise ParseError(syntax.ARITY, f"{name} takes {len(readers)} argument(s), got {k}", tok.line, tok.col)
                ts.fail()
        elif ts.at(")"):
            raise ParseError(syntax.ARITY, f"{name} takes {len(readers)} argument(s), got 0", tok.line, tok.col)
        out.append(read(ts))
    _close(ts, tok, name, len(readers))
    return out


def _close(ts: TokenStream, tok, name: str, count: int) -> None:
    if ts.at(","):
        raise ParseError(syntax.ARITY, f"{name} takes {count} argument(s)", tok.line, tok.col)
    ts.expect(")")


def _int_arg(ts: TokenStream) -> int:
    return int(ts.expect_kind("int").text)


def _field_arg(ts: TokenStream):
    tok = ts.peek()
    if ts.accept("QQ"):
        return QQ
    if ts.accept("GF"):
        (p,) = _args(ts, tok, "GF", [_int_arg])
        try:
            return GF(p)
        except InputError as exc:
            raise ParseError(syntax.TYPE, str(exc), tok.line, tok.col) from None
    ts.fail()


def _ident_list(ts: TokenStream) -> list[str]:
    ts.expect("[")
    names = []
    if not ts.at("]"):
        names.append(ts.expect_kind("ident").text)
        while ts.accept(","):
            names.append(ts.expect_kind("ident").text)
    ts.expect("]")
    return names


def ring_from_spec(text: str) -> CompRing:
    """``ZZ``, ``ZZmod(12)``, ``poly(QQ, [x, y])``, ``quot(poly(QQ, [t]), [t^2 + 1])``."""
    ts = TokenStream.of(text)
    ring = parse_ring_spec(ts)
    ts.expect_end()
    return ring


def gcd_all(xs: Iterable[int]) -> int:
    g = 0
    for x in xs:
        g = math.gcd(g, x)
    return g


def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """``(g, x, y)`` with ``a*x + b*y = g = gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def cofactor(ring: CompRing, target, divisor):
    """Some ``c`` with ``c * divisor == target``, or ``None``."""
    if isinstance(ring, Integers):
        if divisor == 0:
            return 0 if target == 0 else None
        q, r = divmod(target, divisor)
        return q if r == 0 else None
    if isinstance(ring, IntegersMod):
        g, x, _ = ext_gcd(divisor, ring.n)
        if target % g:
            return None
        return x * (target // g) % ring.n
    if isinstance(ring, Polynomials):
        cs = lift(ring.R.coerce(target), [ring.R.coerce(divisor), *ring.relations])
        return None if cs is None else ring.check(cs[0])
    raise InputError(f"unsupported ring {ring!r}")
