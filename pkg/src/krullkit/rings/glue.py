"""Collapse identities, localizations and gluing along a comaximal family.

A :class:`CollapseIdentity` for a chain records, per level, the exponents of
``u_k`` over ``U_k`` and the cofactors of ``j_k`` over ``J_k``, plus a
``scale`` multiplying the innermost monoid element:

    u_0 (u_1 ( ... (u_l * scale + j_l) ... ) + j_1) + j_0 = 0.

If the chain collapses in every ``A[1/s_i]`` and ``sum(c_i s_i) = 1``, the
local identities are glued into one over ``A``: clear denominators, make the
monoid elements agree by multiplying in the others, then combine with a
partition of unity ``sum(a_i s_i^e_i) = 1``.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from .. import syntax
from ..errors import ContractError, InputError
from ..syntax import ParseError
from .certificates import SingularCertificate
from .chains import RingChain, elementary_ring_chain
from .core import CompRing, Integers, cofactor
from .ideals import FGIdeal

MAX_KILL_EXPONENT = 256


class Localization(CompRing):
    """``base[1/s]``; an element ``(a, k)`` stands for ``a / s^k``."""

    kind = "local"

    def __init__(self, base: CompRing, s):
        self.base = base
        self.s = base.convert(s)
        self.zero = (base.zero, 0)
        self.one = (base.one, 0)

    def spec(self) -> str:
        return f"{self.base.spec()}[1/{self.base.fmt(self.s)}]"

    def _align(self, x, k):
        a, j = x
        return self.base.mul(a, self.base.pow(self.s, k - j))

    def from_int(self, k: int):
        return (self.base.from_int(k), 0)

    def lift(self, a):
        return (self.base.convert(a), 0)

    def add(self, x, y):
        k = max(x[1], y[1])
        return (self.base.add(self._align(x, k), self._align(y, k)), k)

    def mul(self, x, y):
        return (self.base.mul(x[0], y[0]), x[1] + y[1])

    def neg(self, x):
        return (self.base.neg(x[0]), x[1])

    @property
    def _killer(self) -> FGIdeal:
        return FGIdeal(self.base, []).saturate(self.s)

    def is_zero(self, x) -> bool:
        return self._killer.contains(x[0])

    def kill_exponent(self, a) -> int:
        """Least ``M`` with ``s^M a = 0`` in the base; raises if ``a`` is not zero here."""
        if not self._killer.contains(a):
            raise ContractError("element is not zero in the localization")
        base = self.base
        M = 0
        while not base.is_zero(base.mul(base.pow(self.s, M), a)):
            M += 1
            if M > MAX_KILL_EXPONENT:
                raise ContractError("annihilating power of s is too large")
        return M

    def var(self, name: str):
        return self.lift(self.base.var(name))

    def _div(self, x, y, tok=None):
        b, k = y
        j = 0
        while j <= MAX_KILL_EXPONENT:
            c = cofactor(self.base, self.base.pow(self.s, j), b)
            if c is not None:
                # x / (b / s^k) = x * c * s^k / s^j
                return self.mul(x, (self.base.mul(c, self.base.pow(self.s, k)), j))
            j += 1
        line, col = (tok.line, tok.col) if tok is not None else (0, 0)
        raise ParseError(syntax.TYPE, "divisor is not a unit of the localization", line, col)

    def check(self, x):
        if isinstance(x, tuple) and len(x) == 2:
            return (self.base.convert(x[0]), int(x[1]))
        if isinstance(x, Fraction) and isinstance(self.base, Integers):
            return self.parse(f"{x.numerator}/{x.denominator}")
        return self.lift(x)

    def fmt(self, x) -> str:
        a, k = x
        if isinstance(self.base, Integers):
            return str(Fraction(a, self.s**k)) if k else str(a)
        if k == 0:
            return self.base.fmt(a)
        return f"({self.base.fmt(a)}) / ({self.base.fmt(self.s)})^{k}"


@dataclass(frozen=True)
class CollapseIdentity:
    u_exps: tuple[tuple[int, ...], ...]
    j_cofs: tuple[tuple, ...]
    scale: object = None

    def value(self, ring: CompRing, chain: RingChain):
        levels = chain.levels
        if len(levels) != len(self.u_exps) or len(levels) != len(self.j_cofs):
            raise InputError("identity and chain have different lengths")
        inner = None
        for (J, U), exps, cofs in zip(reversed(levels), reversed(self.u_exps), reversed(self.j_cofs)):
            if len(exps) != len(U) or len(cofs) != len(J):
                raise InputError("identity does not match the chain's level sizes")
            u = ring.product(ring.pow(x, e) for x, e in zip(U, exps))
            j = ring.dot(list(cofs), list(J))
            if inner is None:
                scale = ring.one if self.scale is None else self.scale
                inner = ring.add(ring.mul(u, scale), j)
            else:
                inner = ring.add(ring.mul(u, inner), j)
        return inner

    def verify(self, ring: CompRing, chain: RingChain) -> bool:
        return ring.is_zero(self.value(ring, chain))

    def to_dict(self, ring: CompRing) -> dict:
        out = {"u": [list(e) for e in self.u_exps], "j": [[ring.fmt(c) for c in cs] for cs in self.j_cofs]}
        if self.scale is not None:
            out["scale"] = ring.fmt(self.scale)
        return out


def identity_from_certificate(ring: CompRing, cert: SingularCertificate) -> CollapseIdentity:
    """The identity for the elementary chain of ``xs`` that a certificate spells out."""
    ell = len(cert.ms)
    if ell == 0:
        return CollapseIdentity(((),), ((),))
    u = [(m,) for m in cert.ms] + [()]
    j = [()] + [(ring.convert(cert.as_[i - 1]),) for i in range(1, ell + 1)]
    return CollapseIdentity(tuple(u), tuple(j))


@dataclass
class GlueResult:
    identity: CollapseIdentity
    exponents: tuple[int, ...]
    partition: tuple
    steps: list[str] = field(default_factory=list)


def partition_of_unity(ring: CompRing, ss: Sequence, cs: Sequence, es: Sequence[int]) -> list:
    """``a`` with ``sum(a_i s_i^e_i) = 1``, from ``(sum c_i s_i)^E`` with ``E = sum(e_i - 1) + 1``."""
    n = len(ss)
    E = sum(e - 1 for e in es) + 1
    a = [ring.zero] * n
    for ks in _compositions(E, n):
        i = next(i for i in range(n) if ks[i] >= es[i])
        coef = math.factorial(E)
        for k in ks:
            coef //= math.factorial(k)
        term = ring.from_int(coef)
        for t in range(n):
            term = ring.mul(term, ring.pow(ring.convert(cs[t]), ks[t]))
            term = ring.mul(term, ring.pow(ss[t], ks[t] - es[t] if t == i else ks[t]))
        a[i] = ring.add(a[i], term)
    return a


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for k in range(total + 1):
        for rest in _compositions(total - k, parts - 1):
            yield (k, *rest)


def glue_collapses(
    ring: CompRing, chain: RingChain, ss: Sequence, cs: Sequence, local: Sequence[CollapseIdentity]
) -> GlueResult:
    """Glue identities valid in each ``ring[1/s_i]`` into one valid in ``ring``."""
    ss = [ring.convert(s) for s in ss]
    cs = [ring.convert(c) for c in cs]
    n = len(ss)
    if not (n == len(cs) == len(local)) or n == 0:
        raise InputError("need one cofactor and one local identity per element of the cover")
    if not ring.eq(ring.dot(cs, ss), ring.one):
        raise ContractError("the cover is not comaximal with the given cofactors")
    steps = []
    depth = len(chain.levels)

    # 1. clear denominators: multiply by s^(K+M); the innermost term picks up the scale
    cleared = []
    es = []
    for i, (s, ident) in enumerate(zip(ss, local)):
        loc = Localization(ring, s)
        lchain = RingChain(tuple((tuple(loc.lift(x) for x in J), tuple(loc.lift(x) for x in U)) for J, U in chain.levels))
        cofs = [[loc.check(c) for c in lv] for lv in ident.j_cofs]
        lident = CollapseIdentity(ident.u_exps, tuple(tuple(lv) for lv in cofs))
        if not lident.verify(loc, lchain):
            raise ContractError(f"local identity {i} does not hold in {loc.spec()}")
        K = max((c[1] for lv in cofs for c in lv), default=0)
        lifted = CollapseIdentity(
            ident.u_exps,
            tuple(tuple(loc._align(c, K) for c in lv) for lv in cofs),
            ring.pow(s, K),
        )
        M = loc.kill_exponent(lifted.value(ring, chain))
        sM = ring.pow(s, M)
        cleared.append(
            CollapseIdentity(
                ident.u_exps, tuple(tuple(ring.mul(sM, c) for c in lv) for lv in lifted.j_cofs), ring.pow(s, K + M)
            )
        )
        es.append(K + M)
        steps.append(f"cleared denominators for s={ring.fmt(s)} with exponent {K + M}")
        if not cleared[-1].verify(ring, chain):
            raise AssertionError("clearing denominators broke the identity")

    # an identity needing no power of s is already global
    for i, e in enumerate(es):
        if e == 0:
            steps.append(f"identity for s={ring.fmt(ss[i])} holds without denominators")
            ident = CollapseIdentity(cleared[i].u_exps, cleared[i].j_cofs)
            return GlueResult(ident, tuple(es), tuple(ring.one if k == i else ring.zero for k in range(n)), steps)

    # 2. common monoid elements: u_k = prod_i u_{k,i}
    u_common = tuple(
        tuple(sum(c.u_exps[k][t] for c in cleared) for t in range(len(chain.levels[k][1]))) for k in range(depth)
    )

    def u_val(exps, k):
        return ring.product(ring.pow(x, e) for x, e in zip(chain.levels[k][1], exps))

    unified = []
    for i, c in enumerate(cleared):
        vs = [
            ring.product(u_val(cleared[o].u_exps[k], k) for o in range(n) if o != i) for k in range(depth)
        ]
        cofs = []
        for k in range(depth):
            factor = ring.product(vs[k:])
            cofs.append(tuple(ring.mul(factor, x) for x in c.j_cofs[k]))
        unified.append(CollapseIdentity(u_common, tuple(cofs), c.scale))
        if not unified[-1].verify(ring, chain):
            raise AssertionError("unifying monoid elements broke the identity")
    steps.append("multiplied each identity by the other monoid elements")

    # 3. combine with sum(a_i s_i^e_i) = 1
    a = partition_of_unity(ring, ss, cs, es)
    if not ring.eq(ring.total(ring.mul(ai, ring.pow(s, e)) for ai, s, e in zip(a, ss, es)), ring.one):
        raise AssertionError("partition of unity is wrong")
    cofs = []
    for k in range(depth):
        cofs.append(
            tuple(ring.total(ring.mul(a[i], unified[i].j_cofs[k][t]) for i in range(n)) for t in range(len(chain.levels[k][0])))
        )
    glued = CollapseIdentity(u_common, tuple(cofs))
    if not glued.verify(ring, chain):
        raise ContractError("glued identity fails to verify")
    steps.append(f"combined with the partition of unity of exponents {es}")
    return GlueResult(glued, tuple(es), tuple(a), steps)


def glue_certificates(
    ring: CompRing, xs: Sequence, ss: Sequence, cs: Sequence, certs: Sequence[SingularCertificate]
) -> GlueResult:
    """:func:`glue_collapses` for the elementary chain of ``xs`` and local certificates."""
    chain = elementary_ring_chain(ring, xs)
    local = [identity_from_certificate(Localization(ring, s), c) for s, c in zip(ss, certs)]
    local = [CollapseIdentity(li.u_exps, li.j_cofs) for li in local]
    return glue_collapses(ring, chain, ss, cs, local)
