"""Input files: named lattices, rings and morphisms.

Grammar (``#`` starts a comment, identifiers are ``[a-zA-Z][a-zA-Z0-9_]*``)::

    file      = { statement } ;
    statement = lattice | ring | morphism ;
    lattice   = "lattice" IDENT "{" { item } "}" ;
    item      = "gens" ":" [ names ] ";"
              | "rel" ":" [ names ] "|-" [ names ] ";" ;
    ring      = "ring" IDENT "=" ringspec ";" ;
    ringspec  = "ZZ" | "ZZmod" "(" INT ")"
              | "poly" "(" field "," "[" [ names ] "]" ")"
              | "quot" "(" ringspec "," "[" [ poly { "," poly } ] "]" ")" ;
    field     = "QQ" | "GF" "(" INT ")" ;
    morphism  = "morphism" IDENT ":" IDENT "->" IDENT "{" { IDENT "->" term ";" } "}" ;
    term      = meet { "|" meet } ;
    meet      = atom { "&" atom } ;
    atom      = "0" | "1" | IDENT | "(" term ")" ;
    names     = IDENT { "," IDENT } ;
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .. import syntax
from ..entailment import EntailmentPresentation, Sequent
from ..finlat import DEFAULT_ELEMENT_CAP, FinLattice, build_from_presentation
from ..morphisms import LatticeMorphism
from ..rings.core import CompRing, parse_ring_spec
from ..syntax import ParseError, TokenStream


@dataclass(frozen=True)
class LatticeDecl:
    name: str
    presentation: EntailmentPresentation

    def to_source(self) -> str:
        pres = self.presentation
        order = {g: i for i, g in enumerate(pres.generators)}
        lines = [f"lattice {self.name} {{"]
        if pres.generators:
            lines.append(f"  gens: {', '.join(pres.generators)};")
        for ax in pres.axioms:
            lhs = ", ".join(sorted(ax.lhs, key=order.__getitem__))
            rhs = ", ".join(sorted(ax.rhs, key=order.__getitem__))
            lines.append(" ".join(["  rel:", *([lhs] if lhs else []), "|-", *([rhs] if rhs else [])]) + ";")
        lines.append("}")
        return "\n".join(lines)


@dataclass(frozen=True)
class RingDecl:
    name: str
    ring: CompRing

    def to_source(self) -> str:
        return f"ring {self.name} = {self.ring.spec()};"


@dataclass(frozen=True)
class MorphismDecl:
    name: str
    dom: str
    cod: str
    images: tuple[tuple[str, tuple], ...]

    def to_source(self) -> str:
        lines = [f"morphism {self.name} : {self.dom} -> {self.cod} {{"]
        for g, term in self.images:
            lines.append(f"  {g} -> {syntax.format_lattice_term(term)};")
        lines.append("}")
        return "\n".join(lines)


@dataclass
class Session:
    decls: dict[str, LatticeDecl | RingDecl | MorphismDecl] = field(default_factory=dict)
    _lattices: dict[str, FinLattice] = field(default_factory=dict, repr=False, compare=False)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Session) and list(self.decls.items()) == list(other.decls.items())

    def names(self, kind: type) -> list[str]:
        return [n for n, d in self.decls.items() if isinstance(d, kind)]

    def _get(self, name: str, kind: type, what: str):
        decl = self.decls.get(name)
        if not isinstance(decl, kind):
            known = ", ".join(self.names(kind)) or "none"
            raise ParseError(syntax.NAME, f"no {what} named {name!r} (known: {known})")
        return decl

    def presentation(self, name: str) -> EntailmentPresentation:
        return self._get(name, LatticeDecl, "lattice").presentation

    def lattice(self, name: str, cap: int = DEFAULT_ELEMENT_CAP) -> FinLattice:
        if name not in self._lattices:
            self._lattices[name] = build_from_presentation(self.presentation(name), cap)
        return self._lattices[name]

    def ring(self, name: str) -> CompRing:
        return self._get(name, RingDecl, "ring").ring

    def morphism(self, name: str, cap: int = DEFAULT_ELEMENT_CAP) -> LatticeMorphism:
        decl = self._get(name, MorphismDecl, "morphism")
        dom, cod = self.lattice(decl.dom, cap), self.lattice(decl.cod, cap)
        pairs = [(dom.generators[g], syntax.eval_lattice_term(t, cod)) for g, t in decl.images]
        return LatticeMorphism.from_generators(dom, cod, pairs)

    def to_source(self) -> str:
        return "\n".join(d.to_source() for d in self.decls.values()) + "\n"


def parse(text: str) -> Session:
    ts = TokenStream.of(text)
    session = Session()
    while not ts.at_kind("eof"):
        tok = ts.peek()
        if ts.accept("lattice"):
            decl = _lattice(ts)
        elif ts.accept("ring"):
            decl = _ring(ts)
        elif ts.accept("morphism"):
            decl = _morphism(ts, session)
        else:
            ts.fail()
        if decl.name in session.decls:
            raise ParseError(syntax.NAME, f"{decl.name!r} is already defined", tok.line, tok.col)
        session.decls[decl.name] = decl
    return session


def _names(ts: TokenStream, stops: tuple[str, ...]) -> list:
    out = []
    if any(ts.at(s) for s in stops):
        return out
    out.append(ts.expect_kind("ident"))
    while ts.accept(","):
        out.append(ts.expect_kind("ident"))
    return out


def _lattice(ts: TokenStream) -> LatticeDecl:
    name = ts.expect_kind("ident").text
    ts.expect("{")
    gens: list[str] = []
    rels: list[tuple[list, list]] = []
    while not ts.accept("}"):
        if ts.accept("gens"):
            ts.expect(":")
            for tok in _names(ts, (";",)):
                if tok.text in gens:
                    raise ParseError(syntax.NAME, f"generator {tok.text!r} declared twice", tok.line, tok.col)
                gens.append(tok.text)
            ts.expect(";")
        elif ts.accept("rel"):
            ts.expect(":")
            lhs = _names(ts, ("|-",))
            ts.expect("|-")
            rhs = _names(ts, (";",))
            ts.expect(";")
            rels.append((lhs, rhs))
        else:
            ts.fail()
    axioms = []
    for lhs, rhs in rels:
        for tok in lhs + rhs:
            if tok.text not in gens:
                raise ParseError(syntax.NAME, f"unknown generator {tok.text!r}", tok.line, tok.col)
        axioms.append(Sequent.of([t.text for t in lhs], [t.text for t in rhs]))
    return LatticeDecl(name, EntailmentPresentation(tuple(gens), tuple(axioms)))


def _ring(ts: TokenStream) -> RingDecl:
    name = ts.expect_kind("ident").text
    ts.expect("=")
    ring = parse_ring_spec(ts)
    ts.expect(";")
    return RingDecl(name, ring)


def _morphism(ts: TokenStream, session: Session) -> MorphismDecl:
    name = ts.expect_kind("ident").text
    ts.expect(":")
    ends = []
    for k in range(2):
        tok = ts.expect_kind("ident")
        if not isinstance(session.decls.get(tok.text), LatticeDecl):
            raise ParseError(syntax.NAME, f"no lattice named {tok.text!r}", tok.line, tok.col)
        ends.append(tok.text)
        if k == 0:
            ts.expect("->")
    dom_names = session.decls[ends[0]].presentation.generators
    cod_names = session.decls[ends[1]].presentation.generators
    start = ts.expect("{")
    images: dict[str, tuple] = {}
    while not ts.accept("}"):
        tok = ts.expect_kind("ident")
        if tok.text not in dom_names:
            raise ParseError(syntax.NAME, f"{tok.text!r} is not a generator of the domain", tok.line, tok.col)
        if tok.text in images:
            raise ParseError(syntax.ARITY, f"{tok.text!r} is mapped twice", tok.line, tok.col)
        ts.expect("->")
        term = syntax.parse_lattice_term(ts)
        _check_term(term, cod_names)
        ts.expect(";")
        images[tok.text] = syntax.strip_positions(term)
    missing = [g for g in dom_names if g not in images]
    if missing:
        raise ParseError(syntax.ARITY, f"no image given for {', '.join(missing)}", start.line, start.col)
    return MorphismDecl(name, ends[0], ends[1], tuple((g, images[g]) for g in dom_names))


def _check_term(term: tuple, names) -> None:
    if term[0] == "gen":
        if term[1] not in names:
            raise ParseError(syntax.NAME, f"{term[1]!r} is not a generator of the codomain", term[2], term[3])
    elif term[0] in ("meet", "join"):
        for t in term[1:]:
            _check_term(t, names)
