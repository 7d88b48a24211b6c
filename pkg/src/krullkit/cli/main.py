"""``krull-kit`` command line.

Exit codes: 0 the property holds or the value was computed, 1 the property
fails (the report carries a counterexample), 2 parse or usage error, 3 a
resource cap was hit before an answer was reached.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections.abc import Sequence
from dataclasses import dataclass, field
from pathlib import Path

from .. import __version__, syntax
from ..dimension import (
    DEFAULT_ENVELOPE_CAP,
    BooleanEnvelope,
    dim_espanol,
    dim_leq,
    dimension,
    espanol_normal_form,
)
from ..entailment import check_entailment_laws, lattice_relation
from ..errors import (
    ContractError,
    InputError,
    KrullKitError,
    NotFoundWithinBounds,
    ResourceError,
)
from ..finlat import DEFAULT_ELEMENT_CAP, FinLattice
from ..krull_functor import DEFAULT_POINT_CAP, kr_lattice, monotone_prime_tuples
from ..morphisms import (
    is_going_down,
    is_going_up,
    is_lying_over,
    relative_dim_leq,
    relative_dimension,
)
from ..primes_chains import (
    IdealisticChain,
    chain_collapses,
    refining_prime_chain,
    saturate_chain,
)
from ..rings import (
    SingularCertificate,
    elementary_ring_chain,
    find_singular_certificate,
    glue_certificates,
    is_comaximal,
    is_singular,
    verify_singular_certificate,
    zar_entails,
)
from ..rings.core import CompRing, ring_from_spec
from ..rings.glue import Localization
from ..syntax import ParseError, TokenStream
from .session import LatticeDecl, RingDecl, Session, parse

OK, FAILS, USAGE, RESOURCE = 0, 1, 2, 3


@dataclass
class Report:
    code: int
    data: dict
    lines: list[str] = field(default_factory=list)


# helpers


def _load(path: str) -> Session:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return parse(text)


def _lattice(args) -> tuple[Session, str, FinLattice]:
    session = _load(args.file)
    name = args.lattice
    if name is None:
        names = session.names(LatticeDecl)
        if len(names) != 1:
            raise InputError("the file does not declare exactly one lattice; choose one with --lattice")
        name = names[0]
    return session, name, session.lattice(name, args.max_elements)


def _labels(lat: FinLattice, xs) -> list[str]:
    return [lat.label(x) for x in xs]


def _chain(lat: FinLattice, text: str) -> IdealisticChain:
    levels = syntax.parse_chain_text(text)
    return IdealisticChain.of(
        *[([syntax.eval_lattice_term(t, lat) for t in J], [syntax.eval_lattice_term(t, lat) for t in U]) for J, U in levels]
    )


def _chain_text(lat: FinLattice, chain: IdealisticChain) -> str:
    def side(xs):
        return ", ".join(sorted(lat.label(x) for x in xs))

    return " | ".join("{ " + f"{side(lv.J)} ; {side(lv.U)}".strip() + " }" for lv in chain.levels)


def _ring(args) -> CompRing:
    spec = args.ring
    if args.file:
        session = _load(args.file)
        if isinstance(session.decls.get(spec), RingDecl):
            return session.ring(spec)
    return ring_from_spec(spec)


def _elements(ring: CompRing, text: str) -> list:
    """A comma separated list of ring elements."""
    ts = TokenStream.of(text)
    out = []
    if ts.at_kind("eof"):
        return out
    ops = ring.ops()
    out.append(syntax.parse_expr(ts, ops))
    while ts.accept(","):
        out.append(syntax.parse_expr(ts, ops))
    ts.expect_end()
    return out


def _json_arg(text: str):
    if text.startswith("@"):
        text = Path(text[1:]).read_text(encoding="utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc.msg} at position {exc.pos}") from None


# lattice commands


def cmd_lat_dim(args) -> Report:
    _, name, lat = _lattice(args)
    if args.leq is None:
        d = dimension(lat)
        return Report(OK, {"lattice": name, "dim": d}, [f"dim = {d}"])
    res = dim_leq(lat, args.leq, generators=args.generators, increasing=args.increasing, witnesses=args.witnesses)
    data = {"lattice": name, "ell": args.leq, "holds": res.holds}
    if res.holds:
        lines = [f"dim <= {args.leq}: true"]
        if args.witnesses:
            data["witnesses"] = [{"xs": _labels(lat, w.xs), "ys": _labels(lat, w.ys)} for w in res.witnesses]
            lines += [f"  xs = {_labels(lat, w.xs)}  ys = {_labels(lat, w.ys)}" for w in res.witnesses]
        return Report(OK, data, lines)
    xs = res.counterexample or ()
    data["counterexample"] = _labels(lat, xs)
    lines = [f"dim <= {args.leq}: false", f"  failing tuple: {_labels(lat, xs)}"]
    if xs:
        ys = _greedy_ys(lat, xs)
        data["greedy_ys"] = _labels(lat, ys)
        data["explanation"] = (
            f"no complementary sequence: the least candidates {_labels(lat, ys)} leave "
            f"y0 & x0 = {lat.label(ys[0] & xs[0])} instead of 0"
        )
        lines.append("  " + data["explanation"])
    else:
        data["explanation"] = "the lattice is not trivial"
        lines.append("  the lattice is not trivial (0 != 1)")
    return Report(FAILS, data, lines)


def _greedy_ys(lat: FinLattice, xs) -> list[int]:
    y = lat.diff(lat.top, xs[-1])
    ys = [y]
    for i in range(len(xs) - 1, 0, -1):
        y = lat.diff(y & xs[i], xs[i - 1])
        ys.append(y)
    return list(reversed(ys))


def cmd_lat_collapse(args) -> Report:
    _, name, lat = _lattice(args)
    chain = _chain(lat, args.chain)
    w = chain_collapses(lat, chain)
    data = {"lattice": name, "chain": _chain_text(lat, chain), "collapses": w is not None}
    if w is not None:
        data["witness"] = _labels(lat, w.xs)
        return Report(OK, data, [f"collapses: true (ladder {_labels(lat, w.xs)})"])
    pts = refining_prime_chain(lat, chain)
    if pts is not None:
        data["refining_points"] = [str(lat.base.labels[p]) for p in pts]
    return Report(FAILS, data, ["collapses: false", f"  refining prime chain at points {data.get('refining_points')}"])


def cmd_lat_saturate(args) -> Report:
    _, name, lat = _lattice(args)
    chain = _chain(lat, args.chain)
    sat = saturate_chain(lat, chain)
    text = _chain_text(lat, sat)
    return Report(OK, {"lattice": name, "saturated": text}, [text])


def cmd_lat_kr(args) -> Report:
    _, name, lat = _lattice(args)
    kr = kr_lattice(lat, args.order, cap=args.max_points)
    if args.emit == "dot":
        dot = kr.materialized.to_dot(f"Kr{args.order}")
        return Report(OK, {"lattice": name, "order": args.order, "dot": dot}, [dot.rstrip()])
    data = {"lattice": name, **kr.to_dict()}
    lines = [
        f"Kr_{args.order}({name}): {kr.materialized.base.size} points, {len(kr.tags)} tagged generators",
    ]
    lines += [f"  point {k}: chain {[str(lat.base.labels[p]) for p in kr.point_chain(k)]}" for k in range(len(kr.valuations))]
    return Report(OK, data, lines)


def cmd_lat_spec(args) -> Report:
    _, name, lat = _lattice(args)
    labels = [str(x) for x in lat.base.labels]
    order = [[labels[i], labels[j]] for i, j in lat.base.pairs() if i != j]
    chains = monotone_prime_tuples(lat, 2) if args.pairs else None
    data = {"lattice": name, "points": labels, "order": order, "classical_dim": lat.classical_dim()}
    lines = [f"points: {labels}", f"order: {order}", f"classical dim = {data['classical_dim']}"]
    if chains is not None:
        data["monotone_pairs"] = [[labels[p], labels[q]] for p, q in chains]
        lines.append(f"monotone prime pairs: {len(chains)}")
    return Report(OK, data, lines)


def cmd_lat_espanol(args) -> Report:
    _, name, lat = _lattice(args)
    env = BooleanEnvelope(lat)
    d = dim_espanol(lat, cap=args.max_elements)
    data = {"lattice": name, "dim": d}
    lines = [f"dim (difference normal forms) = {d}"]
    if args.element is not None:
        ts = TokenStream.of(args.element)
        e = syntax.eval_lattice_term(syntax.parse_lattice_term(ts), lat)
        ts.expect_end()
        nf = espanol_normal_form(env, env.embed(e), cap=args.max_elements)
        data["normal_form"] = _labels(lat, nf.as_)
        lines.append(f"normal form of {args.element}: {data['normal_form']}")
    return Report(OK, data, lines)


def cmd_check_laws(args) -> Report:
    session, name, lat = _lattice(args)
    pres = session.presentation(name)
    carrier = [lat.generators[g] for g in pres.generators]
    carrier = list(dict.fromkeys(carrier))
    report = check_entailment_laws(carrier, lattice_relation(lat), cap=args.cap)
    bad = report.violations()
    data = {"lattice": name, "ok": report.ok, "violations": [[k, str(v)] for k, v in bad]}
    lines = ["entailment laws: ok" if report.ok else f"entailment laws: {len(bad)} violations"]
    return Report(OK if report.ok else FAILS, data, lines)


# morphism commands


def cmd_morph_check(args) -> Report:
    session = _load(args.file)
    alpha = session.morphism(args.morphism, args.max_elements)
    checks = {"lyo": is_lying_over, "gu": is_going_up, "gd": is_going_down}
    props = [p.strip() for p in args.props.split(",") if p.strip()]
    unknown = [p for p in props if p not in checks]
    if unknown:
        raise InputError(f"unknown properties {unknown}; use lyo, gu, gd")
    data = {"morphism": args.morphism, "properties": {}}
    lines = []
    code = OK
    for p in props:
        res = checks[p](alpha)
        entry = {"holds": res.holds}
        if not res.holds:
            code = FAILS
            entry["counterexample"] = _fmt_counterexample(alpha, p, res.counterexample)
        data["properties"][p] = entry
        lines.append(f"{p}: {str(res.holds).lower()}" + ("" if res.holds else f"  ({entry['counterexample']})"))
    return Report(code, data, lines)


def _fmt_counterexample(alpha, prop: str, ce) -> str:
    if ce is None:
        return "image is not injective"
    if prop == "lyo":
        a, b = ce
        return f"meet{_labels(alpha.dom, a)} not <= join{_labels(alpha.dom, b)} but the images are"
    a, b, y = ce
    return f"a={alpha.dom.label(a)}, b={alpha.dom.label(b)}, y={alpha.cod.label(y)}"


def cmd_morph_reldim(args) -> Report:
    session = _load(args.file)
    alpha = session.morphism(args.morphism, args.max_elements)
    if args.leq is None:
        n = relative_dimension(alpha)
        return Report(OK, {"morphism": args.morphism, "reldim": n}, [f"relative dim = {n}"])
    res = relative_dim_leq(alpha, args.leq, k_max=args.max_k)
    data = {"morphism": args.morphism, "n": args.leq, "holds": res.holds, "definitive": res.definitive}
    if res.holds:
        return Report(OK, data, [f"relative dim <= {args.leq}: true"])
    data["counterexample"] = _labels(alpha.cod, res.counterexample or ())
    if not res.definitive:
        return Report(RESOURCE, data, [f"relative dim <= {args.leq}: undecided within --max-k {args.max_k}"])
    return Report(FAILS, data, [f"relative dim <= {args.leq}: false", f"  chain on {data['counterexample']} does not collapse"])


# ring commands


def cmd_ring_singular(args) -> Report:
    ring = _ring(args)
    xs = _elements(ring, args.seq)
    s = is_singular(ring, xs)
    data = {"ring": ring.spec(), "seq": [ring.fmt(x) for x in xs], "singular": s}
    return Report(OK if s else FAILS, data, [f"singular: {str(s).lower()}"])


def cmd_ring_find_cert(args) -> Report:
    ring = _ring(args)
    xs = _elements(ring, args.seq)
    data = {"ring": ring.spec(), "seq": [ring.fmt(x) for x in xs]}
    if not is_singular(ring, xs):
        data["singular"] = False
        return Report(FAILS, data, ["singular: false (no certificate exists)"])
    data["singular"] = True
    try:
        cert = find_singular_certificate(ring, xs, max_exp=args.max_exp, max_degree=args.max_degree)
    except NotFoundWithinBounds as exc:
        data["certificate"] = None
        data["reason"] = str(exc)
        return Report(RESOURCE, data, [f"singular: true, but {exc}"])
    data["certificate"] = cert.to_dict(ring)
    return Report(OK, data, [json.dumps(cert.to_dict(ring))])


def cmd_ring_verify_cert(args) -> Report:
    ring = _ring(args)
    xs = _elements(ring, args.seq)
    cert = SingularCertificate.from_dict(ring, _json_arg(args.cert))
    ok = verify_singular_certificate(ring, xs, cert)
    data = {"ring": ring.spec(), "seq": [ring.fmt(x) for x in xs], "certificate": cert.to_dict(ring), "valid": ok}
    return Report(OK if ok else FAILS, data, [f"valid: {str(ok).lower()}"])


def cmd_ring_zar(args) -> Report:
    ring = _ring(args)
    U, J = _elements(ring, args.U), _elements(ring, args.J)
    ok = zar_entails(ring, U, J)
    data = {"ring": ring.spec(), "U": [ring.fmt(u) for u in U], "J": [ring.fmt(j) for j in J], "entails": ok}
    return Report(OK if ok else FAILS, data, [f"entails: {str(ok).lower()}"])


def cmd_ring_glue(args) -> Report:
    ring = _ring(args)
    xs = _elements(ring, args.seq)
    ss = _elements(ring, args.cover)
    if args.cofactors:
        cs = _elements(ring, args.cofactors)
    else:
        cs = is_comaximal(ring, ss)
        if cs is None:
            raise ContractError("the cover does not generate the unit ideal")
    raw = _json_arg(args.certs)
    if not isinstance(raw, list) or len(raw) != len(ss):
        raise InputError("--certs must be a JSON list with one certificate per cover element")
    certs = [SingularCertificate.from_dict(Localization(ring, s), c) for s, c in zip(ss, raw)]
    res = glue_certificates(ring, xs, ss, cs, certs)
    chain = elementary_ring_chain(ring, xs)
    ok = res.identity.verify(ring, chain)
    data = {
        "ring": ring.spec(),
        "seq": [ring.fmt(x) for x in xs],
        "cover": [ring.fmt(s) for s in ss],
        "cofactors": [ring.fmt(c) for c in cs],
        "identity": res.identity.to_dict(ring),
        "exponents": list(res.exponents),
        "partition": [ring.fmt(a) for a in res.partition],
        "verified": ok,
    }
    lines = [*res.steps, f"identity: {json.dumps(data['identity'])}", f"verified: {str(ok).lower()}"]
    return Report(OK if ok else FAILS, data, lines)


# argument parsing


def _parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="krull-kit", description="Constructive Krull dimension for finite lattices and computable rings.")
    top.add_argument("--version", action="version", version=f"krull-kit {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a single JSON document")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized steps (echoed in the output)")
    common.add_argument("--max-elements", type=int, default=DEFAULT_ELEMENT_CAP, help="cap on materialized lattice sizes")
    groups = top.add_subparsers(dest="group", required=True)

    lat = groups.add_parser("lat", help="finite distributive lattices").add_subparsers(dest="command", required=True)

    def lat_cmd(name, fn, help_):
        p = lat.add_parser(name, parents=[common], help=help_)
        p.add_argument("file")
        p.add_argument("--lattice", help="lattice name in the file")
        p.set_defaults(fn=fn)
        return p

    p = lat_cmd("dim", cmd_lat_dim, "Krull dimension, or decide dim <= k")
    p.add_argument("--leq", type=int)
    p.add_argument("--generators", choices=["irreducibles", "all"], default="irreducibles")
    p.add_argument("--increasing", action="store_true")
    p.add_argument("--witnesses", action="store_true", help="list complementary pairs")
    p = lat_cmd("collapse", cmd_lat_collapse, "decide whether a chain collapses")
    p.add_argument("--chain", required=True)
    p = lat_cmd("saturate", cmd_lat_saturate, "saturate a chain")
    p.add_argument("--chain", required=True)
    p = lat_cmd("kr", cmd_lat_kr, "materialize the Krull lattice Kr_l")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--emit", choices=["json", "dot", "text"], default="text")
    p.add_argument("--max-points", type=int, default=DEFAULT_POINT_CAP)
    p = lat_cmd("spec", cmd_lat_spec, "points of the spectrum and their order")
    p.add_argument("--pairs", action="store_true", help="also list monotone prime pairs")
    p = lat_cmd("espanol", cmd_lat_espanol, "dimension through difference normal forms")
    p.add_argument("--element", help="lattice term whose normal form to print")
    p.set_defaults(max_elements=DEFAULT_ENVELOPE_CAP)

    morph = groups.add_parser("morph", help="lattice morphisms").add_subparsers(dest="command", required=True)
    p = morph.add_parser("check", parents=[common], help="lying over, going up, going down")
    p.add_argument("file")
    p.add_argument("--morphism", required=True)
    p.add_argument("--props", default="lyo,gu,gd")
    p.set_defaults(fn=cmd_morph_check)
    p = morph.add_parser("reldim", parents=[common], help="relative dimension")
    p.add_argument("file")
    p.add_argument("--morphism", required=True)
    p.add_argument("--leq", type=int)
    p.add_argument("--max-k", type=int, default=None)
    p.set_defaults(fn=cmd_morph_reldim)

    ring = groups.add_parser("ring", help="computable rings").add_subparsers(dest="command", required=True)

    def ring_cmd(name, fn, help_):
        p = ring.add_parser(name, parents=[common], help=help_)
        p.add_argument("--ring", required=True, help="ring spec such as ZZ or 'poly(QQ,[x,y])', or a ring name with --file")
        p.add_argument("--file")
        p.set_defaults(fn=fn)
        return p

    p = ring_cmd("singular", cmd_ring_singular, "decide whether a sequence is singular")
    p.add_argument("--seq", required=True)
    p = ring_cmd("find-cert", cmd_ring_find_cert, "search for a singular-sequence certificate")
    p.add_argument("--seq", required=True)
    p.add_argument("--max-exp", type=int, default=3)
    p.add_argument("--max-degree", type=int, default=3)
    p = ring_cmd("verify-cert", cmd_ring_verify_cert, "verify a certificate by expansion")
    p.add_argument("--seq", required=True)
    p.add_argument("--cert", required=True, help='JSON {"m": [...], "a": [...]} or @file')
    p = ring_cmd("zar-entails", cmd_ring_zar, "decide prod(U) in the radical of <J>")
    p.add_argument("--U", default="")
    p.add_argument("--J", default="")
    p = ring_cmd("glue", cmd_ring_glue, "glue local certificates along a comaximal cover")
    p.add_argument("--seq", required=True)
    p.add_argument("--cover", required=True)
    p.add_argument("--cofactors")
    p.add_argument("--certs", required=True, help="JSON list of local certificates or @file")

    p = groups.add_parser("check-laws", parents=[common], help="check the entailment laws on a lattice's generators")
    p.add_argument("file")
    p.add_argument("--lattice")
    p.add_argument("--cap", type=int, default=7)
    p.set_defaults(fn=cmd_check_laws)
    return top


def _emit(report: Report, args, out) -> None:
    if getattr(args, "json", False):
        doc = {"exit": report.code, "seed": getattr(args, "seed", 0), **report.data}
        out.write(json.dumps(doc, sort_keys=True) + "\n")
    else:
        for line in report.lines:
            out.write(line + "\n")
        out.write(f"seed: {getattr(args, 'seed', 0)}\n")


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    if getattr(args, "emit", None) == "json":
        args.json = True
    try:
        report = args.fn(args)
    except ParseError as exc:
        report = Report(USAGE, {"error": exc.to_dict()}, [f"error: {exc}"])
    except (ResourceError, NotFoundWithinBounds) as exc:
        report = Report(RESOURCE, {"error": {"code": exc.code, "message": str(exc)}}, [f"resource cap: {exc}"])
    except (InputError, ContractError, KrullKitError, ValueError) as exc:
        code = getattr(exc, "code", "input")
        report = Report(USAGE, {"error": {"code": code, "message": str(exc)}}, [f"error: {exc}"])
    _emit(report, args, out if args.json or report.code in (OK, FAILS) else err)
    return report.code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
