"""Computable rings, the Zariski entailment, ring chains and their certificates."""

from .certificates import (
    IntegralIdentity,
    SingularCertificate,
    collapse_from_dependence,
    expand_certificate,
    find_dependence,
    find_singular_certificate,
    integer_certificate,
    integral_relative_collapse,
    relation_degree_bound,
    verify_singular_certificate,
)
from .chains import (
    RingChain,
    boundary_ideals,
    chain_collapses_ring,
    elementary_ring_chain,
    is_singular,
)
from .core import (
    ZZ,
    CompRing,
    Integers,
    IntegersMod,
    Polynomials,
    Quotient,
    ring_from_spec,
)
from .fields import GF, QQ
from .glue import (
    CollapseIdentity,
    GlueResult,
    Localization,
    glue_certificates,
    glue_collapses,
    identity_from_certificate,
)
from .groebner import GroebnerBasis, groebner, lift
from .ideals import (
    FGIdeal,
    ZarElement,
    is_comaximal,
    radical_member,
    saturation,
    zar_entails,
)
from .poly import Poly, PolyRing

__all__ = [
    "GF",
    "QQ",
    "ZZ",
    "CollapseIdentity",
    "CompRing",
    "FGIdeal",
    "GlueResult",
    "GroebnerBasis",
    "Integers",
    "IntegersMod",
    "IntegralIdentity",
    "Localization",
    "Poly",
    "PolyRing",
    "Polynomials",
    "Quotient",
    "RingChain",
    "SingularCertificate",
    "ZarElement",
    "boundary_ideals",
    "chain_collapses_ring",
    "collapse_from_dependence",
    "elementary_ring_chain",
    "expand_certificate",
    "find_dependence",
    "find_singular_certificate",
    "glue_certificates",
    "glue_collapses",
    "groebner",
    "identity_from_certificate",
    "integer_certificate",
    "integral_relative_collapse",
    "is_comaximal",
    "is_singular",
    "lift",
    "radical_member",
    "relation_degree_bound",
    "ring_from_spec",
    "saturation",
    "verify_singular_certificate",
    "zar_entails",
]
