"""Input language and command line front end."""

from .session import LatticeDecl, MorphismDecl, RingDecl, Session, parse

__all__ = ["LatticeDecl", "MorphismDecl", "RingDecl", "Session", "parse"]
