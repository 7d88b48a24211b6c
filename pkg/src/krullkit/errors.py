"""Exception hierarchy shared by the library and the command line front end."""

from __future__ import annotations


class KrullKitError(Exception):
    """Base class for every error raised by krullkit."""

    code = "error"


class InputError(KrullKitError, ValueError):
    """An argument does not belong to the structure it is used with."""

    code = "input"


class ContractError(KrullKitError, ValueError):
    """A documented precondition of an operation does not hold."""

    code = "contract"


class ResourceError(KrullKitError):
    """An enumeration would exceed its configured cap."""

    code = "resource"


class NotFoundWithinBounds(KrullKitError):
    """A bounded search ended without a result; this is not a negative answer."""

    code = "not-found"
