"""Exception hierarchy shared by every module."""

from __future__ import annotations


class LConjError(Exception):
    """Base class for all errors raised by lconj."""


class ValidationError(LConjError):
    """An input object failed structural validation."""


# lattice
class NotAPartialOrder(ValidationError):
    pass


class NotALattice(ValidationError):
    def __init__(self, message: str, pair: tuple[str, str] | None = None):
        super().__init__(message)
        self.pair = pair


class DuplicateLabel(ValidationError):
    pass


# group
class InvalidTable(ValidationError):
    pass


class ClosureTooLarge(ValidationError):
    pass


class NotASubgroup(ValidationError):
    pass


class NotAHomomorphism(ValidationError):
    def __init__(self, message: str, witness: tuple | None = None):
        super().__init__(message)
        self.witness = witness


class IllDefinedOnGenerators(NotAHomomorphism):
    pass


# L-subsets and the theorems built on them
class MixedCarriers(LConjError):
    pass


class NotAnLSubgroup(LConjError):
    pass


class PointNotInAmbient(LConjError):
    pass


class NotContained(LConjError):
    pass


class TipMismatch(LConjError):
    pass


class NotProperSubgroup(LConjError):
    pass


class NotMaximal(LConjError):
    pass


class SearchSpaceTooLarge(LConjError):
    pass


class NotAChain(LConjError):
    pass


class NotDistributive(LConjError):
    pass


# verify / cli
class BoundsExceeded(LConjError):
    pass


class UnknownSuite(LConjError):
    pass


class ParseError(LConjError):
    pass


class SchemaError(LConjError):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path or '/'}: {message}")
        self.path = path
