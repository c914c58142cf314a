"""Exception hierarchy shared by every module."""

from __future__ import annotations


class IndexCodingError(Exception):
    """Base class for all errors raised by this package."""


class InversionOfZero(IndexCodingError, ZeroDivisionError):
    pass


class NotInField(IndexCodingError, ValueError):
    pass


class DimensionMismatch(IndexCodingError, ValueError):
    pass


class IndexOutOfRange(IndexCodingError, IndexError):
    pass


class OddPairSet(IndexCodingError, ValueError):
    pass


class DuplicateIndex(IndexCodingError, ValueError):
    pass


class InvalidInstance(IndexCodingError, ValueError):
    pass


class NotDecodable(IndexCodingError):
    pass


class UnsupportedWidth(IndexCodingError, ValueError):
    pass


class PreconditionFailed(IndexCodingError):
    pass


class InconsistentInputs(IndexCodingError, ValueError):
    pass


class MissingSideInformation(IndexCodingError, KeyError):
    """A decoder asked for a message the user does not hold."""


class UnknownFixture(IndexCodingError, KeyError):
    pass
