"""
Error hierarchy for sqpbraid.

Every error carries the CLI exit code it maps to, so the command layer can
report and exit without a lookup table.
"""

from typing import Optional


class SqpBraidError(Exception):
    """Base class for all sqpbraid errors."""
    exit_code: int = 1


# Parsing

class ParseError(SqpBraidError):
    """Band-word text does not follow the grammar."""
    exit_code = 1

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column})" if column is not None else ")")
        super().__init__(f"{message}{where}")


class IndexViolation(ParseError):
    """A letter violates 1 <= lower < upper <= strands."""


# Surfaces and invariants

class DisconnectedSurface(SqpBraidError):
    """The canonical surface has more than one component."""
    exit_code = 2


class ZeroPolynomial(SqpBraidError):
    """The zero polynomial has no unit normalization."""


class NotCoprimePermutation(SqpBraidError):
    """The Burau numerator is not divisible by (1 - t^n)/(1 - t)."""


class UnknownComponent(SqpBraidError):
    """Component label outside 1..m."""


# Annuli

class AnnulusError(SqpBraidError):
    """A word fails the quasipositive zero-framed annulus conditions."""
    exit_code = 5


class NotSQP(AnnulusError):
    """The word contains a negative letter."""


class NotAnAnnulus(AnnulusError):
    """The canonical surface is not a connected annulus."""


class NonZeroFraming(AnnulusError):
    """The annulus is not zero-framed."""

    def __init__(self, framing: int):
        self.framing = framing
        super().__init__(f"annulus framing is {framing}, expected 0")


class IsolatedStrand(AnnulusError):
    """A strand carries no band at all."""

    def __init__(self, strand: int):
        self.strand = strand
        super().__init__(f"strand {strand} has no incident band")


class PreconditionViolated(AnnulusError):
    """The word is not a valence-2 reduced annulus."""


# Catalog

class CatalogError(SqpBraidError):
    """Base class for catalog store errors."""


class UnknownEntry(CatalogError):
    """No catalog entry with that name."""
    exit_code = 3

    def __init__(self, name: str):
        self.name = name
        super().__init__(f"unknown annulus '{name}'")


class ValidationFailed(CatalogError):
    """An entry was rejected before storage."""
    exit_code = 5

    def __init__(self, message: str, cause: Optional[Exception] = None):
        self.cause = cause
        if cause is not None:
            message = f"{message}: {type(cause).__name__}: {cause}"
        super().__init__(message)


class StoreIOError(CatalogError):
    """The catalog store could not be read or written."""


# Transform

class TransformError(SqpBraidError):
    """Base class for transform errors."""


class NotNegative(TransformError):
    """The letter chosen for replacement is positive."""


class NoSuchLetter(TransformError):
    """The position chosen for replacement is outside the word."""


class InvalidAnnulus(TransformError):
    """A companion annulus does not validate or reduce."""
    exit_code = 5


class CompanionArityError(TransformError):
    """Explicit companion list length differs from the number of negative letters."""
    exit_code = 4

    def __init__(self, expected: int, given: int):
        self.expected = expected
        self.given = given
        super().__init__(f"expected {expected} companion(s), got {given}")


class CertificateMismatch(TransformError):
    """A basis or word does not match the certificate it is used with."""


class PreservationViolated(TransformError):
    """A transformed word fails an invariant preservation check."""
    exit_code = 6
