"""Exception types shared across the package."""


class RsWeightError(Exception):
    """Base class for all package errors."""


class NonQuadratic(RsWeightError):
    """A quadratic-only operation received a collection with a tuple of degree != 2."""


class ZeroA(RsWeightError):
    """The offset Laurent polynomial of the collection is zero, so no period exists."""


class CapExceeded(RsWeightError):
    """An enumeration size guard was hit; raise the cap explicitly to proceed."""


class CtxMismatch(RsWeightError):
    """Field elements from different field contexts were combined."""


class EmptyCollection(RsWeightError):
    """An operation requiring a nonempty tuple collection received an empty one."""


class SplitNotFound(RsWeightError):
    """The two-factor split of a scaled cyclotomic failed exact verification.

    This signals an implementation bug, not a mathematical possibility.
    """


class NonIntegral(RsWeightError):
    """A quantity that must be an integer came out fractional."""


class NonIntegralMultiplicity(NonIntegral):
    """A root multiplicity that is guaranteed integral came out fractional."""


class MismatchWithPaper(RsWeightError):
    """A quantity with a known closed form disagreed with it (implementation bug)."""


class InsufficientData(RsWeightError):
    """Too few sequence terms are available to certify a minimal recurrence."""
