"""Exception hierarchy shared by every module of the package."""


class ArrangementError(Exception):
    """Base class for all errors raised by this package."""


class NotUnimodular(ArrangementError):
    """A vector has no unit coordinate."""


class NotInvertible(ArrangementError):
    """A matrix over Z/p^n has non-unit determinant."""


class SizeLimit(ArrangementError):
    """An enumeration would exceed the configured cap."""


class PrecisionTooLow(ArrangementError):
    """A finite-level question cannot be decided at the given precision."""


class PointInTube(ArrangementError):
    """A point lies inside one of the removed tubes."""


class NonComplex(ArrangementError):
    """Consecutive differentials do not compose to zero."""


class PredictionMismatch(ArrangementError):
    """A closed-form prediction disagrees with the computed value."""


class MalformedSystem(ArrangementError):
    """A filtered system violates its own inclusion requirements."""


class BadModulus(ArrangementError):
    """Kummer reduction modulus is divisible by the residue characteristic."""


class ConfigError(ArrangementError):
    """Malformed configuration or input file."""


class ParseError(ConfigError):
    """A JSON document does not match the documented schema."""


class InvariantViolation(ConfigError):
    """A parsed value violates a domain invariant."""
