"""Exception hierarchy shared by all modules."""


class SelbergKitError(Exception):
    """Base class for every error raised by the package."""


class DataError(SelbergKitError):
    """Input data or catalog content cannot support the request."""


class RamifiedPrime(DataError, ValueError):
    """The prime divides the discriminant of the defining polynomial."""

    def __init__(self, p, disc=None):
        self.p = p
        msg = f"prime {p} is ramified"
        if disc is not None:
            msg += f" (divides discriminant {disc})"
        super().__init__(msg)


class MissingRamifiedData(DataError):
    """A ramified prime has no recorded decomposition/inertia fixture."""


class CatalogError(DataError):
    """The catalog file is malformed or fails validation at load."""


class InsufficientCoefficients(DataError):
    """A coefficient source cannot reach the requested bound."""


class NonUnitLocalFactor(SelbergKitError, ValueError):
    """A local factor denominator P(T) has P(0) != 1."""


class NonInvertibleSeries(SelbergKitError, ValueError):
    """Dirichlet series division by a series with b_1 != 1."""


class TruncationMismatch(SelbergKitError, ValueError):
    """Two series with different truncation bounds were combined."""


class MissingLocalFactor(SelbergKitError, ValueError):
    """A prime below the truncation bound has no local factor."""


class NotACharacter(SelbergKitError, ValueError):
    """A class function has a non-integral or negative multiplicity."""


class GroupMismatch(SelbergKitError, ValueError):
    """Class functions on different groups were combined."""
