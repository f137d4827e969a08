"""Exception hierarchy. Every error raised on purpose derives from SymsepError."""


class SymsepError(Exception):
    """Base class for all package errors."""


class NonSquare(SymsepError, ValueError):
    pass


class NonHermitian(SymsepError, ValueError):
    pass


class ShapeMismatch(SymsepError, ValueError):
    pass


class NonFinite(SymsepError, ValueError):
    pass


class ValidationError(SymsepError, ValueError):
    """Matrix is not a density operator at the requested tolerance."""


class DimensionTooLarge(SymsepError, ValueError):
    pass


class DimensionMismatch(SymsepError, ValueError):
    pass


class BadPartition(SymsepError, ValueError):
    pass


class BasisSizeMismatch(SymsepError, ValueError):
    pass


class NotSymmetric(SymsepError, ValueError):
    pass


class NotPermutationallyInvariant(SymsepError, ValueError):
    pass


class NotPPT(SymsepError, ValueError):
    pass


class NonHermitianGenerator(SymsepError, ValueError):
    pass


class BadDecomposition(SymsepError, ValueError):
    pass


class NotPSD(SymsepError, ValueError):
    pass


class NotSymmetricOperator(SymsepError, ValueError):
    pass


class Unsupported(SymsepError, NotImplementedError):
    pass


class ConsistencyError(SymsepError, RuntimeError):
    """Quantities equal in exact arithmetic disagree beyond tolerance."""


class ParseError(SymsepError, ValueError):
    pass


class UnknownBuiltin(SymsepError, ValueError):
    pass
