"""Exception types shared across the package."""


class KgError(Exception):
    """Base class for all domain errors."""


class IoError(KgError):
    """A corpus file could not be read."""


class FormatError(KgError):
    """A malformed input line, fatal only in strict mode."""

    def __init__(self, message: str, line_number: int | None = None):
        super().__init__(message)
        self.line_number = line_number


class UnknownEntity(KgError):
    """An entity label or id does not resolve in the graph."""


class UnknownPredicate(KgError):
    """A predicate label does not resolve in the similarity model."""


class NoPath(KgError):
    """Subject and object are disconnected under traversable edges."""


class EmptySegment(KgError):
    """A seed produced no neighborhood beyond itself."""


class SingularSystem(KgError):
    """The kernel linear system did not converge for the given decay."""

    def __init__(self, message: str, spectral_bound: float | None = None):
        super().__init__(message)
        self.spectral_bound = spectral_bound


class MissingSegment(KgError):
    """A line-graph build was asked for a query edge with no segment."""


class InvalidQuery(KgError):
    """A query graph does not meet the preconditions of the operation."""
