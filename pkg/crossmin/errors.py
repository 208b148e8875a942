"""Exception hierarchy shared by all crossmin modules."""


class CrossminError(Exception):
    """Base class for every error raised by crossmin."""


class StructuralError(CrossminError, KeyError):
    """Unknown ids, missing connectivity or other structural preconditions."""

    def __str__(self):
        # KeyError quotes its argument; keep messages readable
        return Exception.__str__(self)


class PlanarityError(CrossminError, ValueError):
    """A planar graph was required but the input is not planar."""


class InvalidEmbeddingError(CrossminError, ValueError):
    """A rotation system that does not describe a planar embedding."""


class StaleInsertionError(CrossminError, RuntimeError):
    """An insertion path or spider refers to an outdated embedding."""


class InvariantViolation(CrossminError, RuntimeError):
    """A planarization or heuristic invariant does not hold."""


class InsertionError(CrossminError, ValueError):
    """An insertion problem has no valid solution for the given input."""


class ConfigError(CrossminError, ValueError):
    """Malformed heuristic configuration or instance specification."""


class InstanceError(CrossminError, ValueError):
    """Generator parameters outside their valid range."""


class GraphFormatError(CrossminError, ValueError):
    """Parse error in the edge-list text format."""

    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
