"""Exception hierarchy shared by the library and the CLI.

The CLI maps each class to an exit code, so raise the most specific one.
"""


class BlackBoxError(Exception):
    """Base class for every error raised by this package."""


class InputError(BlackBoxError, ValueError):
    """A graph or vertex set is malformed or refers to invalid vertex ids."""


class ParseError(InputError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ConfigError(BlackBoxError, ValueError):
    """Parameters violate a documented range (beta, delta, k, t, ...)."""


class DomainError(ConfigError):
    """A numeric function was called outside its mathematical domain."""


class UnsupportedOperation(BlackBoxError, TypeError):
    """Operation requires a plain undirected graph but got a hypergraph or digraph."""


class PreconditionError(BlackBoxError, ValueError):
    """A randomized step was called on a graph that already has the property."""


class ResourceError(BlackBoxError, RuntimeError):
    """An exhaustive search would exceed its configured size bound."""
