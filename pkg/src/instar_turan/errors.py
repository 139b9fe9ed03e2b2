"""Exception hierarchy.

Graph-construction errors carry an optional ``line``/``column`` so the
arc-list parser can point at the offending token.
"""


class InstarError(Exception):
    """Base class for every error raised by this package."""


class GraphError(InstarError, ValueError):
    def __init__(self, message, *, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            loc = f"line {line}" if column is None else f"line {line}, column {column}"
            message = f"{loc}: {message}"
        super().__init__(message)


class LoopArc(GraphError):
    pass


class AntiParallel(GraphError):
    pass


class DuplicateArc(GraphError):
    pass


class VertexOutOfRange(GraphError):
    pass


class ParseError(GraphError):
    """Malformed arc-list text (bad header, non-integer token, ...)."""


class CountMismatch(GraphError):
    """Arc-list header announces a different number of arcs than present."""


class OrderTooLarge(InstarError, ValueError):
    pass


class InstanceTooLarge(InstarError, ValueError):
    pass


class DomainError(InstarError, ValueError):
    pass


class SchemeError(InstarError, ValueError):
    pass


class UnknownFixture(InstarError, KeyError):
    pass


class GuardExceeded(InstarError, ValueError):
    pass


class SchemaError(InstarError, ValueError):
    def __init__(self, message, path=()):
        self.path = tuple(path)
        where = "/".join(str(p) for p in self.path) or "<root>"
        super().__init__(f"{where}: {message}")
