"""Exception hierarchy. Everything raised on bad input derives from NCCAError
so the CLI can map it to a usage/parse exit code."""


class NCCAError(Exception):
    pass


class GeometryError(NCCAError):
    """Torus dimension or geometry constraint violated."""


class StateError(NCCAError):
    """A state is outside the automaton's state set, or a state set is malformed."""


class TableError(NCCAError):
    """Rule table incomplete, duplicated, or otherwise malformed."""


class FlowError(NCCAError):
    """Flow function inconsistent or not antisymmetric where required."""


class ClosureError(NCCAError):
    """A rule maps states inside Q to a value outside Q."""

    def __init__(self, message, center=None, neighbors=None, value=None):
        super().__init__(message)
        self.center = center
        self.neighbors = neighbors
        self.value = value


class EncodingError(NCCAError):
    """Configuration encoding/decoding failed (bad dims, no cell map, malformed encoding)."""


class LiftError(NCCAError):
    """Cross-lattice lift preconditions violated (normalization, overflow, collisions)."""


class ParseError(NCCAError):
    """Text format error, carrying a 1-based line number."""

    def __init__(self, message, line=None):
        self.line = line
        self.message = message
        super().__init__(f"line {line}: {message}" if line is not None else message)
