"""Exception types shared across the package."""


class CPError(Exception):
    """Base class for errors raised by cplabel."""


class ConfigError(CPError, ValueError):
    """Invalid generator / experiment parameters.

    ``params`` names the offending parameters so front ends can point at the
    right flag.
    """

    def __init__(self, message, params=()):
        super().__init__(message)
        self.params = tuple(params)


class ParseError(CPError, ValueError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class DegenerateGraphError(CPError, ValueError):
    """The correlation metric is undefined for every labeling of the graph."""


class OracleCostError(CPError, ValueError):
    """Exhaustive search refused because 2**n labelings is too many."""
