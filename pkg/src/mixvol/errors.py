"""Exception hierarchy shared by the library and the CLI."""

from __future__ import annotations


class MixvolError(Exception):
    """Base class for every error raised on purpose by this package."""


class InputError(MixvolError, ValueError):
    """Malformed or out-of-contract input (CLI exit code 2)."""


class DimensionError(InputError):
    pass


class ContainmentError(InputError):
    """A required containment P ⊆ Q does not hold."""


class ParseError(InputError):
    def __init__(self, message: str, position: int | None = None, line: int | None = None):
        self.position = position
        self.line = line
        where = ""
        if line is not None:
            where = f" (line {line}"
            where += f", column {position})" if position is not None else ")"
        elif position is not None:
            where = f" (offset {position})"
        super().__init__(message + where)


class HypothesisError(InputError):
    """A named hypothesis of a theorem-backed operation failed."""

    def __init__(self, hypothesis: str, detail: str = ""):
        self.hypothesis = hypothesis
        msg = f"hypothesis failed: {hypothesis}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class PreconditionError(InputError):
    pass


class NonGenericLiftingError(MixvolError):
    """The chosen heights did not induce a triangulation."""


class CrossCheckError(MixvolError, AssertionError):
    """Independent algorithms disagreed (CLI exit code 3)."""
