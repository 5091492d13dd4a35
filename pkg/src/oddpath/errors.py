"""Exception types shared across the solver suite."""

from __future__ import annotations


class OddPathError(Exception):
    """Base class for all errors raised by this package."""


class StructuralError(OddPathError):
    """The input graph is malformed (bad ids, self-loop, parallel edge)."""


class InvalidInputError(OddPathError):
    """An operation was called with arguments outside its contract."""


class InvalidEndpointError(InvalidInputError):
    """A tree-path query referenced a vertex that is not on the tree."""


class ConservativenessViolationError(OddPathError):
    """The weight function admits a negative cycle.

    Carries the witness cycle as an ordered vertex list when one is known.
    """

    def __init__(self, message: str, cycle: tuple[int, ...] | None = None):
        super().__init__(message)
        self.cycle = cycle


class ConstraintCoverageError(InvalidInputError):
    """Negative edges are not covered by the parity constraint sets."""


class WrongSolverError(OddPathError):
    """The instance does not satisfy the structural precondition of the solver."""


class ParameterTooLargeError(OddPathError):
    """A tractability parameter exceeds its configured guard."""

    def __init__(self, message: str, parameter: str, value: int, guard: int):
        super().__init__(message)
        self.parameter = parameter
        self.value = value
        self.guard = guard


class ParseError(OddPathError):
    """A graph file could not be parsed; carries the 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class CertificateError(OddPathError):
    """An optimality certificate failed validation."""
