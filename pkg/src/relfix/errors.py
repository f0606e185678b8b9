"""Exception hierarchy shared by every module."""

from __future__ import annotations


class RelfixError(Exception):
    """Base class for all library errors."""


class InputError(RelfixError):
    """Malformed user-supplied data (labels, assignments, files)."""


class ParseError(InputError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{line}:{column}: {message}")
        self.message = message
        self.line = line
        self.column = column


class CapExceeded(RelfixError):
    """A carrier or subset is larger than the configured enumeration cap."""


class PreconditionViolation(RelfixError):
    """An engine was called on an instance outside its hypotheses."""

    def __init__(self, clause: str, detail: str = ""):
        super().__init__(f"precondition violated: {clause}" + (f" ({detail})" if detail else ""))
        self.clause = clause
        self.detail = detail


class PartitionFailure(PreconditionViolation):
    """Similarity-or-equality is not transitive, so no quotient exists."""


class HypothesisViolation(RelfixError):
    """A derivation step broke one of the hypotheses checked while building it."""

    def __init__(self, clause: str, position: int, detail: str = ""):
        msg = f"hypothesis violated at position {position}: {clause}"
        super().__init__(msg + (f" ({detail})" if detail else ""))
        self.clause = clause
        self.position = position


class InternalFailure(RelfixError):
    """An engine produced an answer that failed its own validation."""
