"""Exception types shared across the package."""

from __future__ import annotations


class GraphNimError(Exception):
    """Base class for all package-specific errors."""


class GraphValidationError(GraphNimError):
    """A graph violates a structural rule (loop, duplicate edge, bad weight, ...)."""


class GraphFormatError(GraphValidationError):
    """A graph document failed to parse; ``location`` names the offending element."""

    def __init__(self, location: str, message: str):
        self.location = location
        super().__init__(f"{location}: {message}")


class IllegalMoveError(GraphNimError):
    """Move rejected; the state it was tried on is left untouched."""


class UnsupportedGraphError(GraphNimError):
    """Operation only defined for hypercube-labeled boards."""


class CubeSizeError(GraphNimError):
    """Requested cube exceeds the configured dimension cap."""


class OracleGuardError(GraphNimError):
    """Reference solver refused a position too heavy for plain recursion."""


class StrategyError(GraphNimError):
    """Base for strategy-related failures."""


class StrategyDomainError(StrategyError):
    """Strategy applied to a board family it is not defined for."""


class WrongMoverError(StrategyError):
    """Strategy asked to move when it is the opponent's turn."""


class NoCompliantMoveError(StrategyError):
    """Legal moves exist but none is compliant.

    For the odd-cube confinement strategy this should never happen: a
    two-coordinate vertex is supposed to keep a usable edge down to the
    previous level.  Seeing this error therefore means a counterexample to
    that guarantee, so callers must surface it loudly instead of treating it
    as an ordinary loss.  ``line``, when set, holds the move sequence that
    reached the gap.
    """

    def __init__(self, message: str, line=None):
        super().__init__(message)
        self.line = line


class StrategyViolationError(StrategyError):
    """No move was produced where the strategy player had to supply one."""


class PolicyViolationError(StrategyError):
    """A playout policy failed mid-game; carries the partial trace."""

    def __init__(self, message: str, trace=None):
        super().__init__(message)
        self.trace = trace


class CorruptedTraceError(GraphNimError):
    """A playout trace does not replay to its recorded snapshots."""
