"""Exceptions shared across the toolkit."""

from __future__ import annotations


class SelfsimError(Exception):
    """Base class for all toolkit errors."""


class IfsParseError(SelfsimError):
    """Raised when an IFS description is malformed or violates an invariant.

    ``field`` locates the offending entry, e.g. ``"maps[2].u"``.
    """

    def __init__(self, message: str, field: str | None = None):
        self.field = field
        if field is not None:
            message = f"{field}: {message}"
        super().__init__(message)


class NotFiniteTypeError(SelfsimError):
    """Raised when candidate enumeration exceeds the configured cap."""

    def __init__(self, cap: int, count: int):
        self.cap = cap
        self.count = count
        super().__init__(
            f"candidate neighbor maps exceeded the cap ({count} > {cap}); "
            "the system does not look finite type at this bound"
        )


class OverlapError(SelfsimError):
    """Raised when two distinct compositions of maps coincide exactly.

    An exact overlap means distinct pieces are equal, so the open set
    condition fails and neighbor analysis is meaningless.
    """

    def __init__(self, detail: str = ""):
        msg = "exact overlap detected: distinct pieces coincide"
        if detail:
            msg = f"{msg} ({detail})"
        super().__init__(msg)


class SeedNotInteriorError(SelfsimError):
    """Raised when a user-supplied seed word is not an interior word."""


class NoInteriorWordError(SelfsimError):
    """Raised when the subset automaton closes without ever emptying, so no
    interior word exists."""


class FrontierExceededError(SelfsimError):
    """Raised when the interior-word subset search exceeds its frontier cap."""

    def __init__(self, cap: int):
        self.cap = cap
        super().__init__(f"interior word search frontier exceeded {cap} states")


class WorklistExceededError(SelfsimError):
    """Raised when neighborhood interning exceeds the worklist cap."""

    def __init__(self, cap: int, count: int):
        self.cap = cap
        self.count = count
        super().__init__(f"neighborhood worklist exceeded the cap ({count} > {cap})")


class NoPredecessorError(SelfsimError):
    """Raised by zoom-out when no positive-probability parent exists."""


class NonConvergenceError(SelfsimError):
    """Raised when the iterative stationary solve fails to converge."""

    def __init__(self, iterations: int, residual: float):
        self.iterations = iterations
        self.residual = residual
        super().__init__(
            f"stationary iteration did not converge after {iterations} steps "
            f"(residual {residual:.3e})"
        )
