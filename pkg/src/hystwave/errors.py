"""Exception types shared across the toolkit."""


class HystwaveError(Exception):
    """Base class for all toolkit errors."""


class NonFiniteState(HystwaveError):
    """A state vector picked up a NaN or infinity during integration."""

    def __init__(self, t, message=""):
        self.t = t
        super().__init__(message or f"non-finite state at t={t!r}")


class TimeOutOfRange(HystwaveError):
    """Requested time lies outside the validity window of a closed form."""


class NoConvergence(HystwaveError):
    """A root search failed; the message carries the last bracket state."""


class InterfaceOutOfDomain(HystwaveError):
    """The comoving interface has left the open unit interval."""


class WindowTooCoarse(HystwaveError):
    """Root-search seeds are spaced wider than the expected root spacing."""


class ExcludedPoint(HystwaveError):
    """The candidate eigenvalue forces a vanishing mean-field and is not
    part of the spectrum even though the characteristic function vanishes."""


class DegenerateDenominator(HystwaveError):
    """An eigenfunction formula degenerates outside the handled special cases."""


class NotCoupled(HystwaveError):
    """Operation requires a width obtained from the width equation."""


class AtJump(HystwaveError):
    """Evaluation requested exactly at the jump point of a limit profile."""


class InconsistentState(HystwaveError):
    """A limit state violates its defining algebraic invariants on entry."""


class WindowEmpty(HystwaveError):
    """A metric window selects too few samples to be meaningful."""


class ConfigError(HystwaveError):
    """Invalid or contradictory run configuration (CLI exit code 2)."""
