"""Exception taxonomy shared by every module.

Domain errors are caller mistakes, capacity errors mean the exact
computation would exceed the configured size limits, and invariant
errors signal that an internal identity failed (these are reported
loudly, never truncated or repaired).
"""


class DomainError(ValueError):
    """Input violates a documented precondition."""


class CapacityError(RuntimeError):
    """Exact computation refused: it would exceed a configured ceiling."""


class InvariantError(RuntimeError):
    """An internal exactness or bookkeeping identity failed."""
