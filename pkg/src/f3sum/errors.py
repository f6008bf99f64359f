"""Exception types shared across the package.

Everything derives from F3Error so callers can catch the library as a unit.
The CLI maps these onto exit codes.
"""


class F3Error(Exception):
    """Base class for all f3sum errors."""


class BackendMismatchError(F3Error):
    """Float and rational scalars were mixed in one computation."""


class InvalidIndexError(F3Error):
    """A family index is out of range or names an unknown family."""


class DenominatorPoleError(F3Error):
    """A denominator Pochhammer factor vanished at a visited lattice point."""


class NotConvergedError(F3Error):
    """Strict-mode evaluation stopped at the cap without meeting the stall rule."""


class InvalidInstanceError(F3Error):
    """An identity instance is malformed: wrong scalars, bad index, flagged pole."""


class PoleAtOneError(F3Error):
    """The binomial closed form was requested at its t = 1 singularity."""


class InexactPowerError(F3Error):
    """A rational-backend power has a non-integer exponent, so no exact value exists."""
