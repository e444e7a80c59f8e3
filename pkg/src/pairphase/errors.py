"""Exception and warning types shared across the package."""


class PairPhaseError(Exception):
    """Base class for all errors raised by this package."""


class NonConvergenceError(PairPhaseError):
    """An iterative routine exhausted its budget without meeting its tolerance."""


class NonConvergenceWarning(RuntimeWarning):
    """Best-so-far result is returned although the gradient tolerance was not met."""


class UnsupportedRegimeError(PairPhaseError):
    """The requested operation is only defined for kernel exponents q >= 1."""


class NoActiveGapsError(PairPhaseError):
    """Stationarity analysis needs at least one gap above the zero threshold."""


class BracketFailureError(PairPhaseError):
    """A root bracket did not have the expected sign pattern."""


class LogEnergyCollisionError(PairPhaseError):
    """The logarithmic energy is -inf for configurations with coincident points."""
