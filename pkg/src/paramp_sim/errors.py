"""Exception hierarchy for paramp_sim."""


class ParampSimError(Exception):
    """Base class for all package errors."""


class ParameterError(ParampSimError, ValueError):
    """Invalid physical parameter or argument."""


class ConfigError(ParampSimError, ValueError):
    """Invalid configuration document. Carries the offending key path."""

    def __init__(self, message: str, key_path: str = ""):
        self.key_path = key_path
        super().__init__(f"{key_path}: {message}" if key_path else message)


class NumericalError(ParampSimError, RuntimeError):
    """Base class for numerical failures."""


class StepSizeUnderflowError(NumericalError):
    """Adaptive integration could not resolve the interval at the requested
    tolerance. Carries the time at which the step size underflowed."""

    def __init__(self, t: float, h: float, tol: float):
        self.t = t
        self.h = h
        self.tol = tol
        super().__init__(
            f"step size underflow at t={t:.6e} s (h={h:.3e}, rel_tol={tol:.1e})"
        )


class UnstableDynamicsError(NumericalError):
    """Dynamics has no steady state / matrix norms overflowed.

    ``index`` is the period index at which the failure was detected, when
    applicable.
    """

    def __init__(self, message: str, index: int | None = None):
        self.index = index
        super().__init__(message if index is None else f"{message} (period {index})")


class BracketingError(NumericalError):
    """A sweep did not bracket the feature it was asked to locate."""
