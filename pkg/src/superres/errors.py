"""Exception types raised across the package."""

import numpy as np


class ParameterError(ValueError):
    """A numerical parameter violates an operation's precondition."""


class InfeasibleClumpsError(ParameterError):
    """A separated-clumps configuration cannot be realised on the torus."""


class SeparationUndefinedError(ParameterError):
    """Minimum separation was requested for a single-atom support."""


class ConvergenceError(np.linalg.LinAlgError):
    """An iterative linear-algebra routine failed to converge.

    Attributes
    ----------
    routine : str
        Name of the failing routine.
    iterations : int or None
        Iteration count reached, when the backend reports it.
    """

    def __init__(self, routine, iterations=None, detail=""):
        self.routine = routine
        self.iterations = iterations
        msg = f"{routine} did not converge"
        if iterations is not None:
            msg += f" after {iterations} iterations"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class EstimatorError(RuntimeError):
    """An estimator could not produce a support estimate."""


class MusicPeakDeficit(EstimatorError):
    """MUSIC found fewer local minima than requested atoms."""


class SampleFileError(ValueError):
    """A samples CSV is empty or malformed.

    ``line`` is the 1-based line number of the offending row, if any.
    """

    def __init__(self, message, line=None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)
