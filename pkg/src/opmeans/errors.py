"""Exception hierarchy shared by every module of the package."""


class OpMeansError(Exception):
    """Base class for all errors raised by opmeans."""


class DimensionError(OpMeansError, ValueError):
    """Operands are not square or do not share a dimension."""


class NotPSDError(OpMeansError, ValueError):
    """A matrix expected to be positive semidefinite has a negative eigenvalue."""

    def __init__(self, message, min_eig=None):
        super().__init__(message)
        self.min_eig = min_eig


class SingularMatrixError(OpMeansError, ValueError):
    """A matrix that must be positive definite is (numerically) singular."""

    def __init__(self, message, min_eig=None):
        super().__init__(message)
        self.min_eig = min_eig


class EigenError(OpMeansError, ArithmeticError):
    """The Hermitian eigensolver failed; carries the offending input."""

    def __init__(self, message, matrix=None):
        super().__init__(message)
        self.matrix = matrix


class EvaluationError(OpMeansError, ArithmeticError):
    """A representing function returned a non-finite value."""

    def __init__(self, message, point=None):
        super().__init__(message)
        self.point = point


class ParameterError(OpMeansError, ValueError):
    """Family parameters, tolerances or schedules are out of range."""


class NonConvergenceError(OpMeansError, ArithmeticError):
    """A numerical extrapolation (boundary coefficient) did not settle."""


class ConvergenceError(OpMeansError, ArithmeticError):
    """The epsilon-regularized sequence did not converge; carries the trace."""

    def __init__(self, message, trace=None, result=None):
        super().__init__(message)
        self.trace = trace
        self.result = result


class DegenerateInputError(OpMeansError, ValueError):
    """Input at which a strict comparison degenerates to equality."""
