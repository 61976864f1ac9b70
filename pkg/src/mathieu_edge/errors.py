"""Exception hierarchy shared by all modules."""


class MathieuEdgeError(Exception):
    pass


class ParameterError(MathieuEdgeError, ValueError):
    """Invalid operator or model parameters."""


class DimensionError(MathieuEdgeError, ValueError):
    pass


class DegenerateVectorError(MathieuEdgeError, ValueError):
    """Vector is zero (or numerically zero) where a nonzero one is needed."""


class WindowError(MathieuEdgeError, ValueError):
    pass


class NotRepresentableError(MathieuEdgeError, ValueError):
    """A transform has no exact cyclic representation for these parameters."""


class SolverError(MathieuEdgeError, RuntimeError):
    pass


class SplitMatrixError(SolverError):
    """Tridiagonal matrix has a zero off-diagonal; caller must deflate."""


class ConvergenceError(SolverError):
    pass


class OracleSizeError(SolverError):
    pass
