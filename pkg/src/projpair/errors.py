"""Exception hierarchy shared by every module."""


class ProjPairError(Exception):
    """Base class for all errors raised by projpair."""


class ValidationError(ProjPairError, ValueError):
    """An input failed a shape, finiteness or structure check."""


class NotHermitianError(ValidationError):
    def __init__(self, asymmetry, message=None):
        self.asymmetry = float(asymmetry)
        super().__init__(message or f"matrix is not Hermitian (asymmetry {self.asymmetry:.3e})")


class NotAProjectionError(ValidationError):
    def __init__(self, residual, message=None):
        self.residual = float(residual)
        super().__init__(
            message or f"matrix is not an orthogonal projection (residual {self.residual:.3e})"
        )


class IndexSetError(ValidationError):
    """Malformed or out-of-range index-set specification."""


class SymmetryRequiredError(ValidationError):
    """The index set is not invariant under j -> -j mod n."""


class ConvergenceError(ProjPairError, ArithmeticError):
    """The Jacobi iteration hit its sweep limit."""


class InternalConsistencyError(ProjPairError, ArithmeticError):
    """A computed quantity violated a structural invariant beyond tolerance."""


class NoUniqueGeodesicError(ProjPairError):
    def __init__(self, dim10, dim01):
        self.dim10 = int(dim10)
        self.dim01 = int(dim01)
        super().__init__(
            "no unique geodesic: dim R(P)∩N(Q) = "
            f"{self.dim10}, dim N(P)∩R(Q) = {self.dim01}"
        )


class UndefinedError(ProjPairError, ArithmeticError):
    """Quantity is undefined for the given input (e.g. gap of the zero operator)."""


class NotAProjectionProductError(ProjPairError):
    def __init__(self, residual):
        self.residual = float(residual)
        super().__init__(
            f"matrix is not a product of two orthogonal projections (residual {self.residual:.3e})"
        )
