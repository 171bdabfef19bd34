"""Exception types shared across the package."""


class CherednikError(Exception):
    pass


class ConductorMismatch(CherednikError, ValueError):
    pass


class CapExceeded(CherednikError):
    pass


class NotUnitary(CherednikError, ValueError):
    pass


class NotReflectionGroupWarning(UserWarning):
    pass


class FactorizationFailed(CherednikError):
    pass


class NotCentral(CherednikError):
    pass


class NotScalar(CherednikError):
    pass


class NotDivisible(CherednikError, ArithmeticError):
    pass


class NotCoxeter(CherednikError, ValueError):
    pass


class NotEquivariant(CherednikError):
    pass


class NotInvariant(CherednikError, ValueError):
    pass


class SingularParameter(CherednikError):
    def __init__(self, eigenvalue, message=None):
        self.eigenvalue = eigenvalue
        super().__init__(message or f"-c in N for eigenvalue c = {eigenvalue}")


class Inconclusive(CherednikError):
    pass


class VerificationFailed(CherednikError):
    pass


class MultiplicityError(CherednikError, ValueError):
    pass


DivisionByZero = ZeroDivisionError
