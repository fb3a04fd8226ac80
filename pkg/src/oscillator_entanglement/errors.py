"""Exception hierarchy.

Class names double as the flag strings written into sweep output, so keep
them stable.
"""


class EntanglementError(Exception):
    """Base class for every numerical failure raised by this package."""

    @property
    def flag(self) -> str:
        return type(self).__name__


class InvalidParams(EntanglementError, ValueError):
    pass


class InvalidSpec(EntanglementError, ValueError):
    pass


class ComplexRegime(EntanglementError):
    """The kernel frequencies z+/z- are complex (negative discriminant)."""


class DegenerateSystem(EntanglementError):
    pass


class NonNormalizable(EntanglementError):
    pass


class DivisionByZeroB(EntanglementError, ZeroDivisionError):
    pass


class NegativeRadicand(EntanglementError):
    def __init__(self, message: str, value: float):
        super().__init__(message)
        self.value = value


class QuadratureFailure(EntanglementError):
    pass


class BoundStateAbsent(EntanglementError):
    pass


class GridTooSmall(EntanglementError):
    pass
