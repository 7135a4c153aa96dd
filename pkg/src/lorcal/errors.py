"""Exception types raised across the package."""


class LorcalError(ValueError):
    """Base class for all domain errors."""


class NotInRestSpace(LorcalError):
    pass


class DegenerateSpan(LorcalError):
    pass


class MixedChirality(LorcalError):
    pass


class ZeroOperator(LorcalError):
    pass


class NullBase(LorcalError):
    pass


class NotOrthochronous(LorcalError):
    pass


class BranchAmbiguous(LorcalError):
    pass


class ExcludedCase(LorcalError):
    pass


class Unresolvable(LorcalError):
    pass


class InvalidState(LorcalError):
    pass


class NoConvergence(LorcalError):
    pass


class BranchCut(LorcalError):
    pass
