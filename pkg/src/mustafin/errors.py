"""Exception types shared across the package."""


class MustafinError(ValueError):
    """Base class for all errors raised by this package."""


class InvalidInput(MustafinError):
    pass


class IndexMismatch(MustafinError):
    """Two vectors or sets live over different coordinate index sets."""


class NotConvex(MustafinError):
    pass


class StartNotMember(MustafinError):
    pass


class ParamMismatch(MustafinError):
    """Two k-subsets with different ambient (n, k)."""


class NotPrincipalDownSet(MustafinError):
    """The zero set of a class is not of the form {J : J <= I}."""


class TargetNotInClosure(MustafinError):
    pass
