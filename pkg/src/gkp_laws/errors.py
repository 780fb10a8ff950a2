"""Exception hierarchy shared by every module of the package."""


class GkpError(Exception):
    """Base class for computation errors (the CLI maps these to exit code 1)."""


class ResourceLimitError(GkpError):
    pass


class ZeroRowSum(GkpError):
    """All entries of a triangle row vanish, so the row law is undefined."""


class Unclassifiable(GkpError):
    pass


class WrongRegime(GkpError):
    pass


class NoConvergence(GkpError):
    pass


class CompositionOrderError(GkpError):
    """An inner series has a nonzero constant term where zero is required."""


class ZeroDenominator(GkpError):
    pass


class InvalidParameters(GkpError):
    pass
