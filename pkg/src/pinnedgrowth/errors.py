"""Exception hierarchy shared by every module of the package."""


class PinnedGrowthError(Exception):
    """Base class for all errors raised by this package."""


class ExactArithmeticError(PinnedGrowthError, ArithmeticError):
    pass


class DivisionByZero(ExactArithmeticError, ZeroDivisionError):
    pass


class FieldMismatchError(ExactArithmeticError, TypeError):
    """Two scalars from different fields met in one computation."""


class ParseError(PinnedGrowthError, ValueError):
    pass


class InvalidSetError(PinnedGrowthError, ValueError):
    """A set or point-set operation got an argument outside its domain."""


class CapExceededError(PinnedGrowthError):
    """A brute-force path was asked to enumerate more than its configured cap."""

    def __init__(self, what, size, cap):
        super().__init__(f"{what}: size {size} exceeds cap {cap}")
        self.what = what
        self.size = size
        self.cap = cap


class ConfigError(PinnedGrowthError, ValueError):
    pass
