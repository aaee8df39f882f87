"""Exception hierarchy shared across the package."""


class HdtwrcError(Exception):
    pass


class AllocationViolation(HdtwrcError, ValueError):
    """A time allocation is off the unit simplex."""


class NonNegativityViolation(AllocationViolation):
    pass


class SimplexViolation(AllocationViolation):
    pass


class GeometryError(HdtwrcError, ValueError):
    pass


class DomainError(HdtwrcError, ValueError):
    pass


class ModelError(HdtwrcError, ValueError):
    """Malformed linear program or rate region."""


class SchemeViolation(HdtwrcError, ValueError):
    """A bit-pipe scheme breaks one of the wireline rules.

    ``step`` is the zero-based index of the first offending step.
    """

    def __init__(self, message, step=None):
        super().__init__(message)
        self.step = step


class HalfDuplexViolation(SchemeViolation):
    pass


class UnknownBitViolation(SchemeViolation):
    pass


class SchemeParseError(SchemeViolation):
    pass
