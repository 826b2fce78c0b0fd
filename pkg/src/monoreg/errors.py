"""Exception hierarchy shared by all modules."""


class MonoregError(Exception):
    """Base class for every error raised by this package."""


class ContextMismatch(MonoregError):
    pass


class UnitIdealError(MonoregError):
    """An operation would produce (or was handed) the unit ideal."""


class ColonIsUnit(UnitIdealError):
    """A colon ideal contains 1."""


class ZeroIdealError(MonoregError):
    pass


class ComplexityGuard(MonoregError):
    def __init__(self, message, *, gens=None, num_vars=None):
        super().__init__(message)
        self.gens = gens
        self.num_vars = num_vars


class PreconditionError(MonoregError):
    """Inputs fall outside the hypotheses of a checker."""


class IdealSyntaxError(MonoregError):
    def __init__(self, message, line, column=None):
        loc = f"line {line}" if column is None else f"line {line}, column {column}"
        super().__init__(f"{loc}: {message}")
        self.line = line
        self.column = column


class UnknownVariable(IdealSyntaxError):
    pass
