"""Exception types shared across the package."""


class ContractError(ValueError):
    """An input violates an operation's precondition."""


class DimensionError(ContractError):
    pass


class DomainError(ContractError):
    pass


class FeasibilityError(ContractError):
    pass


class StructureError(RuntimeError):
    """The input graph lacks the structure an algorithm relies on."""


class ParseError(ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ConsistencyError(RuntimeError):
    """Two independent computations of the same quantity disagree."""
