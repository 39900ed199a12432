"""Exception hierarchy. Each class carries the CLI exit code it maps to."""


class TisimError(Exception):
    exit_code = 1


class GraphFormatError(TisimError, ValueError):
    """Malformed graph6 input or an invalid graph construction."""

    exit_code = 2

    def __init__(self, message, offset=None, line=None):
        self.reason = message
        self.offset = offset
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if offset is not None:
            where.append(f"byte offset {offset}")
        if where:
            message = f"{message} ({', '.join(where)})"
        super().__init__(message)


class DisconnectedGraphError(TisimError, ValueError):
    exit_code = 2


class DegenerateScalingError(TisimError, ValueError):
    """Min-max scaling was asked to divide by a zero range."""

    exit_code = 2


class BudgetExceededError(TisimError):
    """Input is larger than an exact algorithm is allowed to handle."""

    exit_code = 3


class ConvergenceError(TisimError, ArithmeticError):
    exit_code = 4

    def __init__(self, message, residual=None, iterations=None):
        self.residual = residual
        self.iterations = iterations
        super().__init__(message)


class GenerationError(TisimError):
    """A random model kept producing disconnected graphs."""

    exit_code = 3
