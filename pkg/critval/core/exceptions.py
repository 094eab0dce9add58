"""Exception hierarchy."""
from typing import Iterable, Optional


class CritValError(Exception):
    """Base class for all critval errors."""


class InvalidInstanceError(CritValError, ValueError):
    """An instance or spec violates its own invariants."""


class BoundContainsVariableError(CritValError, ValueError):
    """A definite-integral bound mentions the integration variable."""

    def __init__(self, variable: str):
        self.variable = variable
        super().__init__(f"integration bound contains the integration variable {variable}")


class UnboundVariableError(CritValError, KeyError):
    """Evaluation point does not assign every variable of the polynomial."""

    def __init__(self, missing: Iterable[str]):
        self.missing = list(missing)
        super().__init__(f"unbound variables: {', '.join(self.missing)}")

    def __str__(self) -> str:
        return self.args[0]


class ExactDivisionFailedError(CritValError, ArithmeticError):
    """A polynomial division that must be exact left a remainder."""


class BudgetExceededError(CritValError):
    """An intermediate polynomial outgrew the configured term budget."""

    def __init__(self, limit: int, size: int):
        self.limit = limit
        self.size = size
        super().__init__(f"intermediate polynomial has {size} terms, budget is {limit}")


class TheoremBRequiresPositiveMultiplicityError(InvalidInstanceError):
    """Critical-value Jacobian checks need every multiplicity >= 1."""

    def __init__(self, multiplicities: Iterable[int]):
        self.multiplicities = list(multiplicities)
        super().__init__(
            f"all multiplicities must be >= 1, got {self.multiplicities}"
        )


class NoConsistentRuleError(CritValError):
    """No candidate sign rule passes every calibration case."""

    def __init__(self, check: str, table: Optional[dict] = None):
        self.check = check
        self.table = table or {}
        super().__init__(f"no sign rule passes every case of {check}")


class ReportFormatError(CritValError):
    """A report file could not be parsed."""

    def __init__(self, path: str, cause: str):
        self.path = path
        self.cause = cause
        super().__init__(f"{path}: {cause}")


class InvariantViolationError(CritValError, ArithmeticError):
    """A quantity that must vanish identically did not."""
