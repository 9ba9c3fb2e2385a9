"""Exception types shared across the package.

The CLI maps these onto exit codes, so library code should raise the most
specific one that applies.
"""


class DomainError(ValueError):
    """An argument lies outside the domain of the operation (zero input, n < 2, ...)."""


class PolyParseError(ValueError):
    """Malformed polynomial text."""

    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class BudgetExceeded(RuntimeError):
    """An enumeration would visit more points than the configured budget allows."""

    def __init__(self, required, budget):
        super().__init__(
            f"enumeration needs {required} tuples but the budget is {budget}; "
            f"raise --budget to at least {required}"
        )
        self.required = required
        self.budget = budget
