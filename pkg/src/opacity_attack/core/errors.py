"""Exception types shared across the toolkit."""


class ModelValidationError(ValueError):
    """Invalid input: unknown identifiers, broken references or violated model invariants.

    Attributes:
        diagnostics: One human-readable line per problem found.
    """

    def __init__(self, message: str, diagnostics: list[str] | None = None) -> None:
        self.diagnostics = list(diagnostics or [])
        if self.diagnostics:
            message = f"{message}: " + "; ".join(self.diagnostics)
        super().__init__(message)


class ContractViolationError(RuntimeError):
    """An attack strategy or attacked run broke the attacker model's constraints."""


class EnumerationLimitError(RuntimeError):
    """The brute-force oracle exceeded its configured enumeration budget."""
