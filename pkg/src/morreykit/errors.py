"""Exception types shared across the toolkit."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ResourceLimitError(RuntimeError):
    """A computation would exceed a configured resource ceiling."""


class UncertifiedDomainError(ValueError):
    """A supremum cannot be certified exact and no search window was supplied."""


class NoStoppingLevelError(RuntimeError):
    """No dyadic level within the cap has all weighted averages below threshold."""
