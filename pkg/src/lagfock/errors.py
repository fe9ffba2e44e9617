"""Shared exception types."""


class DomainError(ValueError):
    """Argument outside the mathematical domain of an operation."""


class QuadratureError(RuntimeError):
    """A quadrature failed to meet the requested tolerance within budget."""


class SeriesDivergenceError(RuntimeError):
    """A series summation detected divergence (sustained term ratio >= 1)."""
