"""Shared exception types."""


class DomainError(ValueError):
    """Parameter outside a family's or equation's legal domain (poles included)."""


class BracketingError(RuntimeError):
    """Root bracket endpoints do not straddle a sign change."""


class SingularityError(RuntimeError):
    """State hit the beta floor; the frame equations divide by beta."""


class ExactDivisionError(ArithmeticError):
    """Exact polynomial division failed (nonzero remainder)."""
