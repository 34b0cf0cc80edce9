"""Exceptions shared across the package."""


class DomainError(ValueError):
    """An input lies outside the domain where an operation is defined."""


class ConstantPhase(DomainError):
    """The phase f' + c g'/g vanishes identically, so no order t exists."""


class NotApplicable(Exception):
    """A reduction does not apply; the caller should fall back to another route."""
