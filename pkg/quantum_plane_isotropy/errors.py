"""
Exception taxonomy for quantum-plane-isotropy.

Every error carries the exit code and category the CLI reports for it.
"""

from typing import Any, Optional


class QPIError(Exception):
    """Base class for all library errors."""

    exit_code = 1
    category = "error"


class ParseError(QPIError):
    """Malformed text or JSON input."""

    exit_code = 2
    category = "parse"


class DomainError(QPIError):
    """Input is well-formed but mathematically outside the supported domain."""

    exit_code = 3
    category = "domain"


class NotADerivation(DomainError):
    """
    The given generator images violate yx = qxy.

    Attributes:
        residual: the nonzero QPoly δ(y)x + yδ(x) − q(δ(x)y + xδ(y))
    """

    def __init__(self, message: str, residual: Optional[Any] = None):
        super().__init__(message)
        self.residual = residual


class DegenerateSystem(DomainError):
    """The exponent determinant ad − bc vanishes."""


class BadInput(DomainError):
    """A precondition on integer parameters is violated."""


class ResourceError(QPIError):
    """A configured resource limit was hit."""

    exit_code = 4
    category = "resource"


class ConductorCapExceeded(ResourceError):
    """A scalar operation needs a cyclotomic conductor above the configured cap."""

    def __init__(self, requested: int, cap: int):
        super().__init__(f"conductor {requested} exceeds the configured cap {cap}")
        self.requested = requested
        self.cap = cap


class InternalConsistencyError(QPIError):
    """Two independent computations disagree. Always a bug."""

    exit_code = 5
    category = "internal"
