"""Exception types raised by the knotconc engine."""

from __future__ import annotations


class KnotSyntaxError(ValueError):
    """Expression text does not match the grammar."""

    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnknownAtomError(ValueError):
    pass


class CertificateError(ValueError):
    """Certificate data is missing or internally inconsistent."""


class SignatureUnavailableError(CertificateError):
    pass


class CableDomainError(ValueError):
    """A cable lies outside the hypotheses of the invariant formulas (q <= 0)."""


class InconsistentBoundsError(ValueError):
    """An invariant interval became empty."""


class SignatureJumpError(ValueError):
    """Signature queried at a jump point; carries both one-sided limits."""

    def __init__(self, x: object, left: int, right: int) -> None:
        super().__init__(
            f"signature is not defined at jump x={x} (one-sided limits {left}, {right})"
        )
        self.x = x
        self.left = left
        self.right = right
