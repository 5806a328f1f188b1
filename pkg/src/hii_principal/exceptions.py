"""
Exceptions for the HII Principal Series Toolkit
================================================
Every error raised by the library derives from HiiError so callers
(and the CLI) can separate data problems from programming bugs.
"""

from typing import Optional


class HiiError(Exception):
    """Base class for all toolkit errors."""


# =============================================================================
# ARITHMETIC
# =============================================================================

class DivisionByZero(HiiError, ZeroDivisionError):
    """Raised when inverting a zero Scalar."""


# =============================================================================
# ROOT DATA
# =============================================================================

class InvalidDatum(HiiError, ValueError):
    """Root datum violates an axiom (pairing, reflection stability, base)."""


class UnknownType(HiiError, ValueError):
    """Named Cartan type or lattice choice is not recognized."""


class SizeLimitExceeded(HiiError):
    """Weyl group enumeration would exceed the configured bound."""

    def __init__(self, order: int, limit: int):
        self.order = order
        self.limit = limit
        super().__init__(f"Weyl group has at least {order} elements (limit {limit})")


class NotClosed(HiiError):
    """A root subset is not a closed, negation-symmetric subsystem."""


# =============================================================================
# RAMIFICATION / VOLUMES
# =============================================================================

class InvalidInertialDatum(HiiError, ValueError):
    """Filtration levels are not decreasing or have the wrong length."""


class DecompositionFailure(HiiError):
    """W(chi) did not split as W°_chi x| C_chi."""


class FormulaMismatch(HiiError):
    """Two independent evaluations of the same index disagree."""


class IdentityViolation(HiiError):
    """An exact identity failed. Carries the failing clause for reports."""

    def __init__(self, clause: str, detail: str = ""):
        self.clause = clause
        self.detail = detail
        message = f"identity {clause} failed"
        if detail:
            message += f": {detail}"
        super().__init__(message)


# =============================================================================
# PARAMETERS
# =============================================================================

class InconsistentStrings(HiiError):
    """A weight multiset does not decompose into sl2 strings."""


class PoleFlag(HiiError):
    """An L-factor has a pole at the evaluation point."""

    def __init__(self, where: str, detail: Optional[str] = None):
        self.where = where
        super().__init__(f"pole at {where}" + (f" ({detail})" if detail else ""))


class ZeroFlag(PoleFlag):
    """gamma vanishes at the evaluation point because L(0) has a pole."""


class InvalidParameter(HiiError, ValueError):
    """Parameter data is malformed (length mismatch, non half-integral s0...)."""


# =============================================================================
# CENTRALIZERS / HII
# =============================================================================

class NotSteinbergType(HiiError):
    """The sl2 cocharacter is not principal in the connected centralizer."""


class NotDiscrete(HiiError):
    """The parameter has a positive-dimensional centralizer modulo the center."""


class MissingEnhancement(HiiError):
    """Non-Steinberg parameter without |S#| and dim rho overrides."""


class InvalidBlock(HiiError, ValueError):
    """Block input file is malformed."""
