"""Exception hierarchy shared by the library and the CLI."""

from __future__ import annotations


class OcycleError(RuntimeError):
    """Base class for every error raised by ocycle."""


class InputError(OcycleError, ValueError):
    """Raised when a caller passes data outside an operation's domain."""


class NonPositivePart(InputError):
    """Raised when a partition is built from a part < 1."""


class UnsupportedField(InputError):
    """Raised when q is not a prime power, or not an allowed power of two."""


class ZeroConstantTerm(InputError):
    """Raised when star() is applied to a polynomial with φ(0) = 0."""


class NonUnitConstantTerm(InputError):
    """Raised when inverting a series whose constant term is zero."""


class DivergentFamily(InputError):
    """Raised when an infinite product has exponents that do not grow."""


class BadDimension(InputError):
    """Raised for an odd symplectic/orthogonal dimension or a negative one."""


class InvalidData(InputError):
    """Raised when rational-canonical-form data violates the orthogonal constraints."""


class HalfPowerExposure(InputError):
    """Raised when the unpaired B factor of a non-self-conjugate polynomial is requested."""


class InvalidParameters(InputError):
    """Raised for measure parameters outside 0 < u < sqrt(q)."""


class BudgetError(OcycleError):
    """Raised when a computation would exceed a configured resource cap."""


class BudgetExceeded(BudgetError):
    """Raised when an oracle closure or matrix encoding exceeds its cap."""


class ChainStepLimit(BudgetError):
    """Raised when a partition sampler fails to reach state 0 within the step cap."""


class NormalizationFailure(OcycleError):
    """Raised when a truncated mass and its tail bound cannot bracket 1."""


class VerificationFailure(OcycleError):
    """Raised when a verification suite finds a mismatch."""
