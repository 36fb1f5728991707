"""
Exception hierarchy for orbit-subspace-codes.

Every error raised by the library derives from OrbitCodeError. Subclasses also
derive from the closest builtin so callers may catch ValueError, KeyError, etc.
The CLI maps ConfigError to exit status 2 and VerificationError to exit status 3.
"""


class OrbitCodeError(Exception):
    """Base class for all library errors."""


# ============================================================================
# Finite fields
# ============================================================================


class FieldError(OrbitCodeError, ValueError):
    """Invalid field parameters or operands from different fields."""


class ReduciblePolynomialError(FieldError):
    """The defining polynomial factors over the base field."""


class NonPrimitivePolynomialError(FieldError):
    """The defining polynomial is irreducible but its root is not primitive."""


class FieldZeroDivisionError(FieldError, ZeroDivisionError):
    """Inversion of the zero element."""


# ============================================================================
# Linear algebra and subspaces
# ============================================================================


class ShapeError(OrbitCodeError, ValueError):
    """Matrix shape mismatch or malformed matrix literal."""


class SingularMatrixError(ShapeError):
    """Inverse requested for a singular matrix."""


class AmbientMismatchError(OrbitCodeError, ValueError):
    """Objects live in different ambient spaces."""


class SizeCapExceededError(OrbitCodeError, RuntimeError):
    """An enumeration or closure would exceed its configured cap."""


# ============================================================================
# Groups, codes and partitions
# ============================================================================


class GroupError(OrbitCodeError, ValueError):
    """Invalid group element, subgroup relation or series."""


class SingletonCodeError(OrbitCodeError, ValueError):
    """A minimum distance was requested for a code with fewer than two codewords."""


class NotACodewordError(OrbitCodeError, KeyError):
    """A subspace passed as a codeword is not in the code."""

    def __str__(self) -> str:
        # KeyError quotes its argument; keep the plain message
        return str(self.args[0]) if self.args else ""


class PartitionError(OrbitCodeError, ValueError):
    """Partition tree or component-code preconditions violated."""


# ============================================================================
# Runtime
# ============================================================================


class ConfigError(OrbitCodeError, ValueError):
    """Invalid run configuration."""


class VerificationError(OrbitCodeError, AssertionError):
    """A numeric verification failed."""
