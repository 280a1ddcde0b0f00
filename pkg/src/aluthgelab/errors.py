"""Exception types raised by aluthgelab.

Every error raised by this package derives from :class:`AluthgeLabError`,
so callers can catch the whole family with one clause.  Numerical backends
never leak their own exceptions through the public API.
"""


class AluthgeLabError(Exception):
    """Base class for all errors raised by this package."""


class NonFiniteEntryError(AluthgeLabError):
    """A matrix contains NaN or infinite entries."""


class NoConvergenceError(AluthgeLabError):
    """An iterative factorization exhausted its budget without converging."""


class NotHermitianError(AluthgeLabError):
    """A matrix required to be Hermitian is not, beyond tolerance."""


class NegativeSpectrumError(AluthgeLabError):
    """A matrix required to be positive semidefinite has an eigenvalue
    below the clamp threshold."""


class NotInvertibleError(AluthgeLabError):
    """A matrix required to be invertible is numerically singular."""


class NotHyperbolicError(AluthgeLabError):
    """The spectrum touches the unit circle, or the operator is singular,
    so no hyperbolic splitting exists."""


class IllConditionedEigenbasisError(AluthgeLabError):
    """The eigenvector matrix is too ill conditioned for a reliable
    spectral splitting."""


class InvalidDeltaError(AluthgeLabError):
    """A pseudo-orbit defect bound is negative."""


class SizeMismatchError(AluthgeLabError):
    """Two collections that must have equal size do not, or a matrix
    that must be square is not."""


class LengthMismatchError(AluthgeLabError):
    """Two point sequences that must have equal length do not."""


class InvalidSpecError(AluthgeLabError):
    """An ensemble specification is inconsistent."""


class UnstableOverflowError(AluthgeLabError):
    """Back-substitution along the unstable subspace overflowed."""
