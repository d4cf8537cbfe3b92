"""Exception types shared across the toolkit.

Mathematical non-resolution (a well-posed computation with no usable answer)
is kept separate from input/validation problems so the CLI can map them to
different exit codes.
"""


class DisteqError(Exception):
    """Base class for all toolkit errors."""


# --- input / validation errors -------------------------------------------

class NotStrictlyConvex(DisteqError):
    """Support-function curve has h + h'' below tolerance somewhere."""

    def __init__(self, message, t=None):
        super().__init__(message)
        self.t = t


class DuplicatePoints(DisteqError):
    """Point set contains coincident points (indices attached)."""

    def __init__(self, message, indices=()):
        super().__init__(message)
        self.indices = tuple(indices)


class DegeneratePolygon(DisteqError):
    """Polygon has fewer than 3 usable vertices or zero area."""


class TooCoarse(DisteqError):
    """Grid spacing leaves fewer than 4 points inside the region."""


class Disconnected(DisteqError):
    """Graph is not connected (components attached)."""

    def __init__(self, message, components=()):
        super().__init__(message)
        self.components = tuple(tuple(c) for c in components)


class MaskLengthMismatch(DisteqError):
    """Boundary mask length differs from the space size."""


class NotProbability(DisteqError):
    """Operation requires an equilibrium solution that is a probability measure."""


class EmptyInput(DisteqError):
    """Renderer or reader received no data."""


# --- mathematical non-resolution ------------------------------------------

class SingularSystem(DisteqError):
    """Linear system is rank deficient with no consistent solution."""

    def __init__(self, message, cond=None):
        super().__init__(message)
        self.cond = cond


class NoPositiveNormalization(DisteqError):
    """Raw solve has non-positive total mass, so no equilibrium constant exists."""


class SingularDistanceMatrix(DisteqError):
    """Graph distance matrix is rank deficient and the system is inconsistent."""

    def __init__(self, message, rank=None):
        super().__init__(message)
        self.rank = rank


class SearchBudgetExceeded(DisteqError):
    """Coefficient search exhausted its budget without meeting the target."""


# Errors the CLI reports as exit code 2 (diagnostics written, no result).
MATH_ERRORS = (
    SingularSystem,
    NoPositiveNormalization,
    SingularDistanceMatrix,
    SearchBudgetExceeded,
)
