"""Exception hierarchy shared by all shiftlab modules."""


class ShiftlabError(Exception):
    """Base class for every error raised by this package."""


class GridSizeError(ShiftlabError, ValueError):
    """Grid is too small (or not a power of two) for the requested band."""


class TruncationOverflowError(ShiftlabError):
    """An operation would discard more coefficient mass than the tail budget.

    The relative discarded mass is available as ``loss``.
    """

    def __init__(self, message: str, loss: float = 0.0):
        super().__init__(message)
        self.loss = float(loss)


class DomainError(ShiftlabError, ValueError):
    """Input violates a mathematical precondition."""


class ModulusFloorError(DomainError):
    """A boundary modulus sample sits below the configured floor."""


class ExtremePointError(DomainError):
    """Outer data is (numerically) an extreme point of the unit ball."""


class CoprimalityError(DomainError):
    """Two inner functions share a zero within the merge tolerance."""


class EdgeContaminationError(ShiftlabError):
    """Subspace carries orphaned mass at the truncation edge.

    The truncated shift action is meaningless there; raise the truncation
    order and rebuild the subspace.
    """


class AmbientMismatchError(ShiftlabError, ValueError):
    """Two subspaces (or a subspace and operator) live at different orders."""
