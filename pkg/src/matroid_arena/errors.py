"""Exception hierarchy shared by every engine module.

CLI exit-code mapping: input/shape problems (SpecInvalid, LoopDetected,
NotDownwardClosed, OutOfRange, TooLarge, MismatchedGroundSets) exit 2;
infeasibility (NotColorable) exits 1; InternalInfeasible exits 3.
"""

from __future__ import annotations


class MatroidArenaError(Exception):
    """Base class for all engine errors."""


class SpecInvalid(MatroidArenaError):
    """Structurally malformed matroid description."""


class LoopDetected(SpecInvalid):
    """The described matroid has a loop (a single dependent element)."""


class NotDownwardClosed(SpecInvalid):
    """An explicit independence family is not hereditary or misses the empty set."""


class OutOfRange(MatroidArenaError):
    """Element index outside the ground set."""


class DependentContraction(MatroidArenaError):
    """Contraction requested by a set that is not independent."""


class MismatchedGroundSets(MatroidArenaError):
    """Matroids handed to the union engine disagree on ground size."""


class InconsistentInput(MatroidArenaError):
    """A joint weight/list-size instance with l(e) < w(e)."""


class TooLarge(MatroidArenaError):
    """Instance exceeds the enforced desk-scale cap for this operation."""


class PreconditionViolated(MatroidArenaError):
    """Caller broke a documented operation precondition."""


class NotABasis(PreconditionViolated):
    """Basis exchange called with a set that is not a basis."""


class InternalInfeasible(MatroidArenaError):
    """A construction whose existence is guaranteed failed; this is a defect."""


class NotColorable(MatroidArenaError):
    """Requested weighted coloring instance is infeasible.

    Carries the certifying deficiency witness in ``self.witness``.
    """

    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"not colorable: {witness}")


class IllegalMove(MatroidArenaError):
    """A game move the referee rejects; ``reason`` is machine-readable."""

    def __init__(self, reason: str):
        self.reason = reason
        super().__init__(reason)


class WrongPhase(IllegalMove):
    """Move posted while it is the other player's turn or the game is over."""
