"""Exception types.  Each carries the name of the invariant it reports."""

from __future__ import annotations


class PavesetError(ValueError):
    invariant = "PavesetError"

    def __init__(self, message: str = "", **details: object) -> None:
        super().__init__(message or self.invariant)
        self.details = details

    def __str__(self) -> str:
        msg = super().__str__()
        if msg.startswith(self.invariant):
            return msg
        return f"{self.invariant}: {msg}"


class GroundTooLarge(PavesetError):
    invariant = "GroundTooLarge"


class GroundMismatch(PavesetError):
    invariant = "GroundMismatch"


class NotAPaving(PavesetError):
    invariant = "NotAPaving"


class NotMonotone(PavesetError):
    invariant = "NotMonotone"


class NonzeroEmpty(PavesetError):
    invariant = "NonzeroEmpty"


class NotUpwardClosed(PavesetError):
    invariant = "NotUpwardClosed"


class EmptySetIncluded(PavesetError):
    invariant = "EmptySetIncluded"


class NotAnAlgebra(PavesetError):
    invariant = "NotAnAlgebra"


class DomainNotLattice(PavesetError):
    invariant = "DomainNotLattice"


class NotMeasurable(PavesetError):
    invariant = "NotMeasurable"


class IsMeasurable(PavesetError):
    invariant = "IsMeasurable"


class PreconditionFailed(PavesetError):
    invariant = "PreconditionFailed"


class NonConvergent(PavesetError):
    invariant = "NonConvergent"


class InvalidStaircase(PavesetError):
    invariant = "InvalidStaircase"


class NegativeValue(PavesetError):
    invariant = "NegativeValue"
