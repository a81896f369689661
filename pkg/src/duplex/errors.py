"""Exception hierarchy shared by every module."""


class DuplexError(Exception):
    """Base class; ``witness`` carries the offending data when there is any."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class InvalidCategory(DuplexError):
    pass


class NotAssociative(InvalidCategory):
    pass


class MissingComposite(InvalidCategory):
    pass


class BadIdentity(InvalidCategory):
    pass


class ShapeMismatch(DuplexError):
    pass


class BudgetExceeded(DuplexError):
    pass


class TruncationTooShallow(DuplexError):
    pass


class NotDuplicial(DuplexError):
    pass


class DiagramsFail(DuplexError):
    pass


class DegreeMismatch(DuplexError):
    pass


class OutOfTruncation(DuplexError):
    pass


class CoalgebraInvalid(DuplexError):
    pass


class VerificationFailed(DuplexError):
    pass


class GroupoidTooLarge(DuplexError):
    pass


class AdjunctionInvalid(DuplexError):
    pass


class NotGroupoid(DuplexError):
    pass


class ConditionsFail(DuplexError):
    pass


class LiftingNotUniversal(DuplexError):
    pass


class NoHom(DuplexError):
    pass


class InversionFails(DuplexError):
    """Raised when a construction contradicts a proven identity; always a bug."""


class TheoremViolation(DuplexError):
    """A postcondition that the mathematics guarantees did not hold."""


class InvalidStructure(DuplexError):
    """A ring, bimodule or monoidal table failing one of its axioms."""
