"""Exception types raised across the package."""


class HilbmatError(Exception):
    """Base class for all errors raised by hilbmat."""


class StabilizationMissing(HilbmatError):
    """A Hilbert window does not end in a repeated row and column."""


class AccumulationNegative(HilbmatError):
    """Partial sums of a difference grid went negative."""


class NotAdmissible(HilbmatError):
    """An operation needs an admissible difference grid."""


class EmptyScheme(HilbmatError):
    pass


class InternalInconsistency(HilbmatError):
    """A statement that must hold by theory failed; always a bug."""


class ParamMismatch(HilbmatError):
    pass


class StabilizationFailure(InternalInconsistency):
    """The oracle window did not stabilize where it must."""


class PointNotInConfig(HilbmatError):
    pass


class ConditionsNotMet(HilbmatError):
    """None of the separator conditions holds, so the update rule does not apply."""


class NotApplicable(HilbmatError):
    pass


class HypothesesNotMet(HilbmatError):
    pass


class BadSkipList(HilbmatError):
    pass


class FormatError(HilbmatError):
    """Malformed matrix or configuration text."""


class LogWriteFailure(HilbmatError):
    pass
