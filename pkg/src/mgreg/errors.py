class MgregError(Exception):
    """Base class for all errors raised by this package."""


class GroupMismatch(MgregError, ValueError):
    pass


class NotPointed(MgregError):
    """No strictly positive linear functional exists on the given vectors."""


class TorsionUnsupported(MgregError):
    pass


class Overflow(MgregError):
    """A search exceeded its resource cap; no answer is given."""


class DegenerateChamberPoint(MgregError):
    pass


class InvalidSetup(MgregError, ValueError):
    """The grading data violates a standing hypothesis."""


class HypothesisViolated(MgregError):
    pass


class SubsetCapExceeded(MgregError):
    pass


class SearchExhausted(MgregError):
    pass
