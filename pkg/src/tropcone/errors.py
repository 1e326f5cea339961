"""Exception types shared across the package."""


class TropconeError(Exception):
    pass


class DimensionMismatch(TropconeError):
    pass


class ArityMismatch(TropconeError):
    pass


class MixedSigns(TropconeError):
    """Raised when adding signed tropical numbers of opposite signs."""


class ValidationFailed(TropconeError):
    """A game graph failed validation; carries the report."""

    def __init__(self, report):
        super().__init__(str(report))
        self.report = report


class SingularSystem(TropconeError):
    pass


class NonStochastic(TropconeError):
    pass


class NotCompliant(TropconeError):
    pass


class PreconditionViolated(TropconeError):
    pass


class SupportMismatch(TropconeError):
    pass


class EmptyBelow(TropconeError):
    """No point of the union lies below the query point."""


class MalformedInput(TropconeError):
    """Bad JSON or CLI arguments."""
