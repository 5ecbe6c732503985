"""Exception hierarchy shared across the package."""


class NomfixError(Exception):
    """Base class for all library errors."""


class ParseError(NomfixError):
    """Raised on malformed textual input; carries a position when known."""

    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at offset {position})"
        super().__init__(message)


class GroundnessError(NomfixError):
    """An operation restricted to ground terms received a term with variables."""


class CarrierBoundExceeded(NomfixError):
    """A group-closure query exceeded the configured carrier bound."""


class UniverseBoundExceeded(NomfixError):
    """A support-enumeration query exceeded the configured universe bound."""


class UnboundVariable(NomfixError):
    """Interpretation hit a variable with no value and no default rule."""


class ShapeError(NomfixError):
    """A constraint or judgement does not have the shape a translation needs."""


class ReproductionFailure(NomfixError):
    """A packaged demo scenario diverged from its recorded outcome."""

    def __init__(self, step, detail=""):
        self.step = step
        super().__init__(f"reproduction failed at: {step}" + (f" ({detail})" if detail else ""))
