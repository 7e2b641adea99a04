"""Exception hierarchy.

Every error raised on purpose by the library derives from :class:`TripError`.
The class name doubles as the short error code shown by the CLI
(``NoDigit``, ``Reducible`` ...).  ``stage`` is filled in by the unit pipeline
so callers can tell which step failed.
"""


class TripError(Exception):
    stage = None

    @property
    def code(self):
        return type(self).__name__

    def __str__(self):
        msg = super().__str__()
        if self.stage:
            return f"[{self.stage}] {self.code}: {msg}"
        return f"{self.code}: {msg}" if msg else self.code


class NotSquarefree(TripError):
    pass


class DivByZero(TripError, ZeroDivisionError):
    pass


class FieldMismatch(TripError):
    pass


class Reducible(TripError):
    pass


class NotUnitShape(TripError):
    pass


class NoRootInUnitInterval(TripError):
    pass


class ProjectionPole(TripError):
    pass


class NoDigit(TripError):
    pass


class DegenerateOrbit(TripError):
    pass


class ParameterRange(TripError):
    pass


class ParseError(TripError, ValueError):
    def __init__(self, message, text=None, position=None):
        super().__init__(message)
        self.text = text
        self.position = position

    def __str__(self):
        base = super().__str__()
        if self.position is not None:
            return f"{base} (at position {self.position} in {self.text!r})"
        return base
