"""Shared exception types and the step/contraction budget."""


class ChuringError(Exception):
    pass


class ValidationError(ChuringError):
    """A machine, expression or term violates a structural invariant."""


class ParseError(ChuringError):
    def __init__(self, message, line=None, column=None):
        loc = ""
        if line is not None:
            loc = f" at line {line}" + (f", column {column}" if column is not None else "")
        super().__init__(message + loc)
        self.line = line
        self.column = column


class FuelExhausted(ChuringError):
    """The step/contraction/evaluation budget ran out before a verdict."""


class NonEncodable(ChuringError):
    """A halted tape does not hold a well-formed unary numeral."""


class NotANumeral(ChuringError):
    """A normal form does not match the shape of a Church numeral."""


class NotADecider(ChuringError):
    """A machine asserted to be a decider failed to halt within fuel."""


class GuardExceeded(ChuringError):
    """Inputs outside the desk-scale termination guard."""


class WireParseError(ParseError):
    """Malformed wire string for a lambda term on tape."""


class Fuel:
    """Mutable budget; every primitive operation spends one unit.

    fuel must be positive.  Exhaustion raises FuelExhausted rather than
    returning a sentinel so deeply nested evaluators unwind cleanly.
    """

    __slots__ = ("remaining",)

    def __init__(self, amount):
        if amount <= 0:
            raise ValidationError("fuel must be positive")
        self.remaining = int(amount)

    def spend(self, n=1):
        self.remaining -= n
        if self.remaining < 0:
            raise FuelExhausted("budget exhausted")

    def __repr__(self):
        return f"Fuel({self.remaining})"
