"""Exception hierarchy shared by all modules."""


class EquisingularError(Exception):
    """Base class for every error raised by this package."""


class PolySyntaxError(SyntaxError, EquisingularError):
    """Malformed polynomial text; ``position`` is the 0-based column."""

    def __init__(self, message, text="", position=0):
        super().__init__(f"{message} at position {position}")
        self.msg = message
        self.text = text
        self.position = position
        self.offset = position + 1

    def __str__(self):
        pointer = " " * self.position + "^"
        return f"{self.msg} at position {self.position}\n  {self.text}\n  {pointer}"


class NotAtOrigin(EquisingularError, ValueError):
    pass


class NotIsolated(EquisingularError, ValueError):
    pass


class UnknownType(EquisingularError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unknown singularity type"


class ParityError(EquisingularError, ValueError):
    pass


class MissingOverride(EquisingularError, ValueError):
    pass


class InvariantViolation(EquisingularError, ValueError):
    pass


class InexactDegree(EquisingularError, ValueError):
    pass


class ArityMismatch(EquisingularError, ValueError):
    pass


class NotRankOne(EquisingularError, TypeError):
    pass


class MissingInvariant(EquisingularError, ValueError):
    pass


class BetaRange(EquisingularError, ValueError):
    pass


class DomainError(EquisingularError, ValueError):
    pass


class MixedFlavors(EquisingularError, ValueError):
    pass
