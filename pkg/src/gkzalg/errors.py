"""Exception hierarchy.

Input problems (bad documents, invalid configurations) derive from
:class:`InputError`; violated preconditions of an otherwise valid request
derive from :class:`PreconditionError`.  The CLI maps the two families to
distinct exit codes.
"""


class GKZError(Exception):
    """Base class for all errors raised by this package."""


class InputError(GKZError):
    pass


class ParseError(InputError):
    """A system description could not be parsed."""

    def __init__(self, message, location=None):
        self.location = location
        if location:
            message = f"{location}: {message}"
        super().__init__(message)


class SpanDeficient(InputError):
    """The generators do not span Z^r as a group."""


class NoGradingForm(InputError):
    """No linear form takes the value 1 on every generator."""


class PreconditionError(GKZError):
    pass


class DegenerateCone(PreconditionError):
    """The cone spanned by the generators is not full-dimensional."""


class NotSaturated(PreconditionError):
    """The semigroup generated by A is not saturated in Z^r."""


class EmptyFiber(PreconditionError):
    """No non-negative lattice point in the cube maps to the requested vector."""


class PrimeTooSmall(PreconditionError):
    """The prime is too small (or divides the denominator) for the mod-p argument."""


class NonConvergentDirection(PreconditionError):
    """The formal solution is not a power series in any coordinate-adapted torus."""
