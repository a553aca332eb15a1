"""Exception hierarchy shared by all modules."""


class GrothquotError(Exception):
    """Base class for every error raised by this package."""


class BoundedInputError(GrothquotError, ValueError):
    """An integer argument lies outside the supported range."""


class UnboundSymbolError(GrothquotError, KeyError):
    """A class mentions a base symbol with no supplied point count."""


class UnsupportedClassError(GrothquotError, ValueError):
    """The operation is only defined on nonnegative pure-L classes."""


class InsufficientDataError(GrothquotError, ValueError):
    """A tabulated counting sequence is too short for the request."""


class IntegralityError(GrothquotError, ArithmeticError):
    """A Burnside sum was not divisible by the group order.

    This can only happen if some twisted count is wrong, so it signals an
    internal inconsistency rather than bad user input.
    """


class UnsupportedParametersError(GrothquotError, ValueError):
    """The field size is not tame for the requested group action."""


class ResourceError(GrothquotError, RuntimeError):
    """A brute-force enumeration would exceed its point budget."""


class InvalidScenarioError(GrothquotError, ValueError):
    """A scenario description is malformed or violates a precondition."""


class UnknownCheckError(GrothquotError, KeyError):
    """No identity check is registered under the requested name."""
