"""Exception types shared across the package."""


class Morava2Error(Exception):
    """Base class for all library errors."""


class NonUnit(Morava2Error):
    """Raised when an inverse is requested for a non-unit."""


class InsufficientPrecision(Morava2Error):
    """The question cannot be decided from the digits that are known."""


class Indeterminate(InsufficientPrecision):
    """An element is congruent to 1 at every available digit."""


class NotInSubgroup(Morava2Error):
    pass


class LevelTooSmall(Morava2Error):
    pass


class SizeCapExceeded(Morava2Error):
    pass


class DescriptorMismatch(Morava2Error):
    pass


class NoSolution(Morava2Error):
    pass


class WellDefinednessFailure(Morava2Error):
    pass


class IntegralityFailure(Morava2Error):
    pass


class UnknownIdentifier(Morava2Error):
    def __init__(self, name, offset):
        super().__init__(f"unknown identifier {name!r} at offset {offset}")
        self.name = name
        self.offset = offset


class ExprSyntaxError(Morava2Error, SyntaxError):
    def __init__(self, message, offset):
        super().__init__(f"{message} at offset {offset}")
        self.msg = message
        self.offset = offset
