"""Exception types shared across the package."""


class LinkAdmitError(Exception):
    """Base class for all errors raised by linkadmit."""


class DomainError(LinkAdmitError, ValueError):
    """An argument refers to unknown links/vertices or is out of range."""


class CapacityError(LinkAdmitError):
    """A graph exceeds the enumeration cap."""


class PreconditionError(LinkAdmitError, ValueError):
    """An operation was called on input outside its stated hypotheses."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class RejectionError(LinkAdmitError):
    """Not enough free time to place a link's demand."""

    def __init__(self, message, link=None):
        super().__init__(message)
        self.link = link


class ConsistencyError(LinkAdmitError, AssertionError):
    """Two independent computations disagree; always indicates a bug."""
