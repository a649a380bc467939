"""Exception hierarchy shared by every module."""


class AlmostIntError(Exception):
    """Base class for all toolkit errors."""


class ParameterError(AlmostIntError, ValueError):
    """Invalid (n, k), element, set or argument combination."""


class DomainError(AlmostIntError, ValueError):
    """A bound formula was requested outside the range where it is defined."""


class NotAlmostIntersectingError(AlmostIntError, ValueError):
    """Some member has two or more disjoint partners."""


class ResourceError(AlmostIntError, RuntimeError):
    """The request would enumerate or search an unreasonably large space."""


class UnsupportedError(AlmostIntError, ValueError):
    """The operation is only defined for a narrower set of parameters."""
