"""Exception hierarchy shared by every heaplab module."""


class HeaplabError(Exception):
    """Base class for all heaplab errors."""


class PosetError(HeaplabError, ValueError):
    """Malformed graph, poset or heap data."""


class SplitError(HeaplabError, ValueError):
    """A split is malformed or two splits are incompatible."""


class CapacityError(HeaplabError):
    """A lattice enumeration exceeded its split cap."""

    def __init__(self, cap):
        super().__init__(f"more than {cap} splits (cap={cap})")
        self.cap = cap


class RefusedError(HeaplabError):
    """An operation was refused because its hypotheses do not hold."""


class InputError(HeaplabError, ValueError):
    """An input file could not be read or does not match its format."""
