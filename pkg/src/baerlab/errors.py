"""Exception hierarchy shared by every subsystem."""


class BaerLabError(Exception):
    """Base class for all library errors."""


class CapExceeded(BaerLabError):
    """A construction or enumeration would exceed a configured size cap."""

    def __init__(self, what, size, cap):
        self.what = what
        self.size = size
        self.cap = cap
        super().__init__(f"{what}: size {size} exceeds cap {cap}")


class InvalidSpec(BaerLabError):
    """A constructor expression or table literal is malformed or fails an axiom."""


class EmptySubset(BaerLabError):
    pass


class NotIdempotent(BaerLabError):
    pass


class NotSubmodule(BaerLabError):
    pass


class ZeroElement(BaerLabError):
    pass


class PreconditionFailed(BaerLabError):
    pass


class HypothesisFailed(BaerLabError):
    pass


class NotEssential(BaerLabError):
    pass


class UnknownCheck(BaerLabError):
    pass


class NoModuleStructure(BaerLabError):
    """Hom(M, N) carries no declared right module structure.

    The plain hom set is attached so callers can still use it.
    """

    def __init__(self, message, homset=None):
        super().__init__(message)
        self.homset = homset
