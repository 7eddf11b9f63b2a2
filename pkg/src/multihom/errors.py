"""Exception types raised across the package."""


class MultihomError(Exception):
    """Base class for all errors raised by multihom."""


class DomainError(MultihomError, ValueError):
    """An argument lies outside the domain an operation is defined on."""


class NormalizationError(MultihomError, ValueError):
    """A superposition has zero norm and cannot be normalized."""


class ConsistencyError(MultihomError, ArithmeticError):
    """A numerical result drifted beyond what rounding can explain."""


class ResourceLimitError(MultihomError, MemoryError):
    """The brute-force path would exceed its work or memory budget."""
