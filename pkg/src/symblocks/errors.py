"""Exception hierarchy shared by all modules."""


class SymBlocksError(Exception):
    pass


class InvalidCoreError(SymBlocksError, ValueError):
    """The partition handed in as a core is not a p-core."""


class ShapeError(SymBlocksError, ValueError):
    pass


class NonRationalError(SymBlocksError, ValueError):
    pass


class InternalConsistencyError(SymBlocksError, AssertionError):
    """A computed object failed one of its structural checks.

    These are never expected; the CLI maps them to exit code 2.
    """


class OrthogonalityError(InternalConsistencyError):
    pass


class CacheInvalidError(SymBlocksError):
    pass


class CapExceededError(SymBlocksError, ValueError):
    pass


class EnumerationIncompleteError(SymBlocksError):
    pass


class UnsupportedPrimeError(SymBlocksError, ValueError):
    pass


class UnsupportedRegimeError(SymBlocksError, ValueError):
    pass


class UsageError(SymBlocksError, ValueError):
    pass
