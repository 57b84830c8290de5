"""Exception types shared across the package."""


class ComputationError(RuntimeError):
    """A computation hit a resource guard (search size, table size, overflow)."""


class SearchTooLarge(ComputationError):
    pass


class TableTooLarge(ComputationError):
    pass


class IntegerOverflow(ComputationError, OverflowError):
    pass


class IncompleteConjugationTable(ValueError):
    pass
