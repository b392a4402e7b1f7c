from lang.exceptions import DbfiError


class TowerError(DbfiError):
    pass


class StructureMismatch(TowerError):
    """The interpreter source does not have the expected loop structure."""


class DecodeError(TowerError):
    """A host tape does not follow the dbfi memory layout grammar."""


class CosimPreconditionError(TowerError):
    """The simulated program cannot be cosimulated (it fails at level 0)."""

    def __init__(self, message, outcome=None):
        self.outcome = outcome
        super().__init__(message)


class LayoutMismatch(TowerError):
    def __init__(self, boundary_no, diff):
        self.boundary_no = boundary_no
        self.diff = diff
        fields = ', '.join(f"{name}: expected {expected!r}, got {actual!r}"
                           for name, (expected, actual) in diff.items())
        super().__init__(f"layout mismatch at boundary {boundary_no}: {fields}")


class ChainOverrun(TowerError):
    def __init__(self, boundary_no, limit):
        self.boundary_no = boundary_no
        self.limit = limit
        super().__init__(
            f"shadow needed more than {limit} instructions to reach boundary {boundary_no}"
        )
