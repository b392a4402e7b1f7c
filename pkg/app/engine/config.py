import enum
from dataclasses import dataclass, replace

CELL_WIDTHS = (8, 16, 32)


class UnderflowPolicy(enum.Enum):
    STRICT = 'strict'   # moving left of cell 0 is a run error
    SPARSE = 'sparse'   # the tape extends to the left


@dataclass(frozen=True)
class EngineConfig:
    """Semantics profile shared by every engine.

    Cells hold `cell_width` bits and wrap modulo 2**cell_width. Limits of
    None mean unbounded.
    """
    cell_width: int = 8
    underflow_policy: UnderflowPolicy = UnderflowPolicy.STRICT
    step_limit: int | None = None
    tape_limit: int | None = None

    def __post_init__(self):
        if self.cell_width not in CELL_WIDTHS:
            raise ValueError(f"cell_width must be one of {CELL_WIDTHS}, got {self.cell_width}")
        if not isinstance(self.underflow_policy, UnderflowPolicy):
            raise ValueError(f"unknown underflow policy {self.underflow_policy!r}")
        for name in ('step_limit', 'tape_limit'):
            value = getattr(self, name)
            if value is not None and value < 0:
                raise ValueError(f"{name} must be non-negative, got {value}")

    @property
    def mask(self):
        return (1 << self.cell_width) - 1

    @property
    def sparse(self):
        return self.underflow_policy is UnderflowPolicy.SPARSE

    def with_limits(self, step_limit=None, tape_limit=None):
        return replace(self, step_limit=step_limit, tape_limit=tape_limit)


PORTABLE = EngineConfig()
APPENDIX = EngineConfig(cell_width=8, underflow_policy=UnderflowPolicy.SPARSE)

PROFILES = {
    'portable': PORTABLE,
    'appendix': APPENDIX,
}


def get_profile(name):
    try:
        return PROFILES[name]
    except KeyError:
        raise ValueError(f"unknown profile {name!r}; choose from {sorted(PROFILES)}") from None
