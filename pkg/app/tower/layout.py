"""dbfi's memory layout at a fetch boundary, predicted and decoded.

From cell 0: the instruction codes already executed, the simulated IP (two
zero cells), the codes still to execute, two separating zeros, then one
(marker, value) pair per simulated cell. Markers are 2 up to and including
the simulated head and 0 beyond it. The host head sits on the cell right
after the last code position, the execute loop's test cell.
"""
from dataclasses import dataclass, field

from lang.instructions import INSTRUCTION_BY_CODE

from .exceptions import DecodeError

MARKER_AT_OR_LEFT = 2
MARKER_RIGHT = 0


def trim_cells(values, head):
    """Cells 0..R where R is the larger of head and the last nonzero cell."""
    values = tuple(values)
    last = max((i for i, value in enumerate(values) if value), default=0)
    end = max(head, last) + 1
    return values[:end] + (0,) * (end - len(values))


@dataclass(frozen=True)
class ShadowState:
    codes: tuple
    sim_ip: int
    sim_cells: tuple
    sim_head: int
    executed_count: int = field(default=0, compare=False)

    def __post_init__(self):
        if not 0 <= self.sim_ip <= len(self.codes):
            raise ValueError(f"sim_ip {self.sim_ip} outside 0..{len(self.codes)}")
        if self.sim_head < 0:
            raise ValueError(f"sim_head must be >= 0, got {self.sim_head}")
        if any(code not in INSTRUCTION_BY_CODE for code in self.codes):
            raise ValueError("codes must be in 1..8")
        if any(not 0 <= value < 256 for value in self.sim_cells):
            raise ValueError("simulated cells hold bytes")

    @classmethod
    def from_machine(cls, codes, state):
        """Shadow view of a direct-engine state running the simulated program."""
        _, values = state.tape.snapshot(0, max(state.tape.highest, state.head) + 1)
        return cls(
            codes=tuple(codes),
            sim_ip=state.ip,
            sim_cells=trim_cells(values, state.head),
            sim_head=state.head,
            executed_count=state.steps,
        )


@dataclass(frozen=True)
class LayoutPrediction:
    cells: tuple
    head: int


def predict_layout(shadow):
    codes = tuple(shadow.codes)
    cells = trim_cells(shadow.sim_cells, shadow.sim_head)
    pairs = []
    for index, value in enumerate(cells):
        pairs += [MARKER_AT_OR_LEFT if index <= shadow.sim_head else MARKER_RIGHT, value]
    return LayoutPrediction(
        cells=codes[:shadow.sim_ip] + (0, 0) + codes[shadow.sim_ip:] + (0, 0) + tuple(pairs),
        head=len(codes) + 1,
    )


def _read_codes(tape, start):
    codes = []
    position = start
    while position < len(tape) and tape[position] != 0:
        if tape[position] not in INSTRUCTION_BY_CODE:
            raise DecodeError(f"cell {position} holds {tape[position]}, not an instruction code")
        codes.append(tape[position])
        position += 1
    if position + 1 < len(tape) and tape[position + 1] != 0:
        raise DecodeError(f"expected a zero pair at cell {position}, found a lone zero")
    return codes, position


def decode_layout(tape, head=None):
    """Recover the simulated program state from a host tape starting at cell 0.

    Raises:
        DecodeError: when the tape does not follow the layout grammar
    """
    tape = tuple(tape)
    executed, ip_pair = _read_codes(tape, 0)
    remaining, separator = _read_codes(tape, ip_pair + 2)
    codes = tuple(executed + remaining)

    if head is not None and head != len(codes) + 1:
        raise DecodeError(f"host head at cell {head}, expected {len(codes) + 1}")

    base = separator + 2
    markers = tape[base::2]
    values = tape[base + 1::2]
    if not markers or markers[0] != MARKER_AT_OR_LEFT:
        raise DecodeError(f"no head marker at cell {base}")

    sim_head = -1
    for index, marker in enumerate(markers):
        if marker == MARKER_AT_OR_LEFT:
            if sim_head != index - 1:
                raise DecodeError(f"marker 2 after marker 0 at cell {base + 2 * index}")
            sim_head = index
        elif marker != MARKER_RIGHT:
            raise DecodeError(f"invalid marker {marker} at cell {base + 2 * index}")

    values = values + (0,) * (len(markers) - len(values))
    return ShadowState(
        codes=codes,
        sim_ip=len(executed),
        sim_cells=trim_cells(values, sim_head),
        sim_head=sim_head,
    )
