"""Deliberately broken engines used to check that differential runs catch bugs.

Each mutant changes a single behaviour of DirectEngine by overriding its handlers.
"""
from engine.direct import DirectEngine


class WrongEofEngine(DirectEngine):
    """Exhausted input writes 0 instead of leaving the cell unchanged."""

    def input(self, state):
        if state.input_cursor < len(state.data):
            state.tape[state.head] = state.data[state.input_cursor]
            state.input_cursor += 1
        else:
            state.tape[state.head] = 0
        self._advance(state, state.ip + 1)


class OffByOneJumpEngine(DirectEngine):
    """A taken ']' lands one token past the first instruction of the loop body."""

    def loop_close(self, state):
        if state.tape[state.head] != 0:
            self._advance(state, self.jump_table[state.ip] + 2)
        else:
            self._advance(state, state.ip + 1)


class NoWrapEngine(DirectEngine):
    """Cells saturate at 0 and at the largest cell value."""

    def inc(self, state):
        state.tape[state.head] = min(state.tape[state.head] + 1, self.config.mask)
        self._advance(state, state.ip + 1)

    def dec(self, state):
        state.tape[state.head] = max(state.tape[state.head] - 1, 0)
        self._advance(state, state.ip + 1)


class SwappedIncDecEngine(DirectEngine):
    def inc(self, state):
        DirectEngine.dec(self, state)

    def dec(self, state):
        DirectEngine.inc(self, state)


class HeadOffByOneEngine(DirectEngine):
    """Output reads the cell right of the head."""

    def output(self, state):
        state.output.append(state.tape[state.head + 1] & 0xFF)
        self._advance(state, state.ip + 1)


MUTANTS = {
    'wrong-eof': WrongEofEngine,
    'off-by-one-jump': OffByOneJumpEngine,
    'no-wrap': NoWrapEngine,
    'swapped-inc-dec': SwappedIncDecEngine,
    'head-off-by-one': HeadOffByOneEngine,
}


def get_mutant(name):
    try:
        return MUTANTS[name]
    except KeyError:
        raise ValueError(f"unknown mutant {name!r}; choose from {sorted(MUTANTS)}") from None
