"""Reference stepping interpreter for dbfi-BF.

One handler per instruction; subclasses may override a single handler to
obtain a behavioural variant (the conformance mutants do exactly that).
"""
import logging

from lang.instructions import Instruction

from .config import PORTABLE
from .state import ExecutionOutcome, HaltReason, MachineState, SnapshotPolicy
from .tape import Tape

logger = logging.getLogger(__name__)


class DirectEngine:
    def __init__(self, program, config=PORTABLE):
        self.program = program
        self.config = config
        self.tokens = program.tokens
        self.jump_table = program.jump_table
        self._handlers = {
            Instruction.MOVE_RIGHT: self.move_right,
            Instruction.MOVE_LEFT: self.move_left,
            Instruction.INC: self.inc,
            Instruction.DEC: self.dec,
            Instruction.INPUT: self.input,
            Instruction.OUTPUT: self.output,
            Instruction.LOOP_OPEN: self.loop_open,
            Instruction.LOOP_CLOSE: self.loop_close,
        }

    def start(self, data=None):
        """Initial state; the program's own data segment is used when data is None."""
        state = MachineState(
            tape=Tape(self.config.cell_width),
            data=self.program.data_segment if data is None else bytes(data),
        )
        if not self.tokens:
            state.halt(HaltReason.COMPLETED)
        return state

    def step(self, state):
        """Apply exactly one instruction to `state` (in place) and return it."""
        if not state.running:
            raise ValueError(f"cannot step a machine that is {state.status.value}")

        step_limit = self.config.step_limit
        if step_limit is not None and state.steps >= step_limit:
            state.halt(HaltReason.STEP_LIMIT)
            return state

        self._handlers[self.tokens[state.ip]](state)
        return state

    def run(self, data=None, policy=None, on_event=None):
        state = self.start(data)
        step = self.step
        if policy is None:
            while state.running:
                step(state)
        else:
            tokens = self.tokens
            while state.running:
                if policy.wants(state):
                    on_event(policy.event(state, tokens[state.ip]))
                step(state)

        logger.debug(f"direct run halted: {state.halt_reason.value} after {state.steps} steps")
        return ExecutionOutcome.from_state(state)

    # instruction handlers

    def _advance(self, state, ip):
        state.ip = ip
        state.steps += 1
        if ip >= len(self.tokens):
            state.halt(HaltReason.COMPLETED)

    def _move_to(self, state, head):
        if head < 0 and not self.config.sparse:
            state.halt(HaltReason.UNDERFLOW)
            return
        tape = state.tape
        tape_limit = self.config.tape_limit
        if tape_limit is not None and tape.extent_with(head) > tape_limit:
            state.halt(HaltReason.TAPE_LIMIT)
            return
        tape.visit(head)
        state.head = head
        self._advance(state, state.ip + 1)

    def move_right(self, state):
        self._move_to(state, state.head + 1)

    def move_left(self, state):
        self._move_to(state, state.head - 1)

    def inc(self, state):
        state.tape[state.head] = state.tape[state.head] + 1
        self._advance(state, state.ip + 1)

    def dec(self, state):
        state.tape[state.head] = state.tape[state.head] - 1
        self._advance(state, state.ip + 1)

    def input(self, state):
        # exhausted input leaves the cell unchanged, whatever it holds
        if state.input_cursor < len(state.data):
            state.tape[state.head] = state.data[state.input_cursor]
            state.input_cursor += 1
        self._advance(state, state.ip + 1)

    def output(self, state):
        state.output.append(state.tape[state.head] & 0xFF)
        self._advance(state, state.ip + 1)

    def loop_open(self, state):
        if state.tape[state.head] == 0:
            self._advance(state, self.jump_table[state.ip] + 1)
        else:
            self._advance(state, state.ip + 1)

    def loop_close(self, state):
        if state.tape[state.head] != 0:
            self._advance(state, self.jump_table[state.ip] + 1)
        else:
            self._advance(state, state.ip + 1)


def step(state, program, config=PORTABLE):
    return DirectEngine(program, config).step(state)


def run(program, data=None, config=PORTABLE):
    return DirectEngine(program, config).run(data)


def run_traced(program, data=None, config=PORTABLE, policy=None, on_event=None):
    """Run like `run`, emitting TraceEvents according to `policy`.

    Events are collected and returned unless `on_event` is given, in which case
    each event is passed to it as it happens and the returned list is empty.
    Tracing never changes the outcome.
    """
    policy = policy or SnapshotPolicy.every_k(1)
    events = []
    outcome = DirectEngine(program, config).run(
        data, policy=policy, on_event=on_event or events.append,
    )
    return outcome, events
