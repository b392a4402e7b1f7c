"""Optimizing compiler from Program to a linear bytecode, and its executor.

Rewrites are limited to ones that hold under wrapping arithmetic for every
cell width: run-length coalescing of +/- and >/<, and [-] / [+] loops
replaced by SETZERO. Each op remembers the token span it came from; the
executor charges one step per covered token, except that SETZERO on a cell
that is already zero costs the single skipped bracket. Step budgets agree with
the direct engine to within one op.
"""
import enum
import logging
from dataclasses import dataclass

from lang.instructions import Instruction

from .config import PORTABLE
from .state import ExecutionOutcome, HaltReason, MachineState, Status
from .tape import Tape

logger = logging.getLogger(__name__)


class OpKind(enum.IntEnum):
    MOVE = 0
    ADD = 1
    IN = 2
    OUT = 3
    SET_ZERO = 4
    JUMP_IF_ZERO = 5
    JUMP_IF_NONZERO = 6


@dataclass(frozen=True)
class Op:
    """One bytecode op.

    `arg` is the count for MOVE/ADD and the partner op index for jumps.
    MOVE also carries the lowest and highest head offset reached inside the
    coalesced run, so underflow and tape limits are still detected.
    """
    kind: OpKind
    arg: int = 0
    low: int = 0
    high: int = 0


@dataclass(frozen=True)
class Bytecode:
    ops: tuple
    spans: tuple   # op index -> (first token, end token)
    token_count: int

    def __len__(self):
        return len(self.ops)

    def weight(self, index):
        start, end = self.spans[index]
        return end - start


_ADD_DELTAS = {Instruction.INC: 1, Instruction.DEC: -1}
_MOVE_DELTAS = {Instruction.MOVE_RIGHT: 1, Instruction.MOVE_LEFT: -1}


def _is_set_zero(program, index):
    tokens = program.tokens
    return (
        tokens[index] is Instruction.LOOP_OPEN
        and index + 2 < len(tokens)
        and tokens[index + 1] in _ADD_DELTAS
        and tokens[index + 2] is Instruction.LOOP_CLOSE
    )


def compile(program):
    ops = []
    spans = []
    open_loops = []
    tokens = program.tokens
    index = 0

    while index < len(tokens):
        token = tokens[index]

        if _is_set_zero(program, index):
            ops.append(Op(OpKind.SET_ZERO))
            spans.append((index, index + 3))
            index += 3
            continue

        if token in _ADD_DELTAS:
            delta = _ADD_DELTAS[token]
            if ops and ops[-1] is not None and ops[-1].kind is OpKind.ADD:
                # a run summing to zero stays as ADD +0 so its tokens are still charged
                ops[-1] = Op(OpKind.ADD, ops[-1].arg + delta)
                spans[-1] = (spans[-1][0], index + 1)
            else:
                ops.append(Op(OpKind.ADD, delta))
                spans.append((index, index + 1))

        elif token in _MOVE_DELTAS:
            delta = _MOVE_DELTAS[token]
            if ops and ops[-1] is not None and ops[-1].kind is OpKind.MOVE:
                last = ops[-1]
                offset = last.arg + delta
                ops[-1] = Op(OpKind.MOVE, offset, min(last.low, offset), max(last.high, offset))
                spans[-1] = (spans[-1][0], index + 1)
            else:
                ops.append(Op(OpKind.MOVE, delta, min(0, delta), max(0, delta)))
                spans.append((index, index + 1))

        elif token is Instruction.INPUT:
            ops.append(Op(OpKind.IN))
            spans.append((index, index + 1))

        elif token is Instruction.OUTPUT:
            ops.append(Op(OpKind.OUT))
            spans.append((index, index + 1))

        elif token is Instruction.LOOP_OPEN:
            open_loops.append(len(ops))
            ops.append(None)
            spans.append((index, index + 1))

        else:
            partner = open_loops.pop()
            ops[partner] = Op(OpKind.JUMP_IF_ZERO, len(ops))
            ops.append(Op(OpKind.JUMP_IF_NONZERO, partner))
            spans.append((index, index + 1))

        index += 1

    bytecode = Bytecode(ops=tuple(ops), spans=tuple(spans), token_count=len(tokens))
    logger.debug(f"compiled {len(tokens)} tokens into {len(ops)} ops")
    return bytecode


_MOVE, _ADD, _IN, _OUT, _SET_ZERO, _JZ, _JNZ = (int(kind) for kind in OpKind)


def execute(bytecode, data=b'', config=PORTABLE):
    kinds = [int(op.kind) for op in bytecode.ops]
    args = [op.arg for op in bytecode.ops]
    lows = [op.low for op in bytecode.ops]
    highs = [op.high for op in bytecode.ops]
    weights = [end - start for start, end in bytecode.spans]
    count = len(kinds)

    tape = Tape(config.cell_width)
    cells = tape.cells
    origin = tape.origin
    mask = config.mask
    strict = not config.sparse
    step_limit = float('inf') if config.step_limit is None else config.step_limit
    tape_limit = float('inf') if config.tape_limit is None else config.tape_limit
    lowest = highest = 0

    data = bytes(data)
    cursor = 0
    output = bytearray()
    steps = 0
    pc = 0
    position = origin
    halt_reason = HaltReason.COMPLETED

    while pc < count:
        kind = kinds[pc]
        weight = weights[pc]
        if kind == _SET_ZERO and not cells[position]:
            # the loop is skipped, only its opening bracket runs
            weight = 1
        if steps + weight > step_limit:
            halt_reason = HaltReason.STEP_LIMIT
            break

        if kind == _ADD:
            cells[position] = (cells[position] + args[pc]) & mask
        elif kind == _MOVE:
            head = position - origin
            low = head + lows[pc]
            high = head + highs[pc]
            if low < 0 and strict:
                halt_reason = HaltReason.UNDERFLOW
                break
            if low < lowest or high > highest:
                if max(high, highest) - min(low, lowest) + 1 > tape_limit:
                    halt_reason = HaltReason.TAPE_LIMIT
                    break
                lowest = min(low, lowest)
                highest = max(high, highest)
            if high + origin >= len(cells):
                cells.extend([0] * max(len(cells), high + origin - len(cells) + 1))
            if low + origin < 0:
                extra = max(len(cells), -(low + origin))
                cells[0:0] = [0] * extra
                origin += extra
            position = head + args[pc] + origin
        elif kind == _JNZ:
            if cells[position]:
                steps += weight
                pc = args[pc] + 1
                continue
        elif kind == _JZ:
            if not cells[position]:
                steps += weight
                pc = args[pc] + 1
                continue
        elif kind == _SET_ZERO:
            cells[position] = 0
        elif kind == _IN:
            if cursor < len(data):
                cells[position] = data[cursor] & mask
                cursor += 1
        else:
            output.append(cells[position] & 0xFF)

        steps += weight
        pc += 1

    tape.origin = origin
    tape.lowest = lowest
    tape.highest = highest
    state = MachineState(
        tape=tape,
        data=data,
        head=position - origin,
        ip=bytecode.spans[pc][0] if pc < count else bytecode.token_count,
        input_cursor=cursor,
        output=output,
        steps=steps,
        status=Status.RUNNING,
    )
    state.halt(halt_reason)
    logger.debug(f"bytecode run halted: {halt_reason.value} after {steps} steps")
    return ExecutionOutcome.from_state(state)


def run(program, data=None, config=PORTABLE):
    """compile + execute, defaulting to the program's own data segment."""
    return execute(compile(program), program.data_segment if data is None else data, config)


_MNEMONICS = {
    OpKind.MOVE: 'MOVE',
    OpKind.ADD: 'ADD',
    OpKind.IN: 'IN',
    OpKind.OUT: 'OUT',
    OpKind.SET_ZERO: 'SETZERO',
    OpKind.JUMP_IF_ZERO: 'JZ',
    OpKind.JUMP_IF_NONZERO: 'JNZ',
}


def disassemble(bytecode):
    lines = []
    for op in bytecode.ops:
        mnemonic = _MNEMONICS[op.kind]
        if op.kind in (OpKind.MOVE, OpKind.ADD):
            lines.append(f"{mnemonic} {op.arg:+d}")
        elif op.kind in (OpKind.JUMP_IF_ZERO, OpKind.JUMP_IF_NONZERO):
            lines.append(f"{mnemonic} {op.arg}")
        else:
            lines.append(mnemonic)
    return lines


def decompile(bytecode):
    """Token source that compiles back to behaviourally identical bytecode."""
    parts = []
    for op in bytecode.ops:
        if op.kind is OpKind.MOVE:
            # walk down to the low mark, up to the high mark, then to the target
            parts.append('<' * -op.low + '>' * (op.high - op.low) + '<' * (op.high - op.arg))
        elif op.kind is OpKind.ADD:
            parts.append('+' * op.arg if op.arg > 0 else '-' * -op.arg)
        elif op.kind is OpKind.SET_ZERO:
            parts.append('[-]')
        elif op.kind is OpKind.IN:
            parts.append(',')
        elif op.kind is OpKind.OUT:
            parts.append('.')
        elif op.kind is OpKind.JUMP_IF_ZERO:
            parts.append('[')
        else:
            parts.append(']')
    return ''.join(parts).encode('ascii')
