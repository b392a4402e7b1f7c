"""Naive bracket-scanning interpreter with the appendix reference semantics.

Byte cells that wrap, a map for a tape unbounded in both directions, no
change to the cell on exhausted input, and no jump table: matching brackets
are found by scanning the code at run time, one instruction per step.
"""
from collections import defaultdict

from lang.instructions import INSTRUCTION_BY_BYTE
from lang.parser import parse, split_source

from .config import APPENDIX
from .state import ExecutionOutcome, HaltReason, MachineState
from .tape import Tape


def run_appendix(source, data=None, step_limit=None):
    # reject unbalanced brackets exactly as the other engines do
    parse(source)
    code, segment = split_source(source)
    code = bytes(byte for byte in code if byte in INSTRUCTION_BY_BYTE).decode('ascii')
    data = segment if data is None else bytes(data)

    memory = defaultdict(int)
    output = bytearray()
    p = 0
    i = 0
    cursor = 0
    steps = 0
    halt_reason = HaltReason.COMPLETED

    while i < len(code):
        if step_limit is not None and steps >= step_limit:
            halt_reason = HaltReason.STEP_LIMIT
            break
        depth = 1
        if code[i] == ']' and memory[p]:
            while depth:
                i -= 1
                depth += (code[i] == ']') - (code[i] == '[')
        if code[i] == '[' and not memory[p]:
            while depth:
                i += 1
                depth -= (code[i] == ']') - (code[i] == '[')
        instruction = code[i]
        if instruction == '+':
            memory[p] = (memory[p] + 1) & 0xFF
        elif instruction == '-':
            memory[p] = (memory[p] - 1) & 0xFF
        elif instruction == '.':
            output.append(memory[p])
        elif instruction == ',':
            if cursor < len(data):
                memory[p] = data[cursor]
                cursor += 1
        elif instruction == '>':
            p += 1
        elif instruction == '<':
            p -= 1
        i += 1
        steps += 1

    tape = Tape(APPENDIX.cell_width)
    for index, value in memory.items():
        tape.visit(index)
        tape[index] = value
    tape.visit(p)
    state = MachineState(
        tape=tape,
        data=data,
        head=p,
        ip=i,
        input_cursor=cursor,
        output=output,
        steps=steps,
    )
    state.halt(halt_reason)
    return ExecutionOutcome.from_state(state)
