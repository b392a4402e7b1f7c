import enum


class Instruction(enum.Enum):
    MOVE_RIGHT = '>'
    MOVE_LEFT = '<'
    INC = '+'
    DEC = '-'
    INPUT = ','
    OUTPUT = '.'
    LOOP_OPEN = '['
    LOOP_CLOSE = ']'

    @property
    def char(self):
        return self.value

    @property
    def byte(self):
        return ord(self.value)


SEPARATOR = ord('!')

# byte value of the source character -> instruction
INSTRUCTION_BY_BYTE = {instruction.byte: instruction for instruction in Instruction}

# dbfi stores instructions as 1..8, in reverse ASCII order of their characters
INSTRUCTION_CODES = {
    Instruction.LOOP_CLOSE: 1,
    Instruction.LOOP_OPEN: 2,
    Instruction.MOVE_RIGHT: 3,
    Instruction.MOVE_LEFT: 4,
    Instruction.OUTPUT: 5,
    Instruction.DEC: 6,
    Instruction.INPUT: 7,
    Instruction.INC: 8,
}

INSTRUCTION_BY_CODE = {code: instruction for instruction, code in INSTRUCTION_CODES.items()}


def encode_instruction(instruction):
    return INSTRUCTION_CODES[instruction]


def decode_instruction(code):
    try:
        return INSTRUCTION_BY_CODE[code]
    except KeyError:
        raise ValueError(f"{code!r} is not an instruction code (expected 1..8)") from None


def encode_program(program):
    """Instruction codes of every token of `program`, in order."""
    return [INSTRUCTION_CODES[token] for token in program.tokens]
