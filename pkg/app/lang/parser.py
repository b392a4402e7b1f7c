import logging
from dataclasses import dataclass
from types import MappingProxyType

from .exceptions import UnbalancedBrackets
from .instructions import INSTRUCTION_BY_BYTE, SEPARATOR, Instruction

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Program:
    """A parsed dbfi-BF program.

    Attributes:
        tokens: instructions of the code part, comments removed
        jump_table: read-only map, bracket token index -> index of its partner bracket
        data_segment: raw bytes after the first '!' (empty when there is none)
        source_map: byte offset of every token in the original source
        max_depth: deepest bracket nesting
    """
    tokens: tuple
    jump_table: MappingProxyType
    data_segment: bytes
    source_map: tuple
    max_depth: int

    def __len__(self):
        return len(self.tokens)

    def to_source(self):
        """Tokens serialized back to code bytes (no '!', no data)."""
        return bytes(token.byte for token in self.tokens)


def _as_bytes(source):
    if isinstance(source, str):
        return source.encode('utf-8')
    return bytes(source)


def split_source(source):
    """Split a source stream at its first '!' into (code, data).

    The code part keeps its comment characters; it is what dbfi reads when the
    program runs inside a tower.
    """
    source = _as_bytes(source)
    separator = source.find(SEPARATOR)
    if separator < 0:
        return source, b''
    return source[:separator], source[separator + 1:]


def parse(source):
    """Parse a dbfi-BF source stream into a Program.

    Raises:
        UnbalancedBrackets: at the first offending bracket
    """
    code, data = split_source(source)

    tokens = []
    source_map = []
    jump_table = {}
    open_brackets = []
    max_depth = 0

    for offset, byte in enumerate(code):
        instruction = INSTRUCTION_BY_BYTE.get(byte)
        if instruction is None:
            continue

        index = len(tokens)
        if instruction is Instruction.LOOP_OPEN:
            open_brackets.append((index, offset))
            max_depth = max(max_depth, len(open_brackets))
        elif instruction is Instruction.LOOP_CLOSE:
            if not open_brackets:
                raise UnbalancedBrackets(offset, ']')
            partner, _ = open_brackets.pop()
            jump_table[partner] = index
            jump_table[index] = partner

        tokens.append(instruction)
        source_map.append(offset)

    if open_brackets:
        _, offset = open_brackets[0]
        raise UnbalancedBrackets(offset, '[')

    logger.debug(f"parsed {len(tokens)} tokens, depth {max_depth}, {len(data)} data bytes")
    return Program(
        tokens=tuple(tokens),
        jump_table=MappingProxyType(jump_table),
        data_segment=data,
        source_map=tuple(source_map),
        max_depth=max_depth,
    )


def nesting_depth(program):
    return program.max_depth
