"""Composition and execution of N-level interpretation towers.

Level 0 runs the program directly. Level N runs dbfi on a single input
stream holding N-1 more copies of dbfi, each followed by '!', then the
program, '!', and its data.
"""
import enum
import logging
from dataclasses import dataclass, field, replace
from functools import lru_cache

from engine import bytecode, direct
from engine.config import PORTABLE, EngineConfig
from lang.parser import parse

from .dbfi import DBFI_SOURCE

logger = logging.getLogger(__name__)


class EngineKind(enum.Enum):
    DIRECT = 'direct'
    BYTECODE = 'bytecode'


def _as_bytes(value):
    return value.encode('utf-8') if isinstance(value, str) else bytes(value)


@dataclass(frozen=True)
class TowerJob:
    program_source: bytes
    data: bytes = b''
    levels: int = 0
    engine: EngineKind = EngineKind.BYTECODE
    config: EngineConfig = field(default=PORTABLE)
    step_budget: int | None = None
    interpreter_source: bytes = DBFI_SOURCE.encode('ascii')

    def __post_init__(self):
        if self.levels < 0:
            raise ValueError(f"levels must be >= 0, got {self.levels}")
        object.__setattr__(self, 'program_source', _as_bytes(self.program_source))
        object.__setattr__(self, 'data', _as_bytes(self.data))
        object.__setattr__(self, 'interpreter_source', _as_bytes(self.interpreter_source))
        object.__setattr__(self, 'engine', EngineKind(self.engine))


def compose_tower(job):
    """(code, input stream) that the host engine runs for `job`."""
    if job.levels == 0:
        return job.program_source, job.data
    interpreter = job.interpreter_source
    stream = (interpreter + b'!') * (job.levels - 1) + job.program_source + b'!' + job.data
    return interpreter, stream


@lru_cache(maxsize=8)
def _compiled(code):
    return bytecode.compile(parse(code))


def run_tower(job):
    code, stream = compose_tower(job)
    config = job.config
    if job.step_budget is not None:
        config = replace(config, step_limit=job.step_budget)

    logger.info(f"running {job.levels}-level tower on the {job.engine.value} engine "
                f"({len(code)} code bytes, {len(stream)} input bytes)")
    if job.engine is EngineKind.BYTECODE:
        outcome = bytecode.execute(_compiled(code), stream, config)
    else:
        outcome = direct.run(parse(code), stream, config)
    logger.info(f"tower halted: {outcome.halt_reason.value} after {outcome.steps} steps")
    return outcome
