"""Seeded, grammar-directed generation of bracket-balanced programs."""
import hashlib
import random
from dataclasses import dataclass, field, replace

from lang.parser import parse

DEFAULT_WEIGHTS = {
    '>': 4, '<': 2, '+': 4, '-': 3, '.': 2, ',': 1, '[': 2, ']': 2,
}


@dataclass(frozen=True)
class GenParams:
    seed: int = 0
    max_tokens: int = 64
    max_depth: int = 8
    weights: dict = field(default_factory=lambda: dict(DEFAULT_WEIGHTS))
    data_min: int = 0
    data_max: int = 8
    allow_nul: bool = False

    def __post_init__(self):
        if self.max_depth < 1:
            raise ValueError(f"max_depth must be >= 1, got {self.max_depth}")
        if self.max_tokens < 0:
            raise ValueError(f"max_tokens must be >= 0, got {self.max_tokens}")
        if set(self.weights) - set(DEFAULT_WEIGHTS):
            raise ValueError(f"weights may only name instructions, got {sorted(self.weights)}")
        if any(weight < 0 for weight in self.weights.values()):
            raise ValueError("weights must be nonnegative")
        if not any(self.weights.get(char, 0) for char in '><+-.,['):
            raise ValueError("at least one non-closing instruction needs a positive weight")
        if not 0 <= self.data_min <= self.data_max:
            raise ValueError(f"invalid data length range {self.data_min}..{self.data_max}")


def derive_seed(seed, index):
    """Per-case seed; depends only on the run seed and the case index."""
    digest = hashlib.sha256(f"{seed}:{index}".encode('ascii')).digest()
    return int.from_bytes(digest[:8], 'big') >> 1


def _choose(rng, weights, allowed):
    options = [char for char in allowed if weights.get(char, 0) > 0]
    if not options:
        return None
    return rng.choices(options, weights=[weights[char] for char in options])[0]


def _gen_code(rng, params):
    length = rng.randint(0, params.max_tokens)
    weights = params.weights
    code = []
    depth = 0
    for position in range(length):
        remaining = length - position
        if remaining == depth:
            code.append(']')
            depth -= 1
            continue
        allowed = '><+-.,'
        if depth < params.max_depth and remaining >= depth + 2:
            allowed += '['
        if depth > 0:
            allowed += ']'
        char = _choose(rng, weights, allowed)
        if char is None:
            if not depth:
                break
            char = ']'
        depth += {'[': 1, ']': -1}.get(char, 0)
        code.append(char)
    return ''.join(code).encode('ascii')


def gen_program(params):
    """(source, Program) for one generated case; source is code + '!' + data."""
    rng = random.Random(params.seed)
    code = _gen_code(rng, params)
    data = b''
    if b',' in code:
        low = 0 if params.allow_nul else 1
        data = bytes(rng.randint(low, 255) for _ in range(rng.randint(params.data_min, params.data_max)))
    source = code + b'!' + data
    return source, parse(source)


def generate_corpus(params, count):
    """Yield (index, source, program) for `count` cases derived from params.seed."""
    for index in range(count):
        yield (index, *gen_program(replace(params, seed=derive_seed(params.seed, index))))
