"""Differential execution of one program across engines and tower levels."""
import logging
from dataclasses import dataclass, field

from engine import bytecode, direct
from engine.config import PORTABLE
from engine.state import HaltReason
from tower.towers import EngineKind, TowerJob, run_tower

from .mutants import get_mutant

logger = logging.getLogger(__name__)

AGREE = 'agree'
DISAGREE = 'disagree'
SKIPPED = 'skipped'

DEFAULT_BUDGET = 10 ** 7
DEFAULT_OVERHEAD_FACTOR = 10_000


@dataclass(frozen=True)
class FilterResult:
    accepted: bool
    reason: str | None = None
    outcome: object = None


def filter_defined(program, data=None, config=PORTABLE, step_limit=DEFAULT_BUDGET):
    """Accept programs that complete at level 0 under `config` within `step_limit` steps."""
    outcome = direct.run(program, data, config.with_limits(step_limit=step_limit))
    if outcome.halt_reason is HaltReason.COMPLETED:
        return FilterResult(True, outcome=outcome)
    return FilterResult(False, reason=outcome.halt_reason.value, outcome=outcome)


def _direct(program, data, budget, overhead_factor):
    return direct.run(program, data, PORTABLE.with_limits(step_limit=budget))


def _bytecode(program, data, budget, overhead_factor):
    return bytecode.run(program, data, PORTABLE.with_limits(step_limit=budget))


def _bytecode_tower(program, data, budget, overhead_factor):
    return run_tower(TowerJob(
        program_source=program.to_source(),
        data=data,
        levels=1,
        engine=EngineKind.BYTECODE,
        step_budget=budget * overhead_factor,
    ))


RUNNERS = {
    'direct-0': _direct,
    'bytecode-0': _bytecode,
    'bytecode-1': _bytecode_tower,
}

LEVEL0_RUNNERS = ('direct-0', 'bytecode-0')
DEFAULT_RUNNERS = ('direct-0', 'bytecode-0', 'bytecode-1')


def get_runner(name):
    if name.startswith('mutant-'):
        engine_class = get_mutant(name[len('mutant-'):])

        def run_mutant(program, data, budget, overhead_factor):
            return engine_class(program, PORTABLE.with_limits(step_limit=budget)).run(data)
        return run_mutant
    try:
        return RUNNERS[name]
    except KeyError:
        raise ValueError(f"unknown runner {name!r}") from None


def runners_for(levels=1, mutant=None):
    if mutant:
        get_mutant(mutant)
        return ('direct-0', f'mutant-{mutant}')
    if levels not in (0, 1):
        raise ValueError(f"fuzzing supports levels 0 and 1, got {levels}")
    return DEFAULT_RUNNERS if levels == 1 else LEVEL0_RUNNERS


def divergence_index(expected, actual):
    """First byte index where two outcomes differ, or None when they agree.

    Equal output with different halt reasons diverges at len(output).
    """
    a, b = expected.output, actual.output
    for index, (left, right) in enumerate(zip(a, b)):
        if left != right:
            return index
    if len(a) != len(b):
        return min(len(a), len(b))
    if expected.halt_reason is not actual.halt_reason:
        return len(a)
    return None


@dataclass(frozen=True)
class DiffVerdict:
    source: bytes
    data: bytes
    verdict: str
    outcomes: dict = field(default_factory=dict)
    divergence: int | None = None
    skip_reason: str | None = None
    budget: int = DEFAULT_BUDGET
    overhead_factor: int = DEFAULT_OVERHEAD_FACTOR

    @property
    def agreed(self):
        return self.verdict == AGREE

    @property
    def repro(self):
        """Standalone `.b!` repro bytes: code, '!', data."""
        return self.source + b'!' + self.data


def diff_run(program, data=None, budget=DEFAULT_BUDGET, *, runners=DEFAULT_RUNNERS,
             overhead_factor=DEFAULT_OVERHEAD_FACTOR):
    """Run `program` on every runner and compare outputs and halt reasons.

    The first runner is the reference. Programs that do not complete at level 0
    within `budget` are Skipped.
    """
    data = program.data_segment if data is None else bytes(data)
    common = dict(source=program.to_source(), data=data, budget=budget,
                  overhead_factor=overhead_factor)

    accepted = filter_defined(program, data, step_limit=budget)
    if not accepted.accepted:
        return DiffVerdict(verdict=SKIPPED, skip_reason=accepted.reason, **common)

    outcomes = {name: get_runner(name)(program, data, budget, overhead_factor) for name in runners}
    reference = outcomes[runners[0]]
    indices = [
        index for index in (divergence_index(reference, outcomes[name]) for name in runners[1:])
        if index is not None
    ]
    if indices:
        divergence = min(indices)
        logger.info(f"disagreement at byte {divergence} for {common['source']!r}")
        return DiffVerdict(verdict=DISAGREE, outcomes=outcomes, divergence=divergence, **common)
    return DiffVerdict(verdict=AGREE, outcomes=outcomes, **common)
