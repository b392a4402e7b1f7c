"""Cosimulation of dbfi against a shadow interpreter.

dbfi runs on the direct engine, traced at its fetch boundaries. At every
boundary the host tape is decoded back into a simulated machine and compared
with a shadow DirectEngine running the same program, advanced just far enough
to reach the decoded instruction pointer.
"""
import logging
from dataclasses import dataclass, field, replace

from engine import direct
from engine.config import PORTABLE
from engine.direct import DirectEngine
from engine.state import SnapshotPolicy
from lang.instructions import encode_program
from lang.parser import parse, split_source

from .dbfi import DBFI_SOURCE, fetch_boundary_set
from .exceptions import ChainOverrun, CosimPreconditionError, DecodeError, LayoutMismatch
from .layout import ShadowState, decode_layout

logger = logging.getLogger(__name__)

PASS = 'pass'
MISMATCH = 'mismatch'
CHAIN_OVERRUN = 'chain-overrun'
DECODE_ERROR = 'decode-error'


@dataclass(frozen=True)
class BoundaryVerdict:
    boundary_no: int
    host_step: int
    sim_ip: int | None
    sim_head: int | None
    sim_cells: tuple | None = None
    verdict: str = PASS
    chained: int = 0
    detail: str = ''

    @property
    def passed(self):
        return self.verdict == PASS


@dataclass
class CosimReport:
    boundaries: list = field(default_factory=list)
    final: BoundaryVerdict | None = None
    level0: object = None
    host: object = None
    output_matches: bool = False
    failure: str | None = None

    @property
    def passed(self):
        return (
            self.failure is None
            and self.output_matches
            and self.final is not None
            and self.final.passed
        )

    @property
    def failing_boundary(self):
        return next((verdict for verdict in self.boundaries if not verdict.passed), None)


def _host_cells(event):
    """Host tape from cell 0, out of a full TraceEvent snapshot."""
    return event.tape[-event.tape_start:]


def _compare(boundary_no, decoded, shadow):
    diff = {}
    for name in ('codes', 'sim_ip', 'sim_cells', 'sim_head'):
        expected, actual = getattr(shadow, name), getattr(decoded, name)
        if expected != actual:
            diff[name] = (expected, actual)
    if diff:
        raise LayoutMismatch(boundary_no, diff)


class _ShadowObserver:
    """Receives dbfi's boundary events and checks each against the shadow."""

    def __init__(self, program, data, max_chain, report):
        self.codes = tuple(encode_program(program))
        self.engine = DirectEngine(program)
        self.state = self.engine.start(data)
        self.max_chain = max_chain
        self.report = report
        self.last_step = -1

    def shadow(self):
        return ShadowState.from_machine(self.codes, self.state)

    def __call__(self, event):
        boundary_no = len(self.report.boundaries)
        self.last_step = event.step
        decoded = decode_layout(_host_cells(event), event.head)

        chained = 0
        while self.state.ip != decoded.sim_ip:
            if chained == self.max_chain or not self.state.running:
                raise ChainOverrun(boundary_no, self.max_chain)
            self.engine.step(self.state)
            chained += 1

        _compare(boundary_no, decoded, self.shadow())
        self.report.boundaries.append(BoundaryVerdict(
            boundary_no=boundary_no,
            host_step=event.step,
            sim_ip=decoded.sim_ip,
            sim_head=decoded.sim_head,
            sim_cells=decoded.sim_cells,
            chained=chained,
        ))

    def finish(self, final_tape):
        """Decode the halted host tape and compare it with the shadow run to completion."""
        boundary_no = len(self.report.boundaries)
        while self.state.running:
            self.engine.step(self.state)
        decoded = decode_layout(final_tape)
        _compare(boundary_no, decoded, self.shadow())
        return BoundaryVerdict(
            boundary_no=boundary_no,
            host_step=self.report.host.steps,
            sim_ip=decoded.sim_ip,
            sim_head=decoded.sim_head,
            sim_cells=decoded.sim_cells,
        )


def _failure_verdict(report, error, verdict, host_step):
    verdict = BoundaryVerdict(
        boundary_no=len(report.boundaries),
        host_step=host_step,
        sim_ip=None,
        sim_head=None,
        verdict=verdict,
        detail=str(error),
    )
    report.failure = verdict.verdict
    return verdict


def cosimulate(program_source, data=b'', config=PORTABLE, *, dbfi_source=DBFI_SOURCE,
               max_chain=2, step_limit=None):
    """Run `program_source` under dbfi and check dbfi's memory at every fetch boundary.

    The run stops at the first failing boundary; its verdict is the last entry
    of `report.boundaries`. A host run that halts abnormally leaves
    `report.failure` set to its halt reason.

    Raises:
        UnbalancedBrackets: when the program does not parse
        CosimPreconditionError: when the program does not complete at level 0
        StructureMismatch: when `dbfi_source` does not look like dbfi
    """
    if config.cell_width != 8:
        raise ValueError("cosimulation models 8-bit cells only")
    code, _ = split_source(program_source)
    data = data.encode('utf-8') if isinstance(data, str) else bytes(data)
    program = parse(code)
    limited = replace(config, step_limit=step_limit)

    level0 = direct.run(program, data, limited)
    if not level0.completed:
        raise CosimPreconditionError(
            f"program does not complete at level 0: {level0.halt_reason.value} "
            f"at token {level0.error_position}",
            outcome=level0,
        )

    dbfi_source = dbfi_source.encode('ascii') if isinstance(dbfi_source, str) else bytes(dbfi_source)
    dbfi = parse(dbfi_source)
    boundaries = fetch_boundary_set(dbfi)
    logger.info(f"cosimulating {len(program)} tokens, fetch boundaries at {sorted(boundaries)}")

    report = CosimReport(level0=level0)
    observer = _ShadowObserver(program, data, max_chain, report)
    host = DirectEngine(dbfi, limited)
    try:
        report.host = host.run(code + b'!' + data, policy=SnapshotPolicy.at_ip(boundaries),
                               on_event=observer)
    except LayoutMismatch as exc:
        report.boundaries.append(_failure_verdict(report, exc, MISMATCH, observer.last_step))
    except ChainOverrun as exc:
        report.boundaries.append(_failure_verdict(report, exc, CHAIN_OVERRUN, observer.last_step))
    except DecodeError as exc:
        report.boundaries.append(_failure_verdict(report, exc, DECODE_ERROR, observer.last_step))
    if report.failure is not None:
        logger.warning(f"cosimulation failed: {report.boundaries[-1].detail}")
        return report

    report.output_matches = report.host.output == level0.output
    if not report.host.completed:
        report.failure = report.host.halt_reason.value
        return report

    _, final_tape = report.host.final_state.tape.snapshot(0)
    try:
        report.final = observer.finish(final_tape)
    except (LayoutMismatch, DecodeError) as exc:
        verdict = MISMATCH if isinstance(exc, LayoutMismatch) else DECODE_ERROR
        report.final = _failure_verdict(report, exc, verdict, host_step=report.host.steps)

    logger.info(f"cosimulation finished: {len(report.boundaries)} boundaries, "
                f"passed={report.passed}")
    return report
