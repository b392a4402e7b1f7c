import enum
from dataclasses import dataclass, field

from .exceptions import StepLimitExceeded, TapeLimitExceeded, UnderflowError
from .tape import Tape


class Status(enum.Enum):
    RUNNING = 'running'
    HALTED = 'halted'
    ERROR = 'error'


class HaltReason(enum.Enum):
    COMPLETED = 'completed'
    STEP_LIMIT = 'step-limit'
    TAPE_LIMIT = 'tape-limit'
    UNDERFLOW = 'underflow'


ERRORS_BY_REASON = {
    HaltReason.UNDERFLOW: UnderflowError,
    HaltReason.STEP_LIMIT: StepLimitExceeded,
    HaltReason.TAPE_LIMIT: TapeLimitExceeded,
}


@dataclass
class MachineState:
    tape: Tape
    data: bytes = b''
    head: int = 0
    ip: int = 0
    input_cursor: int = 0
    output: bytearray = field(default_factory=bytearray)
    steps: int = 0
    status: Status = Status.RUNNING
    halt_reason: HaltReason | None = None

    @property
    def running(self):
        return self.status is Status.RUNNING

    def halt(self, reason):
        self.status = Status.HALTED if reason is HaltReason.COMPLETED else Status.ERROR
        self.halt_reason = reason

    def copy(self):
        return MachineState(
            tape=self.tape.copy(),
            data=self.data,
            head=self.head,
            ip=self.ip,
            input_cursor=self.input_cursor,
            output=bytearray(self.output),
            steps=self.steps,
            status=self.status,
            halt_reason=self.halt_reason,
        )


@dataclass(frozen=True)
class ExecutionOutcome:
    output: bytes
    steps: int
    halt_reason: HaltReason
    final_state: MachineState | None = None
    error_position: int | None = None

    @classmethod
    def from_state(cls, state):
        return cls(
            output=bytes(state.output),
            steps=state.steps,
            halt_reason=state.halt_reason,
            final_state=state,
            error_position=None if state.halt_reason is HaltReason.COMPLETED else state.ip,
        )

    @property
    def completed(self):
        return self.halt_reason is HaltReason.COMPLETED

    def raise_for_status(self):
        """Raise the EngineError matching an abnormal halt; no-op on completion."""
        error_class = ERRORS_BY_REASON.get(self.halt_reason)
        if error_class is not None:
            raise error_class(
                f"{self.halt_reason.value} at token {self.error_position} after {self.steps} steps",
                outcome=self,
            )
        return self


@dataclass(frozen=True)
class TraceEvent:
    step: int
    ip: int
    head: int
    instruction: object
    tape_start: int | None = None
    tape: tuple | None = None


@dataclass(frozen=True)
class SnapshotPolicy:
    """When run_traced emits TraceEvents and how much tape they carry.

    every: an event every `every` steps with a window of `window` cells on
        each side of the head
    at_ip: an event with the full tape whenever ip is in `ip_set`, before
        that token executes
    full: an event with the full tape before every instruction
    """
    kind: str = 'every'
    every: int = 1
    ip_set: frozenset = frozenset()
    window: int = 8

    KINDS = ('every', 'at_ip', 'full')

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ValueError(f"snapshot kind must be one of {self.KINDS}, got {self.kind!r}")
        if self.every < 1:
            raise ValueError(f"every must be at least 1, got {self.every}")

    @classmethod
    def every_k(cls, k, window=8):
        return cls(kind='every', every=k, window=window)

    @classmethod
    def at_ip(cls, ip_set):
        return cls(kind='at_ip', ip_set=frozenset(ip_set))

    @classmethod
    def full(cls):
        return cls(kind='full')

    @classmethod
    def parse(cls, text, window=8):
        """Build a policy from 'every:K', 'full' or 'ip:I,J,...'."""
        kind, _, argument = text.partition(':')
        try:
            if kind == 'every':
                return cls.every_k(int(argument or 1), window=window)
            if kind == 'full' and not argument:
                return cls.full()
            if kind == 'ip' and argument:
                return cls.at_ip(int(value) for value in argument.split(','))
        except ValueError as exc:
            raise ValueError(f"invalid snapshot policy {text!r}: {exc}") from exc
        raise ValueError(f"invalid snapshot policy {text!r}; use every:K, full or ip:I,J")

    def wants(self, state):
        if self.kind == 'at_ip':
            return state.ip in self.ip_set
        if self.kind == 'every':
            return state.steps % self.every == 0
        return True

    def event(self, state, instruction):
        if self.kind == 'every':
            start, cells = state.tape.window(state.head, self.window)
        else:
            start, cells = state.tape.snapshot()
        return TraceEvent(
            step=state.steps,
            ip=state.ip,
            head=state.head,
            instruction=instruction,
            tape_start=start,
            tape=cells,
        )
