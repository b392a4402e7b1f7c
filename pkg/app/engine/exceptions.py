from lang.exceptions import DbfiError


class EngineError(DbfiError):
    """An abnormal halt, raised by ExecutionOutcome.raise_for_status()."""

    def __init__(self, message, outcome=None):
        self.outcome = outcome
        super().__init__(message)


class UnderflowError(EngineError):
    pass


class BudgetExceeded(EngineError):
    pass


class StepLimitExceeded(BudgetExceeded):
    pass


class TapeLimitExceeded(BudgetExceeded):
    pass
