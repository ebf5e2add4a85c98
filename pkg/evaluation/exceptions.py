class EvaluationError(Exception):
    """Base class for evaluation and corpus generation failures."""


class MissingRuntime(EvaluationError):
    def __init__(self, plan_id):
        self.plan_id = plan_id
        super().__init__(f"plan {plan_id!r} has no runtime_seconds, so it cannot be scored")


class CorpusTooSmall(EvaluationError):
    def __init__(self, size):
        self.size = size
        super().__init__(f"leave-one-out needs at least 2 plans, got {size}")


class InvalidSyntheticSpec(EvaluationError):
    pass
