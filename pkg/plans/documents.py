from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

from .exceptions import SchemaViolation
from .graph import QDag


@dataclass(frozen=True)
class PlanDocument:
    plan_id: str
    graph: QDag
    runtime_seconds: float | None = None

    def __post_init__(self):
        if not self.plan_id:
            raise SchemaViolation("plan_id", "must be a non-empty string")
        if self.runtime_seconds is not None:
            if not math.isfinite(self.runtime_seconds):
                raise SchemaViolation("runtime_seconds", "must be finite")
            if self.runtime_seconds < 0:
                raise SchemaViolation("runtime_seconds", "must be >= 0")


@dataclass(frozen=True)
class Corpus:
    documents: tuple[PlanDocument, ...]
    source_path: str

    def __len__(self):
        return len(self.documents)

    def __iter__(self):
        return iter(self.documents)

    @cached_property
    def by_id(self) -> dict[str, PlanDocument]:
        return {doc.plan_id: doc for doc in self.documents}
