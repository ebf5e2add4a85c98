"""
Seeded synthetic plan corpora.

A family is a plan shape (parallel scan branches joined left-deep under a
shared tail of operators) bound to a runtime range inside one complexity
band. Each family gets one base plan; every plan of the family is that base
with a few node properties re-drawn and its own runtime. The whole corpus is
a pure function of the seed.
"""
from __future__ import annotations

import logging
import math
import random
from dataclasses import dataclass, field
from pathlib import Path

from fingerprints.features import encode_property, normalize_properties
from fingerprints.labels import ComplexityLabel, classify_runtime
from plans.documents import Corpus, PlanDocument
from plans.graph import PlanNode, QDag
from plans.parsers import render_plan_json

from .exceptions import InvalidSyntheticSpec

logger = logging.getLogger(__name__)

WIDTHS = (8, 16, 32, 64, 128, 256)

# tunable properties per operator and the values they are drawn from
OPERATOR_PROPERTIES: dict[str, dict[str, tuple]] = {
    "Scan": {"num_numeric_attrs": tuple(range(1, 9)), "num_string_attrs": tuple(range(0, 7))},
    "Filter": {"num_numeric_attrs": tuple(range(1, 5)), "num_string_attrs": tuple(range(0, 3))},
    "Project": {"num_result_exprs": tuple(range(1, 11))},
    "Exchange": {"partitioning_type": ("hash", "range"), "num_partitions": (50, 100, 200, 400)},
    "Sort": {"num_keys": (1, 2, 3)},
    "HashAggregate": {"num_grouping_exprs": (1, 2, 3, 4), "num_result_exprs": tuple(range(1, 7))},
    "SortMergeJoin": {"join_semantics": ("inner", "leftouter", "leftsemi"), "num_keys": (1, 2, 3)},
    "BroadcastHashJoin": {"join_semantics": ("inner", "leftanti"), "build_side": ("left", "right")},
    "Window": {"num_keys": (1, 2), "num_result_exprs": (1, 2, 3)},
    "Limit": {},
}

JOIN_ALGORITHMS = {"SortMergeJoin": "sortmerge", "BroadcastHashJoin": "broadcasthash"}

TABLES = ("lineitem", "orders", "customer", "part", "supplier", "nation", "store_sales", "date_dim")
COLUMNS = ("key", "date", "price", "qty", "status", "name", "region", "flag", "amount")


@dataclass(frozen=True)
class SyntheticFamily:
    name: str
    branch_operators: tuple[str, ...]
    tail_operators: tuple[str, ...]
    runtime_range: tuple[float, float]
    branches: tuple[int, int] = (1, 1)
    join_operator: str | None = None

    @property
    def label(self) -> ComplexityLabel:
        return classify_runtime(self.runtime_range[0])

    def node_count_range(self) -> tuple[int, int]:
        def count(branches):
            return branches * len(self.branch_operators) + (branches - 1) + len(self.tail_operators)

        return count(self.branches[0]), count(self.branches[1])


DEFAULT_FAMILIES = (
    SyntheticFamily(
        name="point-lookup",
        branch_operators=("Scan", "Filter", "Project"),
        tail_operators=("Limit",),
        runtime_range=(0.2, 4.8),
    ),
    SyntheticFamily(
        name="shuffle-join",
        branch_operators=("Scan", "Filter", "Exchange", "Sort"),
        tail_operators=("HashAggregate", "Exchange", "HashAggregate"),
        runtime_range=(6.0, 28.0),
        branches=(2, 2),
        join_operator="SortMergeJoin",
    ),
    SyntheticFamily(
        name="multi-join-report",
        branch_operators=("Scan", "Filter", "Project", "Exchange", "Sort"),
        tail_operators=("Exchange", "HashAggregate", "Window", "Sort", "Project"),
        runtime_range=(35.0, 240.0),
        branches=(3, 4),
        join_operator="SortMergeJoin",
    ),
)


@dataclass(frozen=True)
class SyntheticSpec:
    seed: int = 42
    families: tuple[SyntheticFamily, ...] = field(default=DEFAULT_FAMILIES)
    count_per_family: int = 100
    perturbation_rate: float = 0.1

    def __post_init__(self):
        if not self.families:
            raise InvalidSyntheticSpec("at least one family is required")
        if self.count_per_family < 1:
            raise InvalidSyntheticSpec(f"count_per_family must be positive, got {self.count_per_family}")
        if not 0.0 <= self.perturbation_rate <= 1.0:
            raise InvalidSyntheticSpec(f"perturbation_rate must be within [0, 1], got {self.perturbation_rate}")
        for family in self.families:
            low, high = family.runtime_range
            if not 0 <= low <= high or classify_runtime(low) != classify_runtime(high):
                raise InvalidSyntheticSpec(f"family {family.name!r}: runtime range {family.runtime_range} spans bands")
            operators = family.branch_operators + family.tail_operators
            if family.branches[1] > 1:
                operators += (family.join_operator,)
            for operator in operators:
                if operator not in OPERATOR_PROPERTIES:
                    raise InvalidSyntheticSpec(f"family {family.name!r}: no property table for {operator!r}")


# -----------------------------
# PLAN CONSTRUCTION
# -----------------------------

def _tokens(properties) -> str:
    return " ".join(f"{key}={value}" for key, value in properties.items())


@dataclass
class _Draft:
    """Node under construction. Properties are encoded and in schema order."""
    id: int
    operator: str
    detail: str
    properties: dict

    def node(self) -> PlanNode:
        fact = f"{self.operator} {self.detail} {_tokens(self.properties)}"
        return PlanNode(id=self.id, operator_name=self.operator, fact=fact, properties=self.properties)


def _tunable(operator: str) -> dict[str, tuple]:
    return {**OPERATOR_PROPERTIES[operator], "row_width": WIDTHS}


def _columns(rng: random.Random, table: str) -> str:
    picked = rng.sample(COLUMNS, rng.randint(1, 3))
    return "[" + ", ".join(f"{table[:2]}_{column}#{rng.randrange(1, 500)}" for column in picked) + "]"


def _draw_properties(operator: str, rng: random.Random) -> dict:
    raw = {key: rng.choice(values) for key, values in _tunable(operator).items()}
    if operator in JOIN_ALGORITHMS:
        raw["join_algorithm"] = JOIN_ALGORITHMS[operator]
    properties, _ = normalize_properties(raw)
    return properties


def _base_plan(family: SyntheticFamily, rng: random.Random) -> tuple[list[_Draft], list[tuple[int, int]]]:
    drafts: list[_Draft] = []
    edges: list[tuple[int, int]] = []

    def add(operator, table, upstream):
        properties = _draw_properties(operator, rng)
        detail = table if operator == "Scan" else _columns(rng, table)
        drafts.append(_Draft(len(drafts), operator, detail, properties))
        edges.extend((source, len(drafts) - 1) for source in upstream)
        return len(drafts) - 1

    tables = rng.sample(TABLES, rng.randint(*family.branches))
    heads = []
    for table in tables:
        head = None
        for operator in family.branch_operators:
            head = add(operator, table, [] if head is None else [head])
        heads.append(head)

    # left-deep joins, then the shared tail
    top = heads[0]
    for table, head in zip(tables[1:], heads[1:]):
        top = add(family.join_operator, table, [top, head])
    for operator in family.tail_operators:
        top = add(operator, tables[0], [top])
    return drafts, edges


def perturb(drafts: list[_Draft], rng: random.Random, count: int) -> list[_Draft]:
    """Copy of `drafts` with one tunable property re-drawn on each of `count` nodes."""
    copies = [_Draft(d.id, d.operator, d.detail, dict(d.properties)) for d in drafts]
    for draft in rng.sample(copies, min(count, len(copies))):
        tunable = _tunable(draft.operator)
        key = rng.choice(sorted(tunable))
        choices = sorted({encode_property(key, value) for value in tunable[key]} - {draft.properties[key]})
        draft.properties[key] = rng.choice(choices)
    return copies


def _document(plan_id: str, drafts: list[_Draft], edges, runtime: float | None) -> PlanDocument:
    graph = QDag(id=plan_id, nodes=[draft.node() for draft in drafts], edges=edges)
    return PlanDocument(plan_id=plan_id, graph=graph, runtime_seconds=runtime)


def _runtime(family: SyntheticFamily, rng: random.Random) -> float:
    low, high = family.runtime_range
    # a 0.001 grid keeps every runtime exactly representable in the JSON files
    return math.floor(rng.uniform(low, high) * 1000) / 1000


def synthetic_documents(spec: SyntheticSpec) -> list[PlanDocument]:
    rng = random.Random(spec.seed)
    documents = []
    for family in spec.families:
        drafts, edges = _base_plan(family, rng)
        count = math.floor(spec.perturbation_rate * len(drafts))
        for i in range(spec.count_per_family):
            variant = perturb(drafts, rng, count)
            documents.append(_document(f"{family.name}-{i:03d}", variant, edges, _runtime(family, rng)))
    return documents


def perturbed_variant(doc: PlanDocument, rng: random.Random, count: int = 1) -> PlanDocument:
    """
    `doc` with `count` node properties re-drawn, under the plan_id `<plan_id>~`.
    Only plans from this generator have the fact layout this relies on.
    """
    drafts = []
    for node in doc.graph.nodes:
        tokens = _tokens(node.properties)
        detail = node.fact[len(node.operator_name):len(node.fact) - len(tokens)].strip()
        drafts.append(_Draft(node.id, node.operator_name, detail, dict(node.properties)))
    return _document(f"{doc.plan_id}~", perturb(drafts, rng, count), doc.graph.edges, doc.runtime_seconds)


def generate_corpus(spec: SyntheticSpec, out_path) -> Corpus:
    out = Path(out_path)
    out.mkdir(parents=True, exist_ok=True)
    documents = synthetic_documents(spec)
    for doc in documents:
        (out / f"{doc.plan_id}.json").write_text(render_plan_json(doc), encoding="utf-8")
    logger.info("wrote %d synthetic plan(s) to %s (seed %d)", len(documents), out, spec.seed)
    return Corpus(documents=tuple(documents), source_path=str(out))
