"""
Leave-one-out evaluation of nearest-neighbour complexity prediction.

Every plan is fingerprinted once. Each plan is then predicted from an index
holding all the other plans and compared with the label of its own runtime.
"""
from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any

import numpy as np
from sklearn.metrics import confusion_matrix

from fingerprints.index import Index, IndexRecord
from fingerprints.labels import ComplexityLabel
from fingerprints.matching import predict
from fingerprints.signatures import Approach, FingerprintConfig, compute_fingerprint
from plans.documents import Corpus

from .exceptions import CorpusTooSmall, MissingRuntime

logger = logging.getLogger(__name__)

# (name, inclusive upper bound on the nearest neighbour's node distance)
DISTANCE_BUCKETS: tuple[tuple[str, int | None], ...] = (
    ("0", 0),
    ("(0,2]", 2),
    ("(2,5]", 5),
    ("(5,7]", 7),
    (">7", None),
)

LABELS = tuple(ComplexityLabel)


def distance_bucket(node_distance: int) -> str:
    for name, upper in DISTANCE_BUCKETS:
        if upper is None or node_distance <= upper:
            return name
    raise AssertionError("unreachable")


@dataclass(frozen=True)
class Prediction:
    plan_id: str
    actual: ComplexityLabel
    predicted: ComplexityLabel
    neighbour: str
    edge_distance: int
    node_distance: int

    @property
    def correct(self) -> bool:
        return self.actual == self.predicted

    def to_dict(self) -> dict[str, Any]:
        return {
            "plan_id": self.plan_id,
            "actual": ComplexityLabel(self.actual).label,
            "predicted": ComplexityLabel(self.predicted).label,
            "neighbour": self.neighbour,
            "edge_distance": self.edge_distance,
            "node_distance": self.node_distance,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> Prediction:
        return cls(
            plan_id=data["plan_id"],
            actual=ComplexityLabel.from_name(data["actual"]),
            predicted=ComplexityLabel.from_name(data["predicted"]),
            neighbour=data["neighbour"],
            edge_distance=data["edge_distance"],
            node_distance=data["node_distance"],
        )


def _fraction(numerator: int, denominator: int) -> float | None:
    return numerator / denominator if denominator else None


@dataclass(frozen=True)
class EvalReport:
    """
    Confusion counts (rows actual, columns predicted, both in label order)
    plus the per-plan predictions they were counted from. Every rate is
    derived from the counts; a rate with an empty denominator is None.
    """

    approach: Approach
    k: int
    confusion: tuple[tuple[int, ...], ...]
    predictions: tuple[Prediction, ...] = ()

    @classmethod
    def from_predictions(cls, approach, k, predictions) -> EvalReport:
        predictions = tuple(sorted(predictions, key=lambda p: p.plan_id))
        matrix = np.zeros((len(LABELS), len(LABELS)), dtype=np.int64)
        if predictions:
            matrix = confusion_matrix(
                [int(p.actual) for p in predictions],
                [int(p.predicted) for p in predictions],
                labels=[int(label) for label in LABELS],
            )
        return cls(
            approach=Approach(approach),
            k=k,
            confusion=tuple(tuple(int(count) for count in row) for row in matrix),
            predictions=predictions,
        )

    @property
    def size(self) -> int:
        return int(np.sum(self.confusion))

    @property
    def accuracy(self) -> float | None:
        return _fraction(int(np.trace(self.confusion)), self.size)

    @property
    def err_simple_as_heavier(self) -> float | None:
        row = self.confusion[ComplexityLabel.SIMPLE]
        return _fraction(sum(row) - row[ComplexityLabel.SIMPLE], sum(row))

    @property
    def err_heavy_as_simple(self) -> float | None:
        heavy = [self.confusion[label] for label in (ComplexityLabel.MEDIUM, ComplexityLabel.COMPLEX)]
        return _fraction(sum(row[ComplexityLabel.SIMPLE] for row in heavy), sum(sum(row) for row in heavy))

    def buckets(self) -> dict[str, dict[str, Any]]:
        counts = {name: [0, 0] for name, _ in DISTANCE_BUCKETS}
        for prediction in self.predictions:
            bucket = counts[distance_bucket(prediction.node_distance)]
            bucket[0] += 1
            bucket[1] += prediction.correct
        return {
            name: {"plans": plans, "correct": correct, "accuracy": _fraction(correct, plans)}
            for name, (plans, correct) in counts.items()
        }

    def to_dict(self) -> dict[str, Any]:
        return {
            "approach": self.approach.value,
            "k": self.k,
            "size": self.size,
            "labels": [label.label for label in LABELS],
            "confusion": [list(row) for row in self.confusion],
            "accuracy": self.accuracy,
            "err_simple_as_heavier": self.err_simple_as_heavier,
            "err_heavy_as_simple": self.err_heavy_as_simple,
            "buckets": self.buckets(),
            "unit": "document",
            "predictions": [prediction.to_dict() for prediction in self.predictions],
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> EvalReport:
        # derived rates are recomputed from the counts
        return cls(
            approach=Approach(data["approach"]),
            k=data["k"],
            confusion=tuple(tuple(row) for row in data["confusion"]),
            predictions=tuple(Prediction.from_dict(item) for item in data.get("predictions", ())),
        )


def _records(corpus: Corpus, config: FingerprintConfig) -> list[IndexRecord]:
    records = []
    for doc in corpus:
        if doc.runtime_seconds is None:
            raise MissingRuntime(doc.plan_id)
        records.append(IndexRecord.build(doc.plan_id, compute_fingerprint(doc.graph, config), doc.runtime_seconds))
    # plan_id order makes the result independent of corpus file order
    records.sort(key=lambda record: record.plan_id)
    return records


def eval_leave_one_out(corpus: Corpus, config: FingerprintConfig | None = None, k: int = 10,
                       *, vote: int = 1, workers: int = 1) -> EvalReport:
    config = config or FingerprintConfig()
    if len(corpus) < 2:
        raise CorpusTooSmall(len(corpus))
    records = _records(corpus, config)
    header = config.header()

    def held_out(position: int) -> Prediction:
        probe = records[position]
        others = Index(header, records[:position] + records[position + 1:])
        label, evidence = predict(others, probe.fingerprint, k=k, vote=vote)
        return Prediction(
            plan_id=probe.plan_id,
            actual=probe.label,
            predicted=label,
            neighbour=evidence.plan_id,
            edge_distance=evidence.edge_distance,
            node_distance=evidence.node_distance,
        )

    positions = range(len(records))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            predictions = list(pool.map(held_out, positions))
    else:
        predictions = [held_out(position) for position in positions]

    report = EvalReport.from_predictions(config.approach, k, predictions)
    logger.info(
        "leave-one-out over %d plan(s) from %s (%s, k=%d): accuracy %.4f",
        report.size, corpus.source_path, config.approach.value, k, report.accuracy,
    )
    return report
