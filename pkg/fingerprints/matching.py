"""
Two-step nearest-neighbour lookup and complexity prediction.

Step one keeps the k records whose edge signatures are closest to the probe;
step two ranks those candidates by node-signature distance. Every ordering
ends on plan_id so results never depend on index insertion order.
"""
from __future__ import annotations

import heapq
from collections import Counter
from dataclasses import dataclass

from .exceptions import EmptyIndex
from .index import Index, IndexRecord
from .labels import ComplexityLabel
from .signatures import Fingerprint128
from .simhash import MASK_64


@dataclass(frozen=True)
class MatchResult:
    plan_id: str
    edge_distance: int
    node_distance: int
    label: ComplexityLabel
    runtime_seconds: float

    def to_json(self):
        return {
            "plan_id": self.plan_id,
            "edge_distance": self.edge_distance,
            "node_distance": self.node_distance,
            "label": ComplexityLabel(self.label).label,
            "runtime_seconds": self.runtime_seconds,
        }


def _edge_first(scored):
    edge_distance, node_distance, record = scored
    return edge_distance, node_distance, record.plan_id


def _node_first(scored):
    edge_distance, node_distance, record = scored
    return node_distance, edge_distance, record.plan_id


def _score(records: tuple[IndexRecord, ...], probe: Fingerprint128):
    edge_sig = probe.edge_sig & MASK_64
    node_sig = probe.node_sig & MASK_64
    return [
        (
            (edge_sig ^ record.fingerprint.edge_sig).bit_count(),
            (node_sig ^ record.fingerprint.node_sig).bit_count(),
            record,
        )
        for record in records
    ]


def match(index: Index, probe: Fingerprint128, k: int, top_n: int) -> list[MatchResult]:
    if k < 1 or top_n < 1:
        raise ValueError(f"k and top_n must be positive, got k={k}, top_n={top_n}")
    index.check_approach(probe)
    records = index.records
    if not records:
        raise EmptyIndex()

    candidates = heapq.nsmallest(k, _score(records, probe), key=_edge_first)
    candidates.sort(key=_node_first)
    return [
        MatchResult(
            plan_id=record.plan_id,
            edge_distance=edge_distance,
            node_distance=node_distance,
            label=record.label,
            runtime_seconds=record.runtime_seconds,
        )
        for edge_distance, node_distance, record in candidates[:top_n]
    ]


def predict(index: Index, probe: Fingerprint128, k: int, vote: int = 1) -> tuple[ComplexityLabel, MatchResult]:
    """
    Label of the nearest neighbour, with that neighbour as evidence.

    With vote > 1 the label is the most common one among the `vote` best
    matches; ties go to the label of the better-ranked match.
    """
    if vote < 1:
        raise ValueError(f"vote must be positive, got {vote}")
    matches = match(index, probe, k, top_n=vote)
    if vote == 1:
        return ComplexityLabel(matches[0].label), matches[0]

    counts = Counter(result.label for result in matches)
    best = max(counts.values())
    for result in matches:
        if counts[result.label] == best:
            return ComplexityLabel(result.label), result
