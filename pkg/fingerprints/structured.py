"""
Structured node fingerprint: encode each operator as a fixed feature vector,
hash its canonical string and combine all nodes with depth-weighted SimHash.
"""
from __future__ import annotations

from typing import NamedTuple

from plans.graph import PlanNode, QDag, StructuralProfile

from .features import ABSENT, FEATURE_SCHEMA, PROPERTY_KEYS
from .operators import OperatorRegistry
from .simhash import WeightedHash, simhash, string_hash64

FEATURE_SEPARATOR = "|"


class NodeFeatureVector(NamedTuple):
    node_id: int
    values: tuple[int, ...]

    def canonical(self) -> str:
        return FEATURE_SEPARATOR.join(str(value) for value in self.values)


def extract_features(node: PlanNode, registry: OperatorRegistry) -> NodeFeatureVector:
    # PlanNode holds encoded properties; names never reach the vector
    values = [registry.code(node.operator_name)]
    values.extend(int(node.properties.get(key, ABSENT)) for key in PROPERTY_KEYS)
    assert len(values) == len(FEATURE_SCHEMA)
    return NodeFeatureVector(node.id, tuple(values))


def node_hash_structured(fv: NodeFeatureVector) -> int:
    return string_hash64(fv.canonical())


def node_signature_structured(graph: QDag, profile: StructuralProfile, registry: OperatorRegistry) -> int:
    return simhash(
        WeightedHash(node_hash_structured(extract_features(node, registry)), profile.depth[node.id])
        for node in graph.nodes
    )
