"""
Edge-structure signature S(G).

Each edge is packed into one 64-bit word from the structural fields of its two
endpoints; the words of all edges are summed modulo 2**64. Fields fill the word
from bit 63 downwards and the low 8 bits stay zero, which leaves the lowest
field some room for carries from the sum.
"""
from __future__ import annotations

from typing import NamedTuple

from plans.graph import QDag, StructuralProfile

from .operators import OperatorRegistry
from .simhash import MASK_64, WORD_BITS

EDGE_LAYOUT_VERSION = "edge-layout-1"
RESERVED_LOW_BITS = 8


class FieldSpec(NamedTuple):
    name: str
    width: int
    offset: int

    @property
    def max_value(self) -> int:
        return (1 << self.width) - 1

    def pack(self, value: int) -> int:
        return min(max(value, 0), self.max_value) << self.offset


def _layout(*fields: tuple[str, int]) -> tuple[FieldSpec, ...]:
    specs = []
    top = WORD_BITS
    for name, width in fields:
        top -= width
        specs.append(FieldSpec(name, width, top))
    return tuple(specs)


_ENDPOINT_FIELDS = (
    ("operator_code", 6),
    ("forward_order", 8),
    ("backward_order", 8),
    ("in_degree", 3),
    ("out_degree", 3),
)

EDGE_FIELD_LAYOUT: tuple[FieldSpec, ...] = _layout(
    *((f"src_{name}", width) for name, width in _ENDPOINT_FIELDS),
    *((f"tgt_{name}", width) for name, width in _ENDPOINT_FIELDS),
)
SOURCE_FIELDS = EDGE_FIELD_LAYOUT[:len(_ENDPOINT_FIELDS)]
TARGET_FIELDS = EDGE_FIELD_LAYOUT[len(_ENDPOINT_FIELDS):]

assert EDGE_FIELD_LAYOUT[-1].offset == RESERVED_LOW_BITS


def endpoint_values(node_id: int, graph: QDag, profile: StructuralProfile,
                    registry: OperatorRegistry) -> tuple[int, int, int, int, int]:
    return (
        registry.code(graph.node(node_id).operator_name),
        profile.forward_order[node_id],
        profile.backward_order[node_id],
        profile.in_degree[node_id],
        profile.out_degree[node_id],
    )


def _pack(fields, values) -> int:
    word = 0
    for spec, value in zip(fields, values):
        word |= spec.pack(value)
    return word


def edge_word(u: int, v: int, graph: QDag, profile: StructuralProfile, registry: OperatorRegistry) -> int:
    return (
        _pack(SOURCE_FIELDS, endpoint_values(u, graph, profile, registry))
        | _pack(TARGET_FIELDS, endpoint_values(v, graph, profile, registry))
    )


def edge_signature(graph: QDag, profile: StructuralProfile, registry: OperatorRegistry) -> int:
    if not graph.edges:
        # no edges: every node contributes its own fields in the source half
        total = sum(
            _pack(SOURCE_FIELDS, endpoint_values(node.id, graph, profile, registry))
            for node in graph.nodes
        )
        return total & MASK_64

    values = {node.id: endpoint_values(node.id, graph, profile, registry) for node in graph.nodes}
    source_words = {node_id: _pack(SOURCE_FIELDS, v) for node_id, v in values.items()}
    target_words = {node_id: _pack(TARGET_FIELDS, v) for node_id, v in values.items()}
    total = sum(source_words[u] | target_words[v] for u, v in graph.edges)
    return total & MASK_64
