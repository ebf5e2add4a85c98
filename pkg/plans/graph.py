"""
QDAG data model and the structural quantities every fingerprint consumes.

Edges follow data flow: child (producer) -> parent (consumer). Scans are
sources, the final operator is the sink.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Mapping

import networkx as nx

from fingerprints.features import normalize_properties

from .exceptions import (
    CycleDetected, DanglingEdge, DuplicateNodeId, EmptyGraph, InvalidNode,
)


@dataclass(frozen=True)
class PlanNode:
    id: int
    operator_name: str
    fact: str
    properties: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if isinstance(self.id, bool) or not isinstance(self.id, int) or self.id < 0:
            raise InvalidNode(f"node id must be a non-negative integer, got {self.id!r}")
        if not self.operator_name:
            raise InvalidNode(f"node {self.id} has an empty operator name")
        if not self.fact or not self.fact.startswith(self.operator_name):
            raise InvalidNode(
                f"node {self.id}: fact {self.fact!r} must begin with {self.operator_name!r}"
            )
        try:
            known, unknown = normalize_properties(self.properties)
        except ValueError as exc:
            raise InvalidNode(f"node {self.id}: {exc}") from None
        # schema properties hold their integer codes from here on
        object.__setattr__(self, "properties", {**known, **unknown})


@dataclass(frozen=True)
class StructuralProfile:
    forward_order: dict[int, int]
    backward_order: dict[int, int]
    in_degree: dict[int, int]
    out_degree: dict[int, int]
    depth: dict[int, int]


@dataclass(frozen=True)
class QDag:
    id: str
    nodes: tuple[PlanNode, ...]
    edges: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "edges", tuple((int(u), int(v)) for u, v in self.edges))
        validate_dag(self)

    @cached_property
    def digraph(self) -> nx.MultiDiGraph:
        # multigraph so that repeated edges still count towards degrees
        g = nx.MultiDiGraph()
        g.add_nodes_from(node.id for node in self.nodes)
        g.add_edges_from(self.edges)
        return g

    @cached_property
    def node_map(self) -> dict[int, PlanNode]:
        return {node.id: node for node in self.nodes}

    @cached_property
    def profile(self) -> StructuralProfile:
        return structural_profile(self)

    def node(self, node_id: int) -> PlanNode:
        return self.node_map[node_id]

    def structurally_equal(self, other: QDag) -> bool:
        """Same id, same node set and same edge multiset, ignoring list order."""
        return (
            self.id == other.id
            and sorted(self.nodes, key=_node_key) == sorted(other.nodes, key=_node_key)
            and sorted(self.edges) == sorted(other.edges)
        )


def _node_key(node: PlanNode) -> int:
    return node.id


def validate_dag(graph: QDag) -> QDag:
    if not graph.nodes:
        raise EmptyGraph(graph.id)

    seen = set()
    for node in graph.nodes:
        if node.id in seen:
            raise DuplicateNodeId(node.id)
        seen.add(node.id)

    for edge in graph.edges:
        for endpoint in edge:
            if endpoint not in seen:
                raise DanglingEdge(endpoint, edge)

    if not nx.is_directed_acyclic_graph(graph.digraph):
        cycle = nx.find_cycle(graph.digraph)
        raise CycleDetected([(u, v) for u, v, *_ in cycle])
    return graph


def structural_profile(graph: QDag) -> StructuralProfile:
    g = graph.digraph
    # min node id first among ready nodes, so orders never depend on list order
    forward = list(nx.lexicographical_topological_sort(g))
    backward = list(nx.lexicographical_topological_sort(g.reverse(copy=False)))

    depth: dict[int, int] = {}
    for node_id in forward:
        depth[node_id] = 1 + max((depth[p] for p in g.predecessors(node_id)), default=0)

    return StructuralProfile(
        forward_order={node_id: i for i, node_id in enumerate(forward)},
        backward_order={node_id: i for i, node_id in enumerate(backward)},
        in_degree=dict(g.in_degree()),
        out_degree=dict(g.out_degree()),
        depth=depth,
    )


def reverse_edges(graph: QDag) -> QDag:
    return QDag(id=graph.id, nodes=graph.nodes, edges=tuple((v, u) for u, v in graph.edges))
