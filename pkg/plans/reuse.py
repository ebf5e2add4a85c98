"""
Inline expansion of reuse operators.

A ReusedExchange / ReusedSubquery node only points at a subgraph computed
elsewhere in the plan. Fingerprints should see that work, so each reuse node
is replaced by a fresh copy of the referenced subgraph (the target node plus
everything upstream of it).
"""
from __future__ import annotations

import logging
from dataclasses import replace

import networkx as nx

from fingerprints.features import REFERENCE_KEY

from .documents import PlanDocument
from .exceptions import ReferenceCycle, UnresolvedReference
from .graph import PlanNode, QDag

logger = logging.getLogger(__name__)

REUSE_OPERATORS = frozenset({"ReusedExchange", "ReusedSubquery"})


def is_reuse(node: PlanNode) -> bool:
    return node.operator_name in REUSE_OPERATORS


class _ReuseExpander:

    def __init__(self, graph: QDag):
        self.graph = graph
        self.next_id = max(node.id for node in graph.nodes) + 1
        self.nodes: list[PlanNode] = []
        self.edges: list[tuple[int, int]] = []

    def expand(self) -> QDag:
        graph = self.graph
        # reuse node id -> id of the node that replaces it
        stand_in: dict[int, int] = {}
        for node in graph.nodes:
            if is_reuse(node):
                stand_in[node.id] = self._copy_target(node, chain=(node.id,))
            else:
                self.nodes.append(node)
        for u, v in graph.edges:
            self.edges.append((stand_in.get(u, u), stand_in.get(v, v)))
        return QDag(id=graph.id, nodes=self.nodes, edges=self.edges)

    def _copy_target(self, reuse_node: PlanNode, chain: tuple[int, ...]) -> int:
        target = reuse_node.properties.get(REFERENCE_KEY)
        if target is None or target not in self.graph.node_map:
            raise UnresolvedReference(reuse_node.id, target)

        members = nx.ancestors(self.graph.digraph, target) | {target}
        if reuse_node.id in members:
            raise ReferenceCycle(chain + (target,))

        fresh: dict[int, int] = {}
        for old_id in sorted(members):
            old = self.graph.node(old_id)
            if is_reuse(old):
                if old_id in chain:
                    raise ReferenceCycle(chain + (old_id,))
                fresh[old_id] = self._copy_target(old, chain + (old_id,))
                continue
            fresh[old_id] = self.next_id
            self.next_id += 1
            self.nodes.append(replace(old, id=fresh[old_id]))

        for u, v in self.graph.edges:
            if u in members and v in members:
                self.edges.append((fresh[u], fresh[v]))

        logger.debug(
            "expanded reuse node %s of %s into %d copied node(s)",
            reuse_node.id, self.graph.id, len(members),
        )
        return fresh[target]


def resolve_reuse_references(doc: PlanDocument) -> PlanDocument:
    if not any(is_reuse(node) for node in doc.graph.nodes):
        return doc
    return replace(doc, graph=_ReuseExpander(doc.graph).expand())
