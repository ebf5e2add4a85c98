"""
Plan document parsers.

Two formats describe the same PlanDocument:

* JSON (``.json``), one document per file::

    {"plan_id": "q1", "runtime_seconds": 4.2,
     "nodes": [{"id": 0, "operator": "Scan", "fact": "Scan lineitem",
                "properties": {"row_width": 64}}],
     "edges": [[0, 1]]}

* indented text (``.plan``): one operator per line, two spaces per level,
  root on the first line, optional ``-- plan_id:`` / ``-- runtime_seconds:``
  header lines before the tree. Children feed their parent, so every line
  gets an edge to the line it is nested under.
"""
from __future__ import annotations

import json
import re
from typing import Any

from fingerprints.features import normalize_properties

from .documents import PlanDocument
from .exceptions import (
    EmptyPlan, IndentError, InvalidNode, MalformedDocument, SchemaViolation,
)
from .extract import extract_properties
from .graph import PlanNode, QDag
from .serializers import PlanDocumentSerializer, first_error

INDENT_UNIT = 2

_HEADER = re.compile(r"^--\s*(plan_id|runtime_seconds)\s*:\s*(.*?)\s*$")
_CODEGEN_MARKER = re.compile(r"^\*\(\d+\)\s*")
_OPERATOR = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


# -----------------------------
# JSON
# -----------------------------

def parse_plan_json(data: bytes | str) -> PlanDocument:
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise MalformedDocument(f"input is not UTF-8 ({exc.reason} at byte {exc.start})") from None
    try:
        payload = json.loads(data)
    except json.JSONDecodeError as exc:
        raise MalformedDocument(exc.msg, line=exc.lineno, offset=exc.colno) from None
    return document_from_payload(payload)


def document_from_payload(payload: Any) -> PlanDocument:
    """Validate an already-decoded JSON plan document."""
    serializer = PlanDocumentSerializer(data=payload)
    if not serializer.is_valid():
        field, message = first_error(serializer.errors)
        raise SchemaViolation(field, message)

    data = serializer.validated_data
    nodes = [_json_node(i, item) for i, item in enumerate(data["nodes"])]
    graph = QDag(id=data["plan_id"], nodes=nodes, edges=[tuple(edge) for edge in data["edges"]])
    return PlanDocument(plan_id=data["plan_id"], graph=graph, runtime_seconds=data["runtime_seconds"])


def _json_node(position: int, item: dict) -> PlanNode:
    try:
        properties, unknown = normalize_properties(item["properties"])
    except ValueError as exc:
        raise SchemaViolation(f"nodes[{position}].properties", str(exc)) from None

    fact = item["fact"]
    for key, value in unknown.items():
        token = f"{key}={value}"
        if token not in fact:
            fact = f"{fact} {token}"

    try:
        return PlanNode(id=item["id"], operator_name=item["operator"], fact=fact, properties=properties)
    except InvalidNode as exc:
        raise SchemaViolation(f"nodes[{position}]", str(exc)) from None


def render_plan_json(doc: PlanDocument) -> str:
    payload: dict[str, Any] = {"plan_id": doc.plan_id}
    if doc.runtime_seconds is not None:
        payload["runtime_seconds"] = doc.runtime_seconds
    nodes = []
    for node in doc.graph.nodes:
        item: dict[str, Any] = {"id": node.id, "operator": node.operator_name, "fact": node.fact}
        if node.properties:
            item["properties"] = dict(node.properties)
        nodes.append(item)
    payload["nodes"] = nodes
    payload["edges"] = [list(edge) for edge in doc.graph.edges]
    return json.dumps(payload, indent=2) + "\n"


# -----------------------------
# INDENTED TEXT
# -----------------------------

def parse_plan_text(text: str, *, plan_id: str | None = None) -> PlanDocument:
    header: dict[str, str] = {}
    nodes: list[PlanNode] = []
    edges: list[tuple[int, int]] = []
    ancestors: list[int] = []  # ancestors[level] = id of the open node at that level

    for number, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped:
            continue
        if stripped.startswith("--"):
            match = _HEADER.match(stripped)
            if match and not nodes:
                header[match.group(1)] = match.group(2)
            continue

        indent = raw[:len(raw) - len(raw.lstrip())]
        if "\t" in indent:
            raise IndentError(number, "tabs are not allowed in indentation")
        if len(indent) % INDENT_UNIT:
            raise IndentError(number, f"indentation must be a multiple of {INDENT_UNIT} spaces")
        level = len(indent) // INDENT_UNIT

        if not nodes and level != 0:
            raise IndentError(number, "the root operator must not be indented")
        if nodes and level == 0:
            raise IndentError(number, "a plan has exactly one root operator")
        if level > len(ancestors):
            raise IndentError(number, f"indentation jumps from level {len(ancestors) - 1} to {level}")

        node = _text_node(len(nodes), stripped, number)
        nodes.append(node)
        del ancestors[level:]
        if level:
            edges.append((node.id, ancestors[level - 1]))
        ancestors.append(node.id)

    if not nodes:
        raise EmptyPlan()

    plan_id = header.get("plan_id") or plan_id or "plan"
    runtime = None
    if "runtime_seconds" in header:
        try:
            runtime = float(header["runtime_seconds"])
        except ValueError:
            raise SchemaViolation("runtime_seconds", f"not a number: {header['runtime_seconds']!r}") from None

    graph = QDag(id=plan_id, nodes=nodes, edges=edges)
    return PlanDocument(plan_id=plan_id, graph=graph, runtime_seconds=runtime)


def _text_node(node_id: int, line: str, number: int) -> PlanNode:
    fact = _CODEGEN_MARKER.sub("", line)
    match = _OPERATOR.match(fact)
    if match is None:
        raise MalformedDocument(f"no operator name in {line!r}", line=number, offset=1)
    operator_name = match.group(0)
    return PlanNode(
        id=node_id,
        operator_name=operator_name,
        fact=fact,
        properties=extract_properties(operator_name, fact),
    )
