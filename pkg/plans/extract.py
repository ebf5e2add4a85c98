"""
Best-effort property extraction from EXPLAIN-style operator lines.

Only counts, types and categorical tokens are read; table and column names
never reach the feature schema.
"""
from __future__ import annotations

import re

from fingerprints.features import REFERENCE_KEY, normalize_properties

JOIN_ALGORITHM_BY_OPERATOR = {
    "SortMergeJoin": "sort-merge",
    "ShuffledHashJoin": "hash",
    "BroadcastHashJoin": "broadcast",
    "BroadcastNestedLoopJoin": "broadcast",
}
AGGREGATE_OPERATORS = {"HashAggregate", "SortAggregate", "ObjectHashAggregate"}

_TYPE_END = r"(?![A-Za-z0-9_])"
_NUMERIC_TYPE = re.compile(
    r":\s*(?:tinyint|smallint|int|bigint|long|float|double|decimal(?:\(\d+,\s*\d+\))?)" + _TYPE_END,
    re.IGNORECASE,
)
_STRING_TYPE = re.compile(r":\s*(?:string|varchar(?:\(\d+\))?|char(?:\(\d+\))?)" + _TYPE_END, re.IGNORECASE)
_JOIN_SEMANTICS = re.compile(r"\b(Inner|LeftOuter|RightOuter|FullOuter|Outer|LeftAnti|Anti|LeftSemi|Semi)\b")
_BUILD_SIDE = re.compile(r"\bBuild(Left|Right)\b")
_PARTITIONING = re.compile(r"\b(hashpartitioning|rangepartitioning)\s*\(", re.IGNORECASE)
_SINGLE_PARTITION = re.compile(r"\bSinglePartition\b")
_PARTITIONS = re.compile(r"\bpartitions\s*=\s*(\d+)")
_BROADCAST_MODE = re.compile(r"\b(HashedRelationBroadcastMode|IdentityBroadcastMode)\b")
_WIDTH = re.compile(r"\bwidth\s*=\s*(\d+)")
_REUSES = re.compile(r"\breuses\s*=\s*(\d+)")
_GROUPING = re.compile(r"\bkeys\s*=\s*\[")
_RESULTS = re.compile(r"\b(?:functions|output)\s*=\s*\[")


def _enclosed(text: str, open_at: int) -> str:
    """Content of the bracket opened at text[open_at], honouring nesting."""
    depth = 0
    for i in range(open_at, len(text)):
        char = text[i]
        if char in "([":
            depth += 1
        elif char in ")]":
            depth -= 1
            if depth == 0:
                return text[open_at + 1:i]
    return text[open_at + 1:]


def _split_top_level(content: str) -> list[str]:
    items, depth, current = [], 0, []
    for char in content:
        if char in "([":
            depth += 1
        elif char in ")]":
            depth -= 1
        if char == "," and depth == 0:
            items.append("".join(current).strip())
            current = []
        else:
            current.append(char)
    items.append("".join(current).strip())
    return [item for item in items if item]


def _list_after(pattern: re.Pattern, text: str) -> list[str] | None:
    match = pattern.search(text)
    if match is None:
        return None
    return _split_top_level(_enclosed(text, match.end() - 1))


def _first_bracket_list(text: str) -> list[str] | None:
    open_at = text.find("[")
    if open_at < 0:
        return None
    return _split_top_level(_enclosed(text, open_at))


def extract_properties(operator_name: str, fact: str) -> dict[str, int]:
    raw: dict[str, object] = {}
    is_join = "Join" in operator_name or operator_name == "CartesianProduct"

    if operator_name in JOIN_ALGORITHM_BY_OPERATOR:
        raw["join_algorithm"] = JOIN_ALGORITHM_BY_OPERATOR[operator_name]
    if is_join:
        semantics = _JOIN_SEMANTICS.search(fact)
        if semantics:
            raw["join_semantics"] = semantics.group(1)
        keys = _first_bracket_list(fact)
        if keys:
            raw["num_keys"] = len(keys)

    build = _BUILD_SIDE.search(fact)
    if build:
        raw["build_side"] = build.group(1)

    partitioning = _PARTITIONING.search(fact)
    if partitioning:
        raw["partitioning_type"] = partitioning.group(1)
        args = _split_top_level(_enclosed(fact, partitioning.end() - 1))
        if args and args[-1].isdigit():
            raw["num_partitions"] = int(args[-1])
    elif _SINGLE_PARTITION.search(fact):
        raw["partitioning_type"] = "single"
    partitions = _PARTITIONS.search(fact)
    if partitions:
        raw["num_partitions"] = int(partitions.group(1))

    mode = _BROADCAST_MODE.search(fact)
    if mode:
        raw["broadcast_mode"] = mode.group(1)

    numeric = len(_NUMERIC_TYPE.findall(fact))
    strings = len(_STRING_TYPE.findall(fact))
    if numeric:
        raw["num_numeric_attrs"] = numeric
    if strings:
        raw["num_string_attrs"] = strings

    if operator_name in AGGREGATE_OPERATORS:
        grouping = _list_after(_GROUPING, fact)
        if grouping is not None:
            raw["num_grouping_exprs"] = len(grouping)
    results = _list_after(_RESULTS, fact)
    if results is None and not is_join and operator_name not in AGGREGATE_OPERATORS:
        results = _first_bracket_list(fact)
    if results:
        raw["num_result_exprs"] = len(results)

    width = _WIDTH.search(fact)
    if width:
        raw["row_width"] = int(width.group(1))

    reuses = _REUSES.search(fact)
    if reuses:
        raw[REFERENCE_KEY] = int(reuses.group(1))
    properties, _ = normalize_properties(raw)
    return properties
