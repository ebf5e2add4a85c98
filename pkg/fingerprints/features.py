"""
Feature schema for structured node fingerprints.

Slot order is part of the fingerprint: changing it (or any category code)
requires bumping FEATURE_SCHEMA_VERSION so old indices are rejected.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Any, Mapping

FEATURE_SCHEMA_VERSION = "feature-schema-1"

ABSENT = 0

# node property holding the id of the subgraph a reuse operator stands for
REFERENCE_KEY = "reuses"


@dataclass(frozen=True)
class FeatureSlot:
    name: str
    categories: Mapping[str, int] | None = None

    @property
    def categorical(self) -> bool:
        return self.categories is not None

    @property
    def max_code(self) -> int:
        return max(self.categories.values()) if self.categories else 0


JOIN_ALGORITHMS = {
    "hash": 1, "shuffledhash": 1,
    "sortmerge": 2,
    "broadcast": 3, "broadcasthash": 3,
}
JOIN_SEMANTICS = {
    "inner": 1,
    "outer": 2, "leftouter": 2, "rightouter": 2, "fullouter": 2,
    "anti": 3, "leftanti": 3,
    "semi": 4, "leftsemi": 4,
}
BUILD_SIDES = {"left": 1, "buildleft": 1, "right": 2, "buildright": 2}
PARTITIONING_TYPES = {
    "hash": 1, "hashpartitioning": 1,
    "range": 2, "rangepartitioning": 2,
    "single": 3, "singlepartition": 3,
}
BROADCAST_MODES = {
    "hashedrelation": 1, "hashed": 1, "hashedrelationbroadcastmode": 1,
    "identity": 2, "identitybroadcastmode": 2,
}

FEATURE_SCHEMA: tuple[FeatureSlot, ...] = (
    FeatureSlot("operator_code"),
    FeatureSlot("join_algorithm", JOIN_ALGORITHMS),
    FeatureSlot("join_semantics", JOIN_SEMANTICS),
    FeatureSlot("build_side", BUILD_SIDES),
    FeatureSlot("partitioning_type", PARTITIONING_TYPES),
    FeatureSlot("num_partitions"),
    FeatureSlot("broadcast_mode", BROADCAST_MODES),
    FeatureSlot("num_numeric_attrs"),
    FeatureSlot("num_string_attrs"),
    FeatureSlot("num_grouping_exprs"),
    FeatureSlot("num_result_exprs"),
    FeatureSlot("num_keys"),
    FeatureSlot("row_width"),
)

SLOTS = {slot.name: slot for slot in FEATURE_SCHEMA}

# operator_code comes from the registry, never from a property bag
PROPERTY_KEYS = tuple(slot.name for slot in FEATURE_SCHEMA[1:])

KEY_ALIASES = {
    "join_type": "join_semantics",
    "join_algo": "join_algorithm",
    "build": "build_side",
    "partitioning": "partitioning_type",
    "partitions": "num_partitions",
    "broadcast": "broadcast_mode",
    "width": "row_width",
    "keys": "num_keys",
}

_CAMEL = re.compile(r"(?<=[a-z0-9])([A-Z])")
_NON_ALNUM = re.compile(r"[^a-z0-9]+")


def normalize_key(key: str) -> str:
    key = _CAMEL.sub(r"_\1", key.strip()).lower()
    key = re.sub(r"[\s\-]+", "_", key)
    return KEY_ALIASES.get(key, key)


def _category_token(value: str) -> str:
    return _NON_ALNUM.sub("", value.lower())


def bucket_width(width: int) -> int:
    """Nearest power of two, ties going down; 0 stays absent."""
    if width <= 0:
        return ABSENT
    upper = 1 << (width - 1).bit_length()
    lower = upper >> 1 if upper > width else upper
    return lower if width - lower <= upper - width else upper


def encode_property(key: str, value: Any) -> int:
    slot = SLOTS[key]
    if isinstance(value, bool):
        raise ValueError(f"{key}: boolean is not a valid value")

    if slot.categorical:
        if isinstance(value, str):
            code = slot.categories.get(_category_token(value))
            if code is None:
                raise ValueError(f"{key}: unknown category {value!r}")
            return code
        if isinstance(value, int) and 0 <= value <= slot.max_code:
            return value
        raise ValueError(f"{key}: expected a category name or code, got {value!r}")

    if isinstance(value, float) and value.is_integer():
        value = int(value)
    if isinstance(value, str) and value.strip().isdigit():
        value = int(value)
    if not isinstance(value, int) or value < 0:
        raise ValueError(f"{key}: expected a non-negative integer, got {value!r}")
    return bucket_width(value) if key == "row_width" else value


def normalize_properties(raw: Mapping[str, Any]) -> tuple[dict[str, int], dict[str, Any]]:
    """
    Split a raw property bag into schema properties (encoded, schema order)
    and everything else. The reuse reference is kept with the schema
    properties since reuse expansion needs it.
    """
    known: dict[str, int] = {}
    unknown: dict[str, Any] = {}
    for raw_key, value in raw.items():
        key = normalize_key(raw_key)
        if key in SLOTS and key != "operator_code":
            known[key] = encode_property(key, value)
        elif key == REFERENCE_KEY:
            if isinstance(value, bool) or not isinstance(value, int) or value < 0:
                raise ValueError(f"{REFERENCE_KEY}: expected a node id, got {value!r}")
            known[key] = value
        else:
            unknown[raw_key] = value

    ordered = {key: known[key] for key in PROPERTY_KEYS if key in known}
    if REFERENCE_KEY in known:
        ordered[REFERENCE_KEY] = known[REFERENCE_KEY]
    return ordered, unknown
