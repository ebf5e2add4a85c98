"""
In-memory fingerprint index and its line-delimited file format.

    {"version": 1, "hash_algo": "cityhash64", "approach": "structured", ...}
    {"plan_id": "q1", "edge_fp": "0400041080400800", "node_fp": "...", "runtime_seconds": 4.2, "label": "Simple"}
    ...

Readers never lock: the record table is replaced wholesale on every write, so
a reader sees either the table before or after an add.
"""
from __future__ import annotations

import json
import logging
import math
import os
import tempfile
import threading
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Iterable

from .edges import EDGE_LAYOUT_VERSION
from .exceptions import ConfigMismatch, IndexFormatError, IndexVersionMismatch, InvalidRuntime
from .features import FEATURE_SCHEMA_VERSION
from .labels import ComplexityLabel, classify_runtime
from .signatures import Approach, Fingerprint128, FingerprintConfig
from .simhash import from_hex, to_hex

logger = logging.getLogger(__name__)

INDEX_FORMAT_VERSION = 1

# header fields pinned to this code base; anything else is checked at use
_PINNED_VERSIONS = {
    "edge_layout_version": EDGE_LAYOUT_VERSION,
    "feature_schema_version": FEATURE_SCHEMA_VERSION,
}


@dataclass(frozen=True)
class IndexRecord:
    plan_id: str
    fingerprint: Fingerprint128
    runtime_seconds: float
    label: ComplexityLabel

    def __post_init__(self):
        expected = classify_runtime(self.runtime_seconds)
        if self.label != expected:
            raise ValueError(
                f"record {self.plan_id!r}: label {ComplexityLabel(self.label).label} "
                f"does not match runtime {self.runtime_seconds} ({expected.label})"
            )

    @classmethod
    def build(cls, plan_id: str, fingerprint: Fingerprint128, runtime_seconds: float) -> IndexRecord:
        return cls(plan_id, fingerprint, runtime_seconds, classify_runtime(runtime_seconds))

    def to_json(self) -> dict[str, Any]:
        return {
            "plan_id": self.plan_id,
            "edge_fp": to_hex(self.fingerprint.edge_sig),
            "node_fp": to_hex(self.fingerprint.node_sig),
            "runtime_seconds": self.runtime_seconds,
            "label": ComplexityLabel(self.label).label,
        }


class Index:

    def __init__(self, header: dict[str, Any], records: Iterable[IndexRecord] = ()):
        self.header = {"version": INDEX_FORMAT_VERSION, **header}
        self._lock = threading.Lock()
        self._records: dict[str, IndexRecord] = {}
        loaded = {}
        for record in records:
            self.check_approach(record.fingerprint)
            loaded[record.plan_id] = record
        self._records = loaded

    @classmethod
    def for_config(cls, config: FingerprintConfig) -> Index:
        return cls(config.header())

    @property
    def approach(self) -> Approach:
        return Approach(self.header["approach"])

    @property
    def records(self) -> tuple[IndexRecord, ...]:
        return tuple(self._records.values())

    def __len__(self):
        return len(self._records)

    def __contains__(self, plan_id):
        return plan_id in self._records

    def get(self, plan_id: str) -> IndexRecord | None:
        return self._records.get(plan_id)

    def check_config(self, config: FingerprintConfig) -> None:
        """Raise ConfigMismatch on the first header field `config` disagrees with."""
        ours = {key: value for key, value in self.header.items() if key != "version"}
        theirs = config.header()
        for key in sorted(ours.keys() | theirs.keys()):
            if ours.get(key) != theirs.get(key):
                raise ConfigMismatch(key, ours.get(key), theirs.get(key))

    def check_approach(self, fingerprint: Fingerprint128) -> None:
        if Approach(fingerprint.approach) != self.approach:
            raise ConfigMismatch("approach", self.approach.value, Approach(fingerprint.approach).value)

    def add(self, record: IndexRecord, config: FingerprintConfig | None = None) -> Index:
        """Insert or replace the record for `record.plan_id`."""
        if config is not None:
            self.check_config(config)
        self.check_approach(record.fingerprint)
        with self._lock:
            records = dict(self._records)
            records[record.plan_id] = record
            self._records = records
        return self

    def structurally_equal(self, other: Index) -> bool:
        return self.header == other.header and self._records == other._records


# -----------------------------
# FILE FORMAT
# -----------------------------

def save_index(index: Index, path) -> None:
    path = Path(path)
    lines = [json.dumps(index.header)]
    lines.extend(json.dumps(record.to_json()) for record in index.records)
    # write next to the target and rename so readers never see half a file
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write("\n".join(lines) + "\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    logger.info("saved index with %d record(s) to %s", len(index), path)


def _read_header(line_number: int, line: str) -> dict[str, Any]:
    try:
        header = json.loads(line)
    except json.JSONDecodeError as exc:
        raise IndexFormatError(line_number, f"header is not valid JSON ({exc.msg})") from None
    if not isinstance(header, dict) or "approach" not in header:
        raise IndexFormatError(line_number, "header must be an object with an 'approach' field")
    if header.get("version") != INDEX_FORMAT_VERSION:
        raise IndexVersionMismatch(
            line_number, f"index format version {header.get('version')!r}, expected {INDEX_FORMAT_VERSION}"
        )
    for key, expected in _PINNED_VERSIONS.items():
        if key in header and header[key] != expected:
            raise IndexVersionMismatch(line_number, f"{key} is {header[key]!r}, expected {expected!r}")
    try:
        Approach(header["approach"])
    except ValueError:
        raise IndexFormatError(line_number, f"unknown approach {header['approach']!r}") from None
    return header


def _read_record(line_number: int, line: str, approach: Approach) -> IndexRecord:
    try:
        data = json.loads(line)
    except json.JSONDecodeError as exc:
        raise IndexFormatError(line_number, f"corrupt record ({exc.msg})") from None
    if not isinstance(data, dict):
        raise IndexFormatError(line_number, "record must be a JSON object")

    try:
        plan_id = data["plan_id"]
        runtime = data["runtime_seconds"]
        fingerprint = Fingerprint128(from_hex(data["edge_fp"]), from_hex(data["node_fp"]), approach)
        label = ComplexityLabel.from_name(data["label"])
    except KeyError as exc:
        raise IndexFormatError(line_number, f"missing field {exc.args[0]!r}") from None
    except (TypeError, ValueError) as exc:
        raise IndexFormatError(line_number, str(exc)) from None

    if not isinstance(plan_id, str) or not plan_id:
        raise IndexFormatError(line_number, "plan_id must be a non-empty string")
    if isinstance(runtime, bool) or not isinstance(runtime, (int, float)) or not math.isfinite(runtime):
        raise IndexFormatError(line_number, f"runtime_seconds must be a finite number, got {runtime!r}")
    try:
        return IndexRecord(plan_id, fingerprint, runtime, label)
    except (InvalidRuntime, ValueError) as exc:
        raise IndexFormatError(line_number, str(exc)) from None


def load_index(path) -> Index:
    path = Path(path)
    lines = path.read_text(encoding="utf-8").splitlines()
    if not lines or not lines[0].strip():
        raise IndexFormatError(1, "missing header line")

    header = _read_header(1, lines[0])
    approach = Approach(header["approach"])
    records = [
        _read_record(number, line, approach)
        for number, line in enumerate(lines[1:], start=2)
        if line.strip()
    ]
    index = Index({key: value for key, value in header.items() if key != "version"}, records)
    logger.info("loaded index with %d record(s) from %s", len(index), path)
    return index
