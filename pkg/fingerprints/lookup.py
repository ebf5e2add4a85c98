"""Process-wide index behind the HTTP lookup service."""
from __future__ import annotations

import logging
import threading
from pathlib import Path

from .conf import qdagprint_setting
from .index import Index, IndexRecord, save_index
from .services import build_config, open_index
from .signatures import FingerprintConfig

logger = logging.getLogger(__name__)

_lock = threading.Lock()
_state: dict[str, object] = {}


def index_path() -> Path:
    return Path(qdagprint_setting("INDEX_PATH"))


def lookup_index() -> tuple[Index, FingerprintConfig]:
    """The shared index and the config its fingerprints were built with."""
    with _lock:
        if "index" not in _state:
            index = open_index(index_path(), build_config())
            _state["index"] = index
            _state["config"] = FingerprintConfig.from_header(index.header)
        return _state["index"], _state["config"]


def add_record(record: IndexRecord) -> Index:
    index, config = lookup_index()
    with _lock:
        index.add(record, config)
        save_index(index, index_path())
    return index


def reset_lookup_index() -> None:
    with _lock:
        _state.clear()
