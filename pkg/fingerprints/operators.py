"""Operator registry: fixed 6-bit codes for known plan operators."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Mapping

from .conf import qdagprint_setting
from .exceptions import InvalidRegistry
from .simhash import string_hash64

logger = logging.getLogger(__name__)

UNKNOWN_BASE = 32
UNKNOWN_SPAN = 31
RESERVED_CODE = 63
VERSION_PREFIX = "# registry-version:"


@dataclass(frozen=True)
class OperatorRegistry:
    codes: Mapping[str, int]
    version: str

    def code(self, name: str) -> int:
        return operator_code(name, self)


def operator_code(name: str, registry: OperatorRegistry) -> int:
    code = registry.codes.get(name)
    if code is not None:
        return code
    _warn_unknown(name)
    return UNKNOWN_BASE + string_hash64(name) % UNKNOWN_SPAN


@lru_cache(maxsize=None)
def _warn_unknown(name: str) -> None:
    logger.warning("operator %r is not registered, using hashed fallback code", name)


def load_registry(path) -> OperatorRegistry:
    path = Path(path)
    version = None
    codes: dict[str, int] = {}
    for number, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.strip()
        if line.startswith(VERSION_PREFIX):
            version = line[len(VERSION_PREFIX):].strip()
            continue
        if not line or line.startswith("#"):
            continue
        try:
            name, code_text = line.split("\t")
            code = int(code_text)
        except ValueError:
            raise InvalidRegistry(f"{path}:{number}: expected 'name<TAB>code', got {raw!r}") from None
        if not 0 <= code < RESERVED_CODE:
            raise InvalidRegistry(f"{path}:{number}: code {code} outside 0..{RESERVED_CODE - 1}")
        if name in codes:
            raise InvalidRegistry(f"{path}:{number}: operator {name!r} listed twice")
        codes[name] = code

    if version is None:
        raise InvalidRegistry(f"{path}: missing '{VERSION_PREFIX}' header")
    return OperatorRegistry(codes=codes, version=version)


@lru_cache(maxsize=8)
def registry_at(path: str) -> OperatorRegistry:
    return load_registry(path)


def default_registry() -> OperatorRegistry:
    return registry_at(str(qdagprint_setting("OPERATOR_REGISTRY")))
