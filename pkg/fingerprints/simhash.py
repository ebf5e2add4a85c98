"""
SimHash combiner, Hamming distance and the pinned 64-bit string hash.

Every fingerprint in this package is built from these three functions, so the
hash algorithm identifier below is recorded in index headers.
"""
from __future__ import annotations

import re
from typing import Iterable, NamedTuple

import numpy as np
from cityhash import CityHash64

from .exceptions import EmptyInput, InvalidWeight

HASH_ALGORITHM = "cityhash64"
WORD_BITS = 64
MASK_64 = (1 << WORD_BITS) - 1

_HEX_WORD = re.compile(r"[0-9a-f]{16}")


class WeightedHash(NamedTuple):
    hash: int
    weight: float = 1.0


def string_hash64(data: bytes | str) -> int:
    if isinstance(data, str):
        data = data.encode("utf-8")
    return CityHash64(data)


def _bit_matrix(words: np.ndarray) -> np.ndarray:
    """One row per word, column i holding bit i."""
    octets = np.ascontiguousarray(words, dtype="<u8").view(np.uint8).reshape(-1, 8)
    return np.unpackbits(octets, axis=1, bitorder="little")


def simhash_words(words: np.ndarray, weights: np.ndarray | None = None) -> int:
    """
    SimHash over an array of uint64 words. Without `weights` every word
    counts once, which skips the float tally.
    """
    if len(words) == 0:
        raise EmptyInput()
    bits = _bit_matrix(words)
    if weights is None:
        tally = 2 * bits.sum(axis=0, dtype=np.int64) - len(words)
    else:
        if not np.all(np.isfinite(weights) & (weights > 0)):
            raise InvalidWeight("simhash weights must be positive and finite")
        tally = weights @ (bits.astype(np.float64) * 2.0 - 1.0)
    return int.from_bytes(np.packbits(tally > 0, bitorder="little").tobytes(), "little")


def simhash(hashes: Iterable[WeightedHash | tuple[int, float]]) -> int:
    """
    Combine weighted 64-bit hashes into one word.

    Bit i of the result is set iff the weights of inputs with bit i set
    outweigh the inputs with bit i clear; a tally of exactly 0 gives 0.
    """
    items = list(hashes)
    if not items:
        raise EmptyInput()
    words = np.fromiter((h for h, _ in items), dtype=np.uint64, count=len(items))
    weights = np.fromiter((w for _, w in items), dtype=np.float64, count=len(items))
    return simhash_words(words, weights)


def hamming(a: int, b: int) -> int:
    return ((a ^ b) & MASK_64).bit_count()


def to_hex(word: int) -> str:
    return f"{word & MASK_64:016x}"


def from_hex(text: str) -> int:
    if not isinstance(text, str) or not _HEX_WORD.fullmatch(text):
        raise ValueError(f"expected 16 lowercase hex characters, got {text!r}")
    return int(text, 16)
