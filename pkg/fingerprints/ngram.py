"""
N-gram node fingerprint: shingle every node's fact into character n-grams,
hash each gram and fold all of them into one uniform-weight SimHash.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Any

import numpy as np

from plans.graph import PlanNode, QDag

from .exceptions import EmptyFact
from .simhash import simhash_words, string_hash64

_WHITESPACE = re.compile(r"\s+")
_OPERATOR_ID = re.compile(r"#\d+")


@dataclass(frozen=True)
class NGramConfig:
    n: int = 3
    collapse_whitespace: bool = True
    strip_ids: bool = True
    lowercase: bool = False
    dedupe: bool = False

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"n-gram size must be a positive integer, got {self.n!r}")

    def header(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "collapse_whitespace": self.collapse_whitespace,
            "strip_ids": self.strip_ids,
            "lowercase": self.lowercase,
            "dedupe": self.dedupe,
        }

    @classmethod
    def from_header(cls, data: dict[str, Any]) -> NGramConfig:
        return cls(**{key: data[key] for key in ("n", "collapse_whitespace", "strip_ids", "lowercase", "dedupe")})


def normalize_fact(fact: str, cfg: NGramConfig) -> str:
    if cfg.strip_ids:
        fact = _OPERATOR_ID.sub("", fact)
    if cfg.collapse_whitespace:
        fact = _WHITESPACE.sub(" ", fact).strip()
    if cfg.lowercase:
        fact = fact.lower()
    return fact


def ngrams(fact: str, cfg: NGramConfig) -> list[str]:
    text = normalize_fact(fact, cfg)
    if not text:
        raise EmptyFact(fact)
    if len(text) < cfg.n:
        return [text]
    return [text[i:i + cfg.n] for i in range(len(text) - cfg.n + 1)]


def node_hashes_ngram(node: PlanNode, cfg: NGramConfig) -> list[int]:
    grams = ngrams(node.fact, cfg)
    if cfg.dedupe:
        grams = list(dict.fromkeys(grams))
    return [string_hash64(gram) for gram in grams]


def node_signature_ngram(graph: QDag, cfg: NGramConfig) -> int:
    words = np.fromiter(
        (h for node in graph.nodes for h in node_hashes_ngram(node, cfg)),
        dtype=np.uint64,
    )
    return simhash_words(words)
