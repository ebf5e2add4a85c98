"""
128-bit fingerprints and the configuration that identifies them.

A fingerprint is only comparable with fingerprints built under the same
FingerprintConfig; `header()` is what an index file records for that check.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np
from django.db import models

from plans.graph import QDag, StructuralProfile

from .edges import EDGE_LAYOUT_VERSION, edge_signature
from .features import FEATURE_SCHEMA_VERSION
from .ngram import NGramConfig, node_hashes_ngram, node_signature_ngram
from .operators import OperatorRegistry, default_registry
from .simhash import HASH_ALGORITHM, simhash_words
from .structured import extract_features, node_hash_structured, node_signature_structured


class Approach(models.TextChoices):
    STRUCTURED = "structured", "Structured features"
    NGRAM = "ngram", "Character n-grams"
    HYBRID = "hybrid", "Structured features and n-grams"


@dataclass(frozen=True)
class FingerprintConfig:
    approach: Approach = Approach.STRUCTURED
    ngram: NGramConfig = field(default_factory=NGramConfig)
    registry: OperatorRegistry = field(default_factory=default_registry, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "approach", Approach(self.approach))

    @property
    def uses_features(self) -> bool:
        return self.approach in (Approach.STRUCTURED, Approach.HYBRID)

    @property
    def uses_ngrams(self) -> bool:
        return self.approach in (Approach.NGRAM, Approach.HYBRID)

    def header(self) -> dict[str, Any]:
        header: dict[str, Any] = {
            "hash_algo": HASH_ALGORITHM,
            "approach": self.approach.value,
            "edge_layout_version": EDGE_LAYOUT_VERSION,
            "operator_registry_version": self.registry.version,
        }
        if self.uses_features:
            header["feature_schema_version"] = FEATURE_SCHEMA_VERSION
        if self.uses_ngrams:
            header["ngram"] = self.ngram.header()
        return header

    @classmethod
    def from_header(cls, header: dict[str, Any], registry: OperatorRegistry | None = None) -> FingerprintConfig:
        ngram = NGramConfig.from_header(header["ngram"]) if "ngram" in header else NGramConfig()
        return cls(
            approach=Approach(header["approach"]),
            ngram=ngram,
            registry=registry or default_registry(),
        )


@dataclass(frozen=True)
class Fingerprint128:
    edge_sig: int
    node_sig: int
    approach: Approach


def node_signature_hybrid(graph: QDag, profile: StructuralProfile, registry: OperatorRegistry,
                          cfg: NGramConfig) -> int:
    """
    Both node encodings in one SimHash: each node's feature hash weighs as
    much as all of that node's grams together, times its depth.
    """
    words: list[int] = []
    weights: list[float] = []
    for node in graph.nodes:
        grams = node_hashes_ngram(node, cfg)
        words.append(node_hash_structured(extract_features(node, registry)))
        weights.append(float(profile.depth[node.id] * len(grams)))
        words.extend(grams)
        weights.extend([1.0] * len(grams))
    return simhash_words(np.array(words, dtype=np.uint64), np.array(weights, dtype=np.float64))


def compute_fingerprint(graph: QDag, config: FingerprintConfig | None = None) -> Fingerprint128:
    config = config or FingerprintConfig()
    profile = graph.profile
    registry = config.registry

    if config.approach == Approach.STRUCTURED:
        node_sig = node_signature_structured(graph, profile, registry)
    elif config.approach == Approach.NGRAM:
        node_sig = node_signature_ngram(graph, config.ngram)
    else:
        node_sig = node_signature_hybrid(graph, profile, registry, config.ngram)

    return Fingerprint128(
        edge_sig=edge_signature(graph, profile, registry),
        node_sig=node_sig,
        approach=config.approach,
    )
