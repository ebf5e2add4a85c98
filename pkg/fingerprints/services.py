"""
Glue shared by the management commands and the lookup API: build a
FingerprintConfig from settings plus overrides, fingerprint documents and
open or create index files.
"""
from __future__ import annotations

import logging
from pathlib import Path

from plans.documents import PlanDocument
from plans.exceptions import SchemaViolation

from .conf import qdagprint_setting
from .index import Index, IndexRecord, load_index
from .ngram import NGramConfig
from .operators import default_registry, registry_at
from .signatures import Approach, Fingerprint128, FingerprintConfig, compute_fingerprint

logger = logging.getLogger(__name__)


def build_config(approach=None, ngram_n=None, *, keep_ids=False, no_normalize=False,
                 ngram_set=False, registry_path=None) -> FingerprintConfig:
    ngram = NGramConfig(
        n=ngram_n or qdagprint_setting("NGRAM_N"),
        collapse_whitespace=not no_normalize,
        strip_ids=not keep_ids,
        dedupe=ngram_set,
    )
    registry = registry_at(str(registry_path)) if registry_path else default_registry()
    return FingerprintConfig(
        approach=Approach(approach or qdagprint_setting("APPROACH")),
        ngram=ngram,
        registry=registry,
    )


def fingerprint_document(doc: PlanDocument, config: FingerprintConfig) -> Fingerprint128:
    return compute_fingerprint(doc.graph, config)


def record_for(doc: PlanDocument, config: FingerprintConfig) -> IndexRecord:
    if doc.runtime_seconds is None:
        raise SchemaViolation("runtime_seconds", f"plan {doc.plan_id!r} needs a runtime to be indexed")
    return IndexRecord.build(doc.plan_id, fingerprint_document(doc, config), doc.runtime_seconds)


def open_index(path, config: FingerprintConfig) -> Index:
    """Load the index at `path`, or start an empty one for `config` if there is none."""
    path = Path(path)
    if path.exists():
        return load_index(path)
    logger.info("no index at %s, starting an empty %s index", path, config.approach.value)
    return Index.for_config(config)
