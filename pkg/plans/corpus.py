from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .documents import Corpus, PlanDocument
from .exceptions import CorpusError, DuplicatePlanId, PlanError
from .parsers import parse_plan_json, parse_plan_text
from .reuse import resolve_reuse_references

logger = logging.getLogger(__name__)

PLAN_SUFFIXES = (".json", ".plan")


def load_plan_file(path: Path) -> PlanDocument:
    """Parse one plan file (format chosen by suffix) and expand reuse nodes."""
    path = Path(path)
    if path.suffix == ".json":
        doc = parse_plan_json(path.read_bytes())
    elif path.suffix == ".plan":
        doc = parse_plan_text(path.read_text(encoding="utf-8"), plan_id=path.stem)
    else:
        raise CorpusError([(path.name, f"unsupported file type {path.suffix!r}")])
    logger.debug("parsed %s as %s (%d nodes)", path.name, doc.plan_id, len(doc.graph.nodes))
    return resolve_reuse_references(doc)


def plan_files(path: Path) -> list[Path]:
    path = Path(path)
    if path.is_dir():
        return sorted(
            (child for child in path.iterdir() if child.is_file() and child.suffix in PLAN_SUFFIXES),
            key=lambda child: child.name,
        )
    return [path]


def _load(path: Path) -> tuple[PlanDocument | None, Exception | None]:
    try:
        return load_plan_file(path), None
    except (PlanError, OSError, UnicodeDecodeError) as exc:
        return None, exc


def load_corpus(path, workers: int = 1) -> Corpus:
    """
    Load every plan file under `path` (or `path` itself when it is a file).

    Files are read in lexicographic name order and the corpus keeps that
    order whatever the worker count. All per-file failures are reported
    together.
    """
    path = Path(path)
    if not path.exists():
        raise CorpusError([(str(path), "no such file or directory")])

    files = plan_files(path)
    if workers > 1 and len(files) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_load, files))
    else:
        results = [_load(file) for file in files]

    errors = [(file.name, error) for file, (_, error) in zip(files, results) if error is not None]
    if errors:
        raise CorpusError(errors)

    documents: list[PlanDocument] = []
    sources: dict[str, str] = {}
    for file, (doc, _) in zip(files, results):
        if doc.plan_id in sources:
            raise DuplicatePlanId(doc.plan_id, [sources[doc.plan_id], file.name])
        sources[doc.plan_id] = file.name
        documents.append(doc)

    logger.info("loaded %d plan(s) from %s", len(documents), path)
    return Corpus(documents=tuple(documents), source_path=str(path))
