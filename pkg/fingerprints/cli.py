"""Argument and error handling shared by the management commands."""
from __future__ import annotations

import json
from contextlib import contextmanager
from dataclasses import replace
from pathlib import Path

from django.core.management.base import CommandError

from plans.corpus import load_plan_file
from plans.documents import PlanDocument
from plans.exceptions import PlanError

from .conf import qdagprint_setting
from .exceptions import FingerprintError
from .operators import registry_at
from .signatures import Approach, FingerprintConfig
from .services import build_config

INPUT_ERROR = 2
OPERATIONAL_ERROR = 1


def add_config_arguments(parser):
    parser.add_argument("--approach", choices=Approach.values, help="node signature approach")
    parser.add_argument("--ngram-n", type=int, dest="ngram_n", help="n-gram size")
    parser.add_argument("--keep-ids", action="store_true", dest="keep_ids",
                        help="do not strip #<digits> operator ids from facts")
    parser.add_argument("--no-normalize", action="store_true", dest="no_normalize",
                        help="do not collapse whitespace runs in facts")
    parser.add_argument("--ngram-set", action="store_true", dest="ngram_set",
                        help="count each distinct gram once per node")
    parser.add_argument("--registry", dest="registry", help="operator registry file")


def add_index_argument(parser):
    parser.add_argument("--index", dest="index", help="index file (default: settings INDEX_PATH)")


def add_lookup_arguments(parser):
    parser.add_argument("--k", type=int, dest="k", help="edge-distance candidates kept in step one")


def add_json_argument(parser):
    parser.add_argument("--json", action="store_true", dest="json", help="machine-readable output")


def config_from_options(options) -> FingerprintConfig:
    try:
        return build_config(
            options.get("approach"),
            options.get("ngram_n"),
            keep_ids=options.get("keep_ids", False),
            no_normalize=options.get("no_normalize", False),
            ngram_set=options.get("ngram_set", False),
            registry_path=options.get("registry"),
        )
    except (ValueError, FingerprintError) as exc:
        raise CommandError(str(exc), returncode=INPUT_ERROR) from None


def config_for_index(header, options) -> FingerprintConfig:
    """
    Config for probing an existing index: the header's settings with each
    flag the caller passed laid over them. Flags that disagree with the
    header survive here and are rejected by `Index.check_config`.
    """
    base = FingerprintConfig.from_header(header)
    overrides = {}
    if options.get("ngram_n") is not None:
        overrides["n"] = options["ngram_n"]
    if options.get("keep_ids"):
        overrides["strip_ids"] = False
    if options.get("no_normalize"):
        overrides["collapse_whitespace"] = False
    if options.get("ngram_set"):
        overrides["dedupe"] = True
    try:
        registry = registry_at(str(options["registry"])) if options.get("registry") else base.registry
        return FingerprintConfig(
            approach=Approach(options.get("approach") or base.approach),
            ngram=replace(base.ngram, **overrides),
            registry=registry,
        )
    except (ValueError, FingerprintError) as exc:
        raise CommandError(str(exc), returncode=INPUT_ERROR) from None


def index_path(options) -> Path:
    return Path(options.get("index") or qdagprint_setting("INDEX_PATH"))


def positive(options, name, setting=None):
    value = options.get(name)
    if value is None:
        value = qdagprint_setting(setting)
    if value < 1:
        raise CommandError(f"--{name} must be positive, got {value}", returncode=INPUT_ERROR)
    return value


def read_plan(path) -> PlanDocument:
    try:
        return load_plan_file(Path(path))
    except OSError as exc:
        raise CommandError(f"{path}: {exc.strerror or exc}", returncode=INPUT_ERROR) from None
    except PlanError as exc:
        raise CommandError(f"{path}: {exc}", returncode=INPUT_ERROR) from None


@contextmanager
def operational_errors(path=None):
    """Turn index and fingerprinting failures into exit code 1."""
    try:
        yield
    except FingerprintError as exc:
        prefix = f"{path}: " if path else ""
        raise CommandError(f"{prefix}{exc}", returncode=OPERATIONAL_ERROR) from None
    except OSError as exc:
        raise CommandError(f"{exc.filename or path}: {exc.strerror or exc}", returncode=OPERATIONAL_ERROR) from None


def dump_json(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True)
