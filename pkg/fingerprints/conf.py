from pathlib import Path

from django.conf import settings

DEFAULTS = {
    "APPROACH": "structured",
    "K": 10,
    "TOP_N": 5,
    "NGRAM_N": 3,
    "INDEX_PATH": "index.jsonl",
    "OPERATOR_REGISTRY": str(Path(__file__).resolve().parent / "data" / "operators.tsv"),
    "WORKERS": 1,
}


def qdagprint_setting(name):
    return {**DEFAULTS, **getattr(settings, "QDAGPRINT", {})}[name]
