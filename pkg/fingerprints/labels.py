import math

from django.db import models

from .exceptions import NegativeRuntime, NonFiniteRuntime

SIMPLE_UPPER_SECONDS = 5.0
MEDIUM_UPPER_SECONDS = 30.0


class ComplexityLabel(models.IntegerChoices):
    SIMPLE = 0, "Simple"
    MEDIUM = 1, "Medium"
    COMPLEX = 2, "Complex"

    @classmethod
    def from_name(cls, name):
        for label in cls:
            if label.label == name:
                return label
        raise ValueError(f"unknown complexity label {name!r}")


def classify_runtime(runtime_seconds):
    """[0, 5) Simple, [5, 30) Medium, 30 and above Complex."""
    if not math.isfinite(runtime_seconds):
        raise NonFiniteRuntime(runtime_seconds)
    if runtime_seconds < 0:
        raise NegativeRuntime(runtime_seconds)
    if runtime_seconds < SIMPLE_UPPER_SECONDS:
        return ComplexityLabel.SIMPLE
    if runtime_seconds < MEDIUM_UPPER_SECONDS:
        return ComplexityLabel.MEDIUM
    return ComplexityLabel.COMPLEX
