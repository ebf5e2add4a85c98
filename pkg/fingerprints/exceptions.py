class FingerprintError(Exception):
    """Base class for hashing, fingerprinting and index failures."""


class EmptyInput(FingerprintError):
    def __init__(self):
        super().__init__("simhash needs at least one weighted hash")


class InvalidWeight(FingerprintError):
    pass


class EmptyFact(FingerprintError):
    def __init__(self, fact):
        self.fact = fact
        super().__init__(f"fact {fact!r} is empty after normalization")


# -----------------------------
# RUNTIME LABELS
# -----------------------------

class InvalidRuntime(FingerprintError):
    pass


class NegativeRuntime(InvalidRuntime):
    def __init__(self, runtime):
        self.runtime = runtime
        super().__init__(f"runtime must be >= 0, got {runtime!r}")


class NonFiniteRuntime(InvalidRuntime):
    def __init__(self, runtime):
        self.runtime = runtime
        super().__init__(f"runtime must be finite, got {runtime!r}")


# -----------------------------
# INDEX
# -----------------------------

class ConfigMismatch(FingerprintError):
    def __init__(self, field, expected, actual):
        self.field = field
        self.expected = expected
        self.actual = actual
        super().__init__(f"{field} mismatch: index has {expected!r}, got {actual!r}")


class EmptyIndex(FingerprintError):
    def __init__(self):
        super().__init__("index holds no records")


class IndexFormatError(FingerprintError):
    def __init__(self, line_number, message):
        self.line_number = line_number
        super().__init__(f"index line {line_number}: {message}")


class IndexVersionMismatch(IndexFormatError):
    pass


class InvalidRegistry(FingerprintError):
    pass
