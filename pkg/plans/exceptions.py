class PlanError(Exception):
    """Base class for every graph and ingest failure."""


# -----------------------------
# GRAPH VALIDATION
# -----------------------------

class GraphError(PlanError):
    pass


class EmptyGraph(GraphError):
    def __init__(self, graph_id=""):
        self.graph_id = graph_id
        super().__init__(f"graph {graph_id!r} has no nodes")


class DuplicateNodeId(GraphError):
    def __init__(self, node_id):
        self.node_id = node_id
        super().__init__(f"node id {node_id} appears more than once")


class DanglingEdge(GraphError):
    def __init__(self, node_id, edge):
        self.node_id = node_id
        self.edge = edge
        super().__init__(f"edge {edge[0]}->{edge[1]} references missing node {node_id}")


class CycleDetected(GraphError):
    def __init__(self, cycle):
        self.cycle = list(cycle)
        path = " -> ".join(str(u) for u, _ in self.cycle)
        super().__init__(f"graph contains a cycle: {path} -> {self.cycle[0][0]}")


class InvalidNode(GraphError):
    pass


# -----------------------------
# DOCUMENT INGEST
# -----------------------------

class IngestError(PlanError):
    pass


class MalformedDocument(IngestError):
    def __init__(self, message, line=None, offset=None):
        self.line = line
        self.offset = offset
        where = f" (line {line}, column {offset})" if line is not None else ""
        super().__init__(f"malformed plan document{where}: {message}")


class SchemaViolation(IngestError):
    def __init__(self, field, message):
        self.field = field
        super().__init__(f"{field}: {message}")


class IndentError(IngestError):
    def __init__(self, line, message):
        self.line = line
        super().__init__(f"line {line}: {message}")


class EmptyPlan(IngestError):
    def __init__(self):
        super().__init__("plan text contains no operator lines")


class UnresolvedReference(IngestError):
    def __init__(self, node_id, target):
        self.node_id = node_id
        self.target = target
        super().__init__(f"reuse node {node_id} references missing node {target}")


class ReferenceCycle(IngestError):
    def __init__(self, chain):
        self.chain = list(chain)
        super().__init__("reuse references loop: " + " -> ".join(str(n) for n in self.chain))


class DuplicatePlanId(IngestError):
    def __init__(self, plan_id, sources):
        self.plan_id = plan_id
        self.sources = list(sources)
        super().__init__(f"plan_id {plan_id!r} defined in {', '.join(self.sources)}")


class CorpusError(IngestError):
    """Every per-file failure of one corpus load, keyed by file name."""

    def __init__(self, errors):
        self.errors = list(errors)
        lines = [f"{name}: {error}" for name, error in self.errors]
        super().__init__(f"{len(self.errors)} plan file(s) failed to load\n" + "\n".join(lines))
