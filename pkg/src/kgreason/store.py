"""Triple store: dictionary-encoded, immutable, with out/in adjacency indexes.

The loader accepts UTF-8 TSV with one triple per line (subject, predicate,
object; extra fields ignored). Labels are exact keys: no Unicode
normalization, optional lowercasing via LoadConfig. Duplicate triples are
stored once. Literal-valued objects are ordinary entities.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import FormatError, IoError, UnknownEntity

OUT = "out"
IN = "in"
BOTH = "both"


@dataclass(frozen=True)
class LoadConfig:
    strict: bool = False
    lowercase_labels: bool = False


@dataclass(frozen=True)
class Triple:
    subject: int
    predicate: int
    object: int


@dataclass(frozen=True)
class QueryEdge:
    source: int  # index into QueryGraph.nodes
    predicate: str
    target: int


@dataclass(frozen=True)
class QueryGraph:
    """An attributed query graph: node labels plus labeled edges between them."""

    nodes: tuple[str, ...]
    edges: tuple[QueryEdge, ...]

    def __post_init__(self):
        for e in self.edges:
            if not (0 <= e.source < len(self.nodes) and 0 <= e.target < len(self.nodes)):
                raise ValueError(f"query edge {e} points outside the node list")

    @classmethod
    def from_triples(cls, triples: list[tuple[str, str, str]]) -> "QueryGraph":
        nodes: list[str] = []
        index: dict[str, int] = {}
        edges = []
        for s, p, o in triples:
            for label in (s, o):
                if label not in index:
                    index[label] = len(nodes)
                    nodes.append(label)
            edges.append(QueryEdge(index[s], p, index[o]))
        return cls(tuple(nodes), tuple(edges))

    def edge_triples(self) -> list[tuple[str, str, str]]:
        return [(self.nodes[e.source], e.predicate, self.nodes[e.target]) for e in self.edges]


class Dictionary:
    """Bidirectional label <-> dense-integer-id mapping."""

    __slots__ = ("_by_label", "_labels")

    def __init__(self):
        self._by_label: dict[str, int] = {}
        self._labels: list[str] = []

    def intern(self, label: str) -> int:
        eid = self._by_label.get(label)
        if eid is None:
            eid = len(self._labels)
            self._by_label[label] = eid
            self._labels.append(label)
        return eid

    def get(self, label: str) -> int | None:
        return self._by_label.get(label)

    def label(self, eid: int) -> str:
        return self._labels[eid]

    def __len__(self) -> int:
        return len(self._labels)

    def __contains__(self, label: str) -> bool:
        return label in self._by_label

    def labels(self) -> list[str]:
        return list(self._labels)


@dataclass
class LoadReport:
    lines: int = 0
    triples: int = 0
    duplicates: int = 0
    malformed: list[int] = field(default_factory=list)
    skipped_comments: int = 0


class KnowledgeGraph:
    """Immutable directed multigraph with typed predicates.

    Adjacency lists are sorted by (predicate id, entity id), so iteration
    order is a pure function of the input triple set.
    """

    def __init__(self, entities: Dictionary, predicates: Dictionary,
                 triples: set[tuple[int, int, int]], report: LoadReport | None = None):
        self.entities = entities
        self.predicates = predicates
        self.triple_count = len(triples)
        self.report = report or LoadReport(triples=len(triples))

        out: list[list[tuple[int, int]]] = [[] for _ in range(len(entities))]
        inc: list[list[tuple[int, int]]] = [[] for _ in range(len(entities))]
        for s, p, o in triples:
            out[s].append((p, o))
            inc[o].append((p, s))
        self.out_adjacency: list[tuple[tuple[int, int], ...]] = [tuple(sorted(a)) for a in out]
        self.in_adjacency: list[tuple[tuple[int, int], ...]] = [tuple(sorted(a)) for a in inc]
        self._triples = frozenset(triples)
        self._edge_arrays = None

    # -- lookups ---------------------------------------------------------

    def resolve_entity(self, label: str) -> int | None:
        return self.entities.get(label)

    def require_entity(self, label: str) -> int:
        eid = self.entities.get(label)
        if eid is None:
            raise UnknownEntity(f"unknown entity: {label!r}")
        return eid

    def entity_label(self, eid: int) -> str:
        return self.entities.label(eid)

    def resolve_predicate(self, label: str) -> int | None:
        return self.predicates.get(label)

    def predicate_label(self, pid: int) -> str:
        return self.predicates.label(pid)

    def has_triple(self, s: int, p: int, o: int) -> bool:
        return (s, p, o) in self._triples

    def neighbors(self, entity: int, direction: str = OUT):
        """Neighbors of an entity as (predicate id, entity id) pairs.

        direction="both" returns (predicate id, entity id, "out"|"in")
        triples, out edges first.
        """
        if not (0 <= entity < len(self.entities)):
            raise UnknownEntity(f"unknown entity id: {entity}")
        if direction == OUT:
            return list(self.out_adjacency[entity])
        if direction == IN:
            return list(self.in_adjacency[entity])
        if direction == BOTH:
            both = [(p, e, OUT) for p, e in self.out_adjacency[entity]]
            both.extend((p, e, IN) for p, e in self.in_adjacency[entity])
            return both
        raise ValueError(f"bad direction: {direction!r}")

    def out_degree(self, entity: int) -> int:
        return len(self.out_adjacency[entity])

    def in_degree(self, entity: int) -> int:
        return len(self.in_adjacency[entity])

    def triples(self):
        """All triples in deterministic (subject, adjacency) order."""
        for s, adj in enumerate(self.out_adjacency):
            for p, o in adj:
                yield Triple(s, p, o)

    def edge_arrays(self):
        """(subject, predicate, object) id columns over all triples, in the
        same deterministic order as triples(). Built once, then cached."""
        if self._edge_arrays is None:
            import numpy as np
            src = np.empty(self.triple_count, dtype=np.int64)
            pid = np.empty(self.triple_count, dtype=np.int64)
            dst = np.empty(self.triple_count, dtype=np.int64)
            i = 0
            for s, adj in enumerate(self.out_adjacency):
                for p, o in adj:
                    src[i] = s
                    pid[i] = p
                    dst[i] = o
                    i += 1
            self._edge_arrays = (src, pid, dst)
        return self._edge_arrays

    @property
    def entity_count(self) -> int:
        return len(self.entities)

    @property
    def predicate_count(self) -> int:
        return len(self.predicates)

    # -- construction ----------------------------------------------------

    @classmethod
    def from_labeled_triples(cls, rows, config: LoadConfig = LoadConfig()) -> "KnowledgeGraph":
        """Build a graph from (subject, predicate, object) label rows."""
        entities = Dictionary()
        predicates = Dictionary()
        triples: set[tuple[int, int, int]] = set()
        report = LoadReport()
        for s, p, o in rows:
            if config.lowercase_labels:
                s, p, o = s.lower(), p.lower(), o.lower()
            report.lines += 1
            key = (entities.intern(s), predicates.intern(p), entities.intern(o))
            if key in triples:
                report.duplicates += 1
            else:
                triples.add(key)
        report.triples = len(triples)
        return cls(entities, predicates, triples, report)


def load_tsv(path: str, config: LoadConfig = LoadConfig()) -> KnowledgeGraph:
    """Load and index a TSV triple corpus.

    Lines starting with '#' are skipped. A line with fewer than three
    tab-separated fields is counted as malformed; in strict mode it aborts
    the load with the offending line number.
    """
    entities = Dictionary()
    predicates = Dictionary()
    triples: set[tuple[int, int, int]] = set()
    report = LoadReport()
    try:
        handle = open(path, "r", encoding="utf-8")
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc}") from exc
    with handle:
        for lineno, line in enumerate(handle, start=1):
            line = line.rstrip("\n").rstrip("\r")
            if not line.strip():
                continue
            if line.startswith("#"):
                report.skipped_comments += 1
                continue
            report.lines += 1
            fields = line.split("\t")
            if len(fields) < 3 or any(not f for f in fields[:3]):
                if config.strict:
                    raise FormatError(f"malformed line {lineno}: {line!r}", lineno)
                report.malformed.append(lineno)
                continue
            s, p, o = fields[0], fields[1], fields[2]
            if config.lowercase_labels:
                s, p, o = s.lower(), p.lower(), o.lower()
            key = (entities.intern(s), predicates.intern(p), entities.intern(o))
            if key in triples:
                report.duplicates += 1
            else:
                triples.add(key)
    report.triples = len(triples)
    return KnowledgeGraph(entities, predicates, triples, report)
