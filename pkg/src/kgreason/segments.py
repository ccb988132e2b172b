"""Knowledge segment extraction.

A knowledge segment is a small connection subgraph that captures the
semantic context of a clue. Three extractors live here:

- node clue: personalized-PageRank sweep on the entropy-weighted view,
  segment induced on the minimum-conductance prefix;
- edge clue: k simple shortest paths between subject and object where an
  edge's traversal cost is the reciprocal of the similarity between its
  predicate and the clue predicate, segment is the union of the paths;
- query-graph clue: one edge segment per query edge, merged with
  per-edge provenance.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import NoPath, UnknownEntity, UnknownPredicate
from .kpaths import CostGraph, k_shortest_simple_paths
from .mining import PredicateSimilarityModel, PredicateStats
from .ppr import NibbleParams, WeightedUndirectedView, pagerank_nibble
from .store import KnowledgeGraph, QueryGraph

DEFAULT_K = 5


@dataclass(frozen=True)
class SegmentEdge:
    source: int
    predicate: int
    target: int
    weight: float = 1.0


@dataclass
class KnowledgeSegment:
    """Attributed subgraph: ordered nodes, edges drawn from the base graph,
    one-hot entity-identity attributes.

    `node_labels[i]` doubles as the attribute carried by node i. Background
    nodes (see kernel module) reuse the same container with
    `background_from` marking the first background row.
    """

    node_ids: tuple[int, ...]
    node_labels: tuple[str, ...]
    edges: tuple[SegmentEdge, ...]
    provenance: dict = field(default_factory=dict)
    empty: bool = False
    background_from: int | None = None

    def __post_init__(self):
        self._index = {eid: i for i, eid in enumerate(self.node_ids)}

    @property
    def size(self) -> int:
        return len(self.node_ids)

    @property
    def original_size(self) -> int:
        return self.size if self.background_from is None else self.background_from

    def node_index(self, entity: int) -> int:
        return self._index[entity]

    def adjacency(self, symmetric: bool = True) -> np.ndarray:
        a = np.zeros((self.size, self.size))
        for e in self.edges:
            i, j = self._index[e.source], self._index[e.target]
            a[i, j] = 1.0
            if symmetric:
                a[j, i] = 1.0
        return a

    def attribute_matrix(self, vocabulary: list[str]) -> np.ndarray:
        """One-hot rows over the given attribute vocabulary."""
        column = {label: j for j, label in enumerate(vocabulary)}
        n = np.zeros((self.size, len(vocabulary)))
        for i, label in enumerate(self.node_labels):
            j = column.get(label)
            if j is not None:
                n[i, j] = 1.0
        return n

    def edge_label_triples(self, graph: KnowledgeGraph) -> list[tuple[str, str, str]]:
        return [
            (graph.entity_label(e.source), graph.predicate_label(e.predicate),
             graph.entity_label(e.target))
            for e in self.edges
        ]


@dataclass
class PathResult:
    """Paths as entity-id sequences with ascending canonical costs."""

    paths: list[list[int]]
    costs: list[float]

    def to_json(self, graph: KnowledgeGraph) -> list[dict]:
        return [
            {"nodes": [graph.entity_label(v) for v in path], "cost": cost}
            for path, cost in zip(self.paths, self.costs)
        ]


@dataclass(frozen=True)
class ExtractionConfig:
    k: int = DEFAULT_K
    bidirectional: bool = False
    exclude_clue_edge: bool = True


def _segment_from_nodes(graph: KnowledgeGraph, nodes: list[int], edges: list[SegmentEdge],
                        provenance: dict, empty: bool = False) -> KnowledgeSegment:
    ordered = tuple(sorted(set(nodes)))
    return KnowledgeSegment(
        node_ids=ordered,
        node_labels=tuple(graph.entity_label(v) for v in ordered),
        edges=tuple(sorted(set(edges), key=lambda e: (e.source, e.predicate, e.target))),
        provenance=provenance,
        empty=empty,
    )


# -- node-specific (f1) ----------------------------------------------------

def extract_node_segment(graph: KnowledgeGraph, stats: dict[int, PredicateStats],
                         seed: str | int, params: NibbleParams = NibbleParams(),
                         view: WeightedUndirectedView | None = None) -> KnowledgeSegment:
    """Local cluster around the seed on the entropy-weighted undirected view,
    induced on the minimum-conductance sweep prefix."""
    seed_id = graph.require_entity(seed) if isinstance(seed, str) else seed
    if not (0 <= seed_id < graph.entity_count):
        raise UnknownEntity(f"unknown entity id: {seed_id}")
    if view is None:
        weights = {p: st.weight for p, st in stats.items()}
        view = WeightedUndirectedView.from_graph(graph, lambda p: weights.get(p, 0.0))
    nodes, conductance, _ = pagerank_nibble(view, seed_id, params)
    chosen = set(nodes)
    edges = []
    weights_by_pred = {p: st.weight for p, st in stats.items()}
    for u in sorted(chosen):
        for p, v in graph.out_adjacency[u]:
            w = weights_by_pred.get(p, 0.0)
            if v in chosen and w > 0:
                edges.append(SegmentEdge(u, p, v, w))
    provenance = {
        "kind": "node",
        "seed": graph.entity_label(seed_id),
        "conductance": conductance,
    }
    empty = len(chosen) == 1 and not edges
    return _segment_from_nodes(graph, sorted(chosen), edges, provenance, empty=empty)


# -- edge-specific (f2) ----------------------------------------------------

def build_cost_graph(graph: KnowledgeGraph, model: PredicateSimilarityModel,
                     clue_predicate: str, bidirectional: bool,
                     excluded_triple: tuple[int, int, int] | None = None) -> CostGraph:
    """Directed view where traversing a triple costs 1/similarity(clue
    predicate, edge predicate); zero-similarity edges are untraversable.

    In bidirectional mode each triple is also traversable against its
    direction at the same cost. The tag records (reversed, predicate) so
    parallel-edge collapse prefers forward orientation, then smaller
    predicate id.
    """
    clue_idx = model.predicate_index(clue_predicate)
    sim_row = model.similarity_matrix[clue_idx]
    per_pred_cost = np.full(graph.predicate_count, np.inf)
    for p in range(graph.predicate_count):
        label = graph.predicate_label(p)
        if label in model:
            s = sim_row[model.predicate_index(label)]
            if s > 0:
                per_pred_cost[p] = 1.0 / float(s)

    src, pid, dst = graph.edge_arrays()
    cost = per_pred_cost[pid]
    mask = np.isfinite(cost)
    if excluded_triple is not None:
        s0, p0, o0 = excluded_triple
        mask &= ~((src == s0) & (pid == p0) & (dst == o0))
    src, pid, dst, cost = src[mask], pid[mask], dst[mask], cost[mask]
    forward = np.zeros(len(src), dtype=np.int64)
    if bidirectional:
        loop = src == dst
        r_src, r_dst = dst[~loop], src[~loop]
        r_pid, r_cost = pid[~loop], cost[~loop]
        src = np.concatenate([src, r_src])
        dst = np.concatenate([dst, r_dst])
        pid = np.concatenate([pid, r_pid])
        cost = np.concatenate([cost, r_cost])
        forward = np.concatenate([forward, np.ones(len(r_src), dtype=np.int64)])
    return CostGraph.from_arrays(graph.entity_count, src, dst, cost, forward, pid)


def _paths_to_segment(graph: KnowledgeGraph, model: PredicateSimilarityModel,
                      clue_predicate: str, cost_graph: CostGraph,
                      found: list[tuple[list[int], float]], provenance: dict) -> tuple[KnowledgeSegment, PathResult]:
    nodes: list[int] = []
    edges: list[SegmentEdge] = []
    clue_idx = model.predicate_index(clue_predicate)
    for path, _ in found:
        nodes.extend(path)
        for u, v in zip(path, path[1:]):
            for w, _, tag in cost_graph.neighbors(u):
                if w == v:
                    reversed_, pred = tag
                    src, dst = (v, u) if reversed_ else (u, v)
                    label = graph.predicate_label(pred)
                    sim = float(model.similarity_matrix[clue_idx, model.predicate_index(label)])
                    edges.append(SegmentEdge(src, pred, dst, sim))
                    break
    segment = _segment_from_nodes(graph, nodes, edges, provenance)
    return segment, PathResult([p for p, _ in found], [c for _, c in found])


def extract_edge_segment(graph: KnowledgeGraph, model: PredicateSimilarityModel,
                         clue: tuple[str, str, str],
                         config: ExtractionConfig = ExtractionConfig()) -> tuple[KnowledgeSegment, PathResult]:
    """Union of the k cheapest simple subject->object paths under the
    clue-predicate similarity costs.

    The clue triple itself, when present in the graph, is excluded from
    traversal: the segment should explain the claim, not restate it.
    """
    s_label, p_label, o_label = clue
    source = graph.require_entity(s_label)
    target = graph.require_entity(o_label)
    if p_label not in model:
        raise UnknownPredicate(f"unknown predicate: {p_label!r}")
    excluded = None
    if config.exclude_clue_edge:
        pid = graph.resolve_predicate(p_label)
        if pid is not None and graph.has_triple(source, pid, target):
            excluded = (source, pid, target)
    cost_graph = build_cost_graph(graph, model, p_label, config.bidirectional, excluded)
    found = k_shortest_simple_paths(cost_graph, source, target, config.k)
    if not found:
        raise NoPath(f"no path from {s_label!r} to {o_label!r} under clue predicate {p_label!r}")
    provenance = {"kind": "edge", "clue": list(clue)}
    return _paths_to_segment(graph, model, p_label, cost_graph, found, provenance)


# -- subgraph-specific (f3) -------------------------------------------------

@dataclass
class SubgraphExtraction:
    """Per-query-edge segments plus their merge. Edges that could not be
    connected are reported in `failures` instead of aborting the whole
    extraction."""

    segments: dict[int, KnowledgeSegment]
    paths: dict[int, PathResult]
    merged: KnowledgeSegment
    failures: dict[int, str]


def extract_subgraph_segment(graph: KnowledgeGraph, model: PredicateSimilarityModel,
                             query: QueryGraph,
                             config: ExtractionConfig = ExtractionConfig()) -> SubgraphExtraction:
    """One edge segment per query edge; the merged segment is their
    node/edge union with provenance preserved per query edge."""
    segments: dict[int, KnowledgeSegment] = {}
    paths: dict[int, PathResult] = {}
    failures: dict[int, str] = {}
    for label in query.nodes:
        graph.require_entity(label)
    all_nodes: list[int] = []
    all_edges: list[SegmentEdge] = []
    per_edge_provenance: dict[str, list[list[str]]] = {}
    for idx, (s, p, o) in enumerate(query.edge_triples()):
        try:
            seg, pr = extract_edge_segment(graph, model, (s, p, o), config)
        except NoPath as exc:
            failures[idx] = str(exc)
            continue
        seg.provenance["query_edge"] = idx
        segments[idx] = seg
        paths[idx] = pr
        all_nodes.extend(seg.node_ids)
        all_edges.extend(seg.edges)
        for e in seg.edges:
            key = f"{graph.entity_label(e.source)}|{graph.predicate_label(e.predicate)}|{graph.entity_label(e.target)}"
            per_edge_provenance.setdefault(key, []).append([str(idx), s, p, o])
    merged = _segment_from_nodes(
        graph, all_nodes, all_edges,
        {"kind": "subgraph", "query": query.edge_triples(), "edge_sources": per_edge_provenance},
    )
    return SubgraphExtraction(segments, paths, merged, failures)


# -- JSON rendering ---------------------------------------------------------

def segment_to_json(graph: KnowledgeGraph, segment: KnowledgeSegment,
                    paths: PathResult | None = None) -> dict:
    doc = {
        "nodes": [
            {"id": int(eid), "label": label, "attrs": [label]}
            for eid, label in zip(segment.node_ids, segment.node_labels)
        ],
        "edges": [
            {
                "src": graph.entity_label(e.source),
                "pred": graph.predicate_label(e.predicate),
                "dst": graph.entity_label(e.target),
                "weight": e.weight,
            }
            for e in segment.edges
        ],
        "provenance": segment.provenance,
        "empty": segment.empty,
    }
    if paths is not None:
        doc["paths"] = paths.to_json(graph)
    return doc
