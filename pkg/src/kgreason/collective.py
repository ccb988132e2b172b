"""Collective comparative reasoning over a whole query graph.

The query graph and its semantic matching subgraph are turned into two
line graphs: nodes are the query edges, adjacent when the edges share an
endpoint. In the query line graph an edge is weighted by the
predicate-predicate similarity of its endpoints; in the segment line
graph by the random-walk kernel similarity of the corresponding segments.
The squared Frobenius distance between the two weighted adjacencies is
the loss whose element-wise derivatives rank global key elements; pair
consistency then reuses the pairwise overlap and transfer machinery.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidQuery, MissingSegment, NoPath
from .kernel import (ElementInfluence, KernelConfig, KeySets, influence,
                     kernel_similarity, key_elements)
from .mining import PredicateSimilarityModel
from .pairwise import (SUBSUMES, OverlapRates, ReasoningParams, TransferResult,
                       _keys_to_json, overlap_rate, transferred_information)
from .segments import (KnowledgeSegment, SubgraphExtraction,
                       extract_subgraph_segment, segment_to_json)
from .store import KnowledgeGraph, QueryGraph


@dataclass
class LineGraphPair:
    """Weighted line-graph adjacencies of the query (h1) and of its
    semantic matching subgraph (h2), same node order (query edge index).

    h2 carries raw kernel values so that the loss derivative decomposes
    exactly through the pairwise influence formulas; h2_normalized is the
    cosine-style rescaling for display next to h1.
    """

    adjacency: np.ndarray
    h1: np.ndarray
    h2: np.ndarray
    h2_normalized: np.ndarray

    @property
    def loss(self) -> float:
        diff = self.h1 - self.h2
        return float((diff * diff).sum())

    def neighbors(self, n: int) -> list[int]:
        return [int(k) for k in np.flatnonzero(self.adjacency[n])]

    def to_json(self) -> dict:
        return {
            "adjacency": self.adjacency.tolist(),
            "h1": self.h1.tolist(),
            "h2": self.h2.tolist(),
            "h2Normalized": self.h2_normalized.tolist(),
            "loss": self.loss,
        }


def build_line_graphs(query: QueryGraph, segments: dict[int, KnowledgeSegment],
                      model: PredicateSimilarityModel,
                      cfg: KernelConfig = KernelConfig()) -> LineGraphPair:
    """Line graphs over the query edges; entries exist where two query
    edges share an endpoint."""
    m = len(query.edges)
    for idx in range(m):
        if idx not in segments:
            raise MissingSegment(f"no segment for query edge {idx}")
    adjacency = np.zeros((m, m))
    for n in range(m):
        en = query.edges[n]
        for k in range(n + 1, m):
            ek = query.edges[k]
            if {en.source, en.target} & {ek.source, ek.target}:
                adjacency[n, k] = adjacency[k, n] = 1.0
    h1 = np.zeros((m, m))
    h2 = np.zeros((m, m))
    self_kernel = {n: kernel_similarity(segments[n], segments[n], cfg) for n in range(m)}
    for n in range(m):
        for k in range(n + 1, m):
            if not adjacency[n, k]:
                continue
            h1[n, k] = h1[k, n] = model.similarity(query.edges[n].predicate,
                                                   query.edges[k].predicate)
            value = kernel_similarity(segments[n], segments[k], cfg)
            h2[n, k] = h2[k, n] = value
    h2n = np.zeros((m, m))
    for n in range(m):
        for k in range(m):
            if adjacency[n, k]:
                denom = np.sqrt(self_kernel[n] * self_kernel[k])
                h2n[n, k] = h2[n, k] / denom if denom > 0 else 0.0
    return LineGraphPair(adjacency, h1, h2, h2n)


def collective_influence(pair: LineGraphPair, query: QueryGraph,
                         segments: dict[int, KnowledgeSegment],
                         cfg: KernelConfig = KernelConfig(),
                         predicate_label=str) -> dict[int, ElementInfluence]:
    """Loss derivative for every segment element: the chain rule combines
    the line-graph residuals with the pairwise kernel derivatives,
    summing -2 (h1[n,k] - h2[n,k]) * d sim(KS_n, KS_k) / d element over
    the line-graph neighbors k of n."""
    out: dict[int, ElementInfluence] = {}
    m = len(query.edges)
    for n in range(m):
        acc = ElementInfluence()
        for k in pair.neighbors(n):
            residual = -2.0 * (pair.h1[n, k] - pair.h2[n, k])
            report = influence(segments[n], segments[k], cfg, predicate_label)
            side = report.first
            for key, val in side.edges.items():
                acc.edges[key] = acc.edges.get(key, 0.0) + residual * val
                acc.edge_labels[key] = side.edge_labels[key]
            for eid, val in side.nodes.items():
                acc.nodes[eid] = acc.nodes.get(eid, 0.0) + residual * val
                acc.node_labels[eid] = side.node_labels[eid]
            for label, val in side.attributes.items():
                acc.attributes[label] = acc.attributes.get(label, 0.0) + residual * val
        if not acc.nodes:
            # isolated line-graph node: zero influence over its own elements
            seg = segments[n]
            for eid, label in zip(seg.node_ids, seg.node_labels):
                acc.nodes[eid] = 0.0
                acc.node_labels[eid] = label
                acc.attributes[label] = 0.0
            for e in seg.edges:
                acc.edges[(e.source, e.predicate, e.target)] = 0.0
                acc.edge_labels[(e.source, e.predicate, e.target)] = (
                    seg.node_labels[seg.node_index(e.source)],
                    predicate_label(e.predicate),
                    seg.node_labels[seg.node_index(e.target)])
        out[n] = acc
    return out


@dataclass
class PairCheck:
    edge_a: int
    edge_b: int
    overlap: OverlapRates
    status: str                                   # below-overlap | subject-disjoint | checked
    subject_transfer: TransferResult | None = None
    object_transfer: TransferResult | None = None
    inconsistent: bool = False

    def to_json(self) -> dict:
        return {
            "edgeA": self.edge_a,
            "edgeB": self.edge_b,
            "overlap": self.overlap.to_json(),
            "status": self.status,
            "subjectTransfer": self.subject_transfer.to_json() if self.subject_transfer else None,
            "objectTransfer": self.object_transfer.to_json() if self.object_transfer else None,
            "inconsistent": self.inconsistent,
        }


@dataclass
class CollectiveVerdict:
    query: QueryGraph
    pairs_checked: list[PairCheck]
    inconsistent: bool
    line_graphs: LineGraphPair
    extraction: SubgraphExtraction
    collective_keys: dict[int, KeySets]
    pairwise_keys: dict[tuple[int, int], tuple[KeySets, KeySets]] = field(default_factory=dict)

    def to_json(self, graph: KnowledgeGraph) -> dict:
        return {
            "query": self.query.edge_triples(),
            "inconsistent": self.inconsistent,
            "pairsChecked": [p.to_json() for p in self.pairs_checked],
            "lineGraphs": self.line_graphs.to_json(),
            "evidence": {
                "segments": {
                    str(idx): segment_to_json(graph, seg, self.extraction.paths.get(idx))
                    for idx, seg in self.extraction.segments.items()
                },
                "merged": segment_to_json(graph, self.extraction.merged),
                "collectiveKeyElements": {
                    str(idx): _keys_to_json(keys) for idx, keys in self.collective_keys.items()
                },
            },
        }


def reason_collective(graph: KnowledgeGraph, model: PredicateSimilarityModel,
                      query: QueryGraph,
                      params: ReasoningParams = ReasoningParams()) -> CollectiveVerdict:
    """Extract per-edge segments, build the line graphs, rank global key
    elements by the loss derivative, then test every segment pair whose
    pairwise key-element overlap clears the threshold: the pair is skipped
    when neither subject subsumes the other, and flags collective
    inconsistency when the subjects relate but neither object does."""
    if len(query.edges) < 2:
        raise InvalidQuery("collective reasoning needs a query graph with at least 2 edges")
    extraction = extract_subgraph_segment(graph, model, query, params.segment_config())
    if extraction.failures:
        detail = "; ".join(f"edge {i}: {msg}" for i, msg in sorted(extraction.failures.items()))
        exc = NoPath(f"query edges without a connection subgraph: {detail}")
        exc.partial = {
            "failures": {str(i): msg for i, msg in extraction.failures.items()},
            "segments": {str(i): segment_to_json(graph, s) for i, s in extraction.segments.items()},
        }
        raise exc
    pair = build_line_graphs(query, extraction.segments, model, params.kernel)
    global_influence = collective_influence(pair, query, extraction.segments,
                                            params.kernel, graph.predicate_label)
    collective_keys = {n: key_elements(inf, params.key_fraction)
                       for n, inf in global_influence.items()}

    triples = query.edge_triples()
    checks: list[PairCheck] = []
    pairwise_keys: dict[tuple[int, int], tuple[KeySets, KeySets]] = {}
    inconsistent = False
    m = len(query.edges)
    for n in range(m):
        for k in range(n + 1, m):
            report = influence(extraction.segments[n], extraction.segments[k],
                               params.kernel, graph.predicate_label)
            keys_n = key_elements(report.first, params.key_fraction)
            keys_k = key_elements(report.second, params.key_fraction)
            pairwise_keys[(n, k)] = (keys_n, keys_k)
            rates = overlap_rate(keys_n, keys_k)
            if rates.mean < params.same_thing_threshold:
                checks.append(PairCheck(n, k, rates, "below-overlap"))
                continue
            s_n, _, o_n = triples[n]
            s_k, _, o_k = triples[k]
            subject = transferred_information(graph, model, s_n, s_k, params)
            if subject.verdict != SUBSUMES:
                checks.append(PairCheck(n, k, rates, "subject-disjoint",
                                        subject_transfer=subject))
                continue
            objects = transferred_information(graph, model, o_n, o_k, params)
            failed = objects.verdict != SUBSUMES
            checks.append(PairCheck(n, k, rates, "checked",
                                    subject_transfer=subject,
                                    object_transfer=objects,
                                    inconsistent=failed))
            inconsistent = inconsistent or failed
    return CollectiveVerdict(
        query=query,
        pairs_checked=checks,
        inconsistent=inconsistent,
        line_graphs=pair,
        extraction=extraction,
        collective_keys=collective_keys,
        pairwise_keys=pairwise_keys,
    )
