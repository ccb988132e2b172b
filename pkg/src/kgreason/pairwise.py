"""Pairwise comparative reasoning over two clue triples.

Three steps: classify the pair by endpoint equalities into one of six
cases; for the two cases where both clues hang off the same subject,
decide whether they describe the same thing by the overlap of the
segments' key elements; if they do, decide consistency by how much
information the type-predicate paths can transfer between the two objects.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources

from .errors import NoPath
from .kernel import (InfluenceReport, KernelConfig, KeySets, influence,
                     influence_to_json, key_elements)
from .kpaths import k_shortest_simple_paths
from .mining import PredicateSimilarityModel
from .segments import (ExtractionConfig, KnowledgeSegment, PathResult,
                       build_cost_graph, extract_edge_segment, segment_to_json)
from .store import KnowledgeGraph

CASES = ("C1", "C2", "C3", "C4", "C5", "C6")

CONSISTENT = "consistent"
INCONSISTENT = "inconsistent"
UNRELATED = "unrelated"

SUBSUMES = "subsumes"
DISJOINT = "disjoint"


@dataclass(frozen=True)
class ReasoningParams:
    key_fraction: float = 0.5
    same_thing_threshold: float = 0.6
    transfer_threshold: float = 0.700
    type_predicate: str = "isTypeOf"
    segment_k: int = 5
    transfer_k: int = 5
    segment_bidirectional: bool = False
    transfer_bidirectional: bool = True
    kernel: KernelConfig = KernelConfig()

    def segment_config(self) -> ExtractionConfig:
        return ExtractionConfig(k=self.segment_k, bidirectional=self.segment_bidirectional)


def classify_pair(t1: tuple[str, str, str], t2: tuple[str, str, str]) -> str:
    """Total classification by endpoint equalities, priority
    C2 > C4 > C3 > C5 > C6 > C1."""
    s1, p1, o1 = t1
    s2, p2, o2 = t2
    if s1 == s2 and o1 == o2:
        return "C2"
    if s1 == s2 and p1 == p2:
        return "C4"
    if s1 == s2:
        return "C3"
    if o1 == o2:
        return "C5"
    if o1 == s2 or o2 == s1:
        return "C6"
    return "C1"


def load_opposites() -> set[frozenset]:
    """Curated predicate antonym table shipped as an editable resource."""
    text = resources.files("kgreason.resources").joinpath("opposites.json").read_text("utf-8")
    return {frozenset(pair) for pair in json.loads(text)}


def opposite_predicate_check(p1: str, p2: str,
                             opposites: set[frozenset] | None = None) -> str:
    if p1 == p2:
        return CONSISTENT
    table = load_opposites() if opposites is None else opposites
    if frozenset((p1, p2)) in table:
        return INCONSISTENT
    return UNRELATED


# -- key-element overlap ------------------------------------------------------

@dataclass
class OverlapRates:
    attributes: float
    nodes: float
    edges: float

    @property
    def mean(self) -> float:
        return (self.attributes + self.nodes + self.edges) / 3.0

    def to_json(self) -> dict:
        return {"attributes": self.attributes, "nodes": self.nodes,
                "edges": self.edges, "mean": self.mean}


def _rate(a: set, b: set) -> float:
    if not a and not b:
        return 1.0
    if not a or not b:
        return 0.0
    return len(a & b) / min(len(a), len(b))


def overlap_rate(keys1: KeySets, keys2: KeySets) -> OverlapRates:
    """Per-category |K_a intersect K_b| / min(|K_a|, |K_b|), matched by
    label; the mean averages the three categories."""
    return OverlapRates(
        attributes=_rate(keys1.attribute_set, keys2.attribute_set),
        nodes=_rate(keys1.node_set, keys2.node_set),
        edges=_rate(keys1.edge_set, keys2.edge_set),
    )


# -- transferred information --------------------------------------------------

@dataclass
class TransferDirection:
    value: float
    paths: list[dict] = field(default_factory=list)
    error: str | None = None


@dataclass
class TransferResult:
    forward: TransferDirection
    backward: TransferDirection
    threshold: float

    @property
    def verdict(self) -> str:
        best = max(self.forward.value, self.backward.value)
        return SUBSUMES if best > self.threshold else DISJOINT

    def to_json(self) -> dict:
        return {
            "forward": {"value": self.forward.value, "paths": self.forward.paths,
                        "error": self.forward.error},
            "backward": {"value": self.backward.value, "paths": self.backward.paths,
                         "error": self.backward.error},
            "threshold": self.threshold,
            "verdict": self.verdict,
        }


def _directed_transfer(graph: KnowledgeGraph, model: PredicateSimilarityModel,
                       source_label: str, target_label: str,
                       params: ReasoningParams) -> TransferDirection:
    source = graph.require_entity(source_label)
    target = graph.require_entity(target_label)
    if source == target:
        return TransferDirection(1.0, [{"nodes": [source_label], "value": 1.0}])
    type_pred = params.type_predicate
    excluded = None
    pid = graph.resolve_predicate(type_pred)
    if pid is not None and graph.has_triple(source, pid, target):
        excluded = (source, pid, target)
    cost_graph = build_cost_graph(graph, model, type_pred,
                                  params.transfer_bidirectional, excluded)
    found = k_shortest_simple_paths(cost_graph, source, target, params.transfer_k)
    if not found:
        return TransferDirection(0.0, [], error="no-path")
    paths = []
    best = 0.0
    for path, _ in found:
        value = 1.0
        for u, v in zip(path, path[1:]):
            for w, cost, _ in cost_graph.neighbors(u):
                if w == v:
                    value *= 1.0 / cost
                    break
        paths.append({"nodes": [graph.entity_label(n) for n in path], "value": value})
        best = max(best, value)
    return TransferDirection(best, paths)


def transferred_information(graph: KnowledgeGraph, model: PredicateSimilarityModel,
                            from_label: str, to_label: str,
                            params: ReasoningParams = ReasoningParams()) -> TransferResult:
    """Maximum over the k cheapest type-predicate paths of the product of
    per-edge similarities, in both directions. A missing path transfers
    nothing; identical endpoints transfer everything."""
    return TransferResult(
        forward=_directed_transfer(graph, model, from_label, to_label, params),
        backward=_directed_transfer(graph, model, to_label, from_label, params),
        threshold=params.transfer_threshold,
    )


# -- the verdict ----------------------------------------------------------------

@dataclass
class PairwiseVerdict:
    case: str
    t1: tuple[str, str, str]
    t2: tuple[str, str, str]
    same_thing: bool
    consistent: bool | None
    predicate_check: str | None = None
    overlap: OverlapRates | None = None
    commonality: dict | None = None
    transfer: TransferResult | None = None
    segments: tuple[KnowledgeSegment, KnowledgeSegment] | None = None
    paths: tuple[PathResult, PathResult] | None = None
    influence_report: InfluenceReport | None = None
    key_sets: tuple[KeySets, KeySets] | None = None

    def to_json(self, graph: KnowledgeGraph) -> dict:
        doc = {
            "case": self.case,
            "t1": list(self.t1),
            "t2": list(self.t2),
            "sameThing": self.same_thing,
            "consistent": self.consistent,
            "predicateCheck": self.predicate_check,
            "overlapRate": self.overlap.to_json() if self.overlap else None,
            "commonality": self.commonality,
            "transfer": self.transfer.to_json() if self.transfer else None,
        }
        evidence: dict = {}
        if self.segments:
            evidence["segments"] = [
                segment_to_json(graph, seg, pr)
                for seg, pr in zip(self.segments, self.paths or (None, None))
            ]
        if self.influence_report:
            evidence["influence"] = influence_to_json(self.influence_report)
        if self.key_sets:
            evidence["keyElements"] = [_keys_to_json(k) for k in self.key_sets]
        doc["evidence"] = evidence
        return doc


def _keys_to_json(keys: KeySets) -> dict:
    return {
        "nodes": [{"element": label, "value": value} for label, value in keys.nodes],
        "edges": [{"element": list(label), "value": value} for label, value in keys.edges],
        "attributes": [{"element": label, "value": value} for label, value in keys.attributes],
    }


def segment_commonality(ks1: KnowledgeSegment, ks2: KnowledgeSegment,
                        graph: KnowledgeGraph,
                        t1: tuple[str, str, str], t2: tuple[str, str, str]) -> dict:
    """Shared nodes and edges of the segments and of the clues themselves."""
    nodes = set(ks1.node_labels) & set(ks2.node_labels)
    nodes |= {t1[0], t1[2]} & {t2[0], t2[2]}
    edges = set(ks1.edge_label_triples(graph)) & set(ks2.edge_label_triples(graph))
    if t1 == t2:
        edges.add(t1)
    return {"nodes": sorted(nodes), "edges": sorted(edges)}


def reason_pair(graph: KnowledgeGraph, model: PredicateSimilarityModel,
                t1: tuple[str, str, str], t2: tuple[str, str, str],
                params: ReasoningParams = ReasoningParams(),
                opposites: set[frozenset] | None = None) -> PairwiseVerdict:
    """Classify, decide same-thing by key-element overlap, decide
    consistency by transferred information between the objects.

    Cases C1, C5 and C6 describe different things, so no inconsistency
    check applies; C2 reduces to the predicate antonym check.
    """
    for label in (t1[0], t1[2], t2[0], t2[2]):
        graph.require_entity(label)
    case = classify_pair(t1, t2)
    if case == "C2":
        check = opposite_predicate_check(t1[1], t2[1], opposites)
        same = check in (CONSISTENT, INCONSISTENT)
        consistent = {CONSISTENT: True, INCONSISTENT: False, UNRELATED: None}[check]
        return PairwiseVerdict(case, t1, t2, same_thing=same, consistent=consistent,
                               predicate_check=check)
    if case in ("C1", "C5", "C6"):
        return PairwiseVerdict(case, t1, t2, same_thing=False, consistent=None)

    # C3 / C4: compare the segments' key elements
    config = params.segment_config()
    try:
        ks1, paths1 = extract_edge_segment(graph, model, t1, config)
    except NoPath as exc:
        exc.partial = {"failed": "t1", "clue": list(t1)}
        raise
    try:
        ks2, paths2 = extract_edge_segment(graph, model, t2, config)
    except NoPath as exc:
        exc.partial = {"failed": "t2", "clue": list(t2),
                       "segments": [segment_to_json(graph, ks1, paths1)]}
        raise
    report = influence(ks1, ks2, params.kernel, predicate_label=graph.predicate_label)
    keys1 = key_elements(report.first, params.key_fraction)
    keys2 = key_elements(report.second, params.key_fraction)
    rates = overlap_rate(keys1, keys2)
    same = rates.mean >= params.same_thing_threshold
    transfer = None
    consistent: bool | None = None
    if same:
        transfer = transferred_information(graph, model, t1[2], t2[2], params)
        consistent = transfer.verdict == SUBSUMES
    return PairwiseVerdict(
        case=case, t1=t1, t2=t2, same_thing=same, consistent=consistent,
        overlap=rates,
        commonality=segment_commonality(ks1, ks2, graph, t1, t2),
        transfer=transfer,
        segments=(ks1, ks2),
        paths=(paths1, paths2),
        influence_report=report,
        key_sets=(keys1, keys2),
    )
