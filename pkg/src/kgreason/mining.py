"""Offline mining: predicate entropy weights and TF-IDF predicate similarity.

Every predicate is treated as a random variable over per-node out-degrees:
a predicate held the same number of times by every holder has zero entropy
and maximal weight, a predicate with widely varying multiplicity carries
little specific meaning and is down-weighted. Predicate-predicate
similarity treats each triple plus its adjacent triples (sharing at least
one endpoint entity) as a document and applies a TF-IDF weighting to the
resulting co-occurrence matrix.

All logarithms are natural.
"""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .errors import UnknownPredicate
from .store import KnowledgeGraph

MODEL_FORMAT_VERSION = 1


@dataclass
class PredicateStats:
    predicate: int
    label: str
    degree_counts: dict[int, int]
    entropy: float
    weight: float


def _sigmoid(x: float) -> float:
    if x >= 0:
        return 1.0 / (1.0 + math.exp(-x))
    e = math.exp(x)
    return e / (1.0 + e)


def entropy_weight(entropy: float) -> float:
    """Importance weight 2*sigmoid(1/entropy) - 1, with the zero-entropy
    limit pinned to 1 (the formula's one-sided limit)."""
    if entropy < 0:
        raise ValueError("entropy must be nonnegative")
    if entropy == 0.0:
        return 1.0
    return 2.0 * _sigmoid(1.0 / entropy) - 1.0


def compute_predicate_stats(graph: KnowledgeGraph) -> dict[int, PredicateStats]:
    """Per-predicate out-degree histograms, entropy (nats) and weight."""
    holders: dict[int, Counter] = {p: Counter() for p in range(graph.predicate_count)}
    for eid in range(graph.entity_count):
        counts = Counter(p for p, _ in graph.out_adjacency[eid])
        for p, d in counts.items():
            holders[p][d] += 1
    stats: dict[int, PredicateStats] = {}
    for p, hist in holders.items():
        total = sum(hist.values())
        if total == 0:
            continue  # predicate appears only on in-edges of... impossible; appears >=1 time
        entropy = 0.0
        for d, count in hist.items():
            prob = count / total
            entropy -= prob * math.log(prob)
        entropy = max(entropy, 0.0)
        stats[p] = PredicateStats(
            predicate=p,
            label=graph.predicate_label(p),
            degree_counts=dict(sorted(hist.items())),
            entropy=entropy,
            weight=entropy_weight(entropy),
        )
    return stats


def compute_cooccurrence(graph: KnowledgeGraph) -> np.ndarray:
    """Symmetric predicate co-occurrence counts.

    C[i, j] counts unordered pairs of distinct triples that share at least
    one endpoint entity and carry predicates i and j; C[i, i] counts
    same-predicate adjacent pairs. Each triple pair is counted once even
    when it shares both endpoints.
    """
    m = graph.predicate_count
    c = np.zeros((m, m), dtype=np.int64)

    # Count pairs at every shared endpoint, then subtract the pairs that
    # share two endpoints (counted at both).
    incident: dict[int, Counter] = {}
    pair_groups: dict[frozenset, Counter] = {}
    for t in graph.triples():
        endpoints = {t.subject, t.object}
        for v in endpoints:
            incident.setdefault(v, Counter())[t.predicate] += 1
        if len(endpoints) == 2:
            pair_groups.setdefault(frozenset(endpoints), Counter())[t.predicate] += 1

    def accumulate(counter: Counter, sign: int):
        preds = sorted(counter)
        for a_idx, i in enumerate(preds):
            ni = counter[i]
            c[i, i] += sign * (ni * (ni - 1) // 2)
            for j in preds[a_idx + 1:]:
                c[i, j] += sign * ni * counter[j]
                c[j, i] += sign * ni * counter[j]

    for counter in incident.values():
        accumulate(counter, +1)
    for counter in pair_groups.values():
        accumulate(counter, -1)
    return c


@dataclass
class PredicateSimilarityModel:
    """TF-IDF-weighted co-occurrence and the cosine similarity it induces.

    The model keeps its own predicate dictionary: it is a superset of the
    graph's predicates when similarities are pinned by hand (query clues
    may use predicates that never occur in the corpus).
    """

    labels: list[str]
    similarity_matrix: np.ndarray
    cooccurrence: np.ndarray | None = None
    tfidf: np.ndarray | None = None
    idf: np.ndarray | None = None
    weights: dict[str, float] = field(default_factory=dict)
    entropy: dict[str, float] = field(default_factory=dict)
    degenerate: list[str] = field(default_factory=list)
    pinned: bool = False
    _index: dict[str, int] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._index = {label: i for i, label in enumerate(self.labels)}

    def predicate_index(self, label: str) -> int:
        idx = self._index.get(label)
        if idx is None:
            raise UnknownPredicate(f"unknown predicate: {label!r}")
        return idx

    def __contains__(self, label: str) -> bool:
        return label in self._index

    def similarity(self, p1: str, p2: str) -> float:
        return float(self.similarity_matrix[self.predicate_index(p1), self.predicate_index(p2)])

    @classmethod
    def from_pinned(cls, labels: list[str], entries: dict[tuple[str, str], float],
                    default: float = 0.0) -> "PredicateSimilarityModel":
        """Build a model from explicit similarity values (symmetrized,
        diagonal 1). Unlisted pairs fall back to `default`."""
        n = len(labels)
        sim = np.full((n, n), default, dtype=float)
        np.fill_diagonal(sim, 1.0)
        index = {label: i for i, label in enumerate(labels)}
        for (a, b), value in entries.items():
            ia, ib = index[a], index[b]
            sim[ia, ib] = value
            sim[ib, ia] = value
        return cls(labels=list(labels), similarity_matrix=sim, pinned=True)


def compute_similarity_model(graph: KnowledgeGraph,
                             stats: dict[int, PredicateStats],
                             cooccurrence: np.ndarray | None = None) -> PredicateSimilarityModel:
    """TF(i,j) = ln(1 + C(i,j) w(j)); IDF(j) = ln(M / |{i : C(i,j) > 0}|);
    U = TF * IDF; similarity = row-wise cosine of U.

    The document-frequency set {i : C(i,j) > 0} includes i = j, and M counts
    every predicate in the graph. Predicates whose U row is all zero are
    degenerate: their similarity to everything, themselves included, is 0.
    """
    m = graph.predicate_count
    c = compute_cooccurrence(graph) if cooccurrence is None else cooccurrence
    w = np.zeros(m)
    for p, st in stats.items():
        w[p] = st.weight
    tf = np.log1p(c * w[np.newaxis, :])
    df = (c > 0).sum(axis=0)
    idf = np.zeros(m)
    nonzero = df > 0
    idf[nonzero] = np.log(m / df[nonzero])
    u = tf * idf[np.newaxis, :]

    norms = np.linalg.norm(u, axis=1)
    sim = np.zeros((m, m))
    ok = norms > 0
    if ok.any():
        scaled = np.zeros_like(u)
        scaled[ok] = u[ok] / norms[ok, np.newaxis]
        sim = scaled @ scaled.T
        np.clip(sim, 0.0, 1.0, out=sim)
        sim[~ok, :] = 0.0
        sim[:, ~ok] = 0.0
        for i in np.flatnonzero(ok):
            sim[i, i] = 1.0
    labels = graph.predicates.labels()
    return PredicateSimilarityModel(
        labels=labels,
        similarity_matrix=sim,
        cooccurrence=c,
        tfidf=u,
        idf=idf,
        weights={labels[p]: st.weight for p, st in stats.items()},
        entropy={labels[p]: st.entropy for p, st in stats.items()},
        degenerate=[labels[i] for i in np.flatnonzero(~ok)],
    )


def mine(graph: KnowledgeGraph) -> PredicateSimilarityModel:
    """Full offline pass: stats, co-occurrence and the similarity model."""
    stats = compute_predicate_stats(graph)
    return compute_similarity_model(graph, stats)


# -- serialization --------------------------------------------------------

def _sparse_map(labels: list[str], matrix: np.ndarray) -> dict[str, dict[str, float]]:
    out: dict[str, dict[str, float]] = {}
    for i, li in enumerate(labels):
        row = {labels[j]: float(matrix[i, j]) for j in np.flatnonzero(matrix[i])}
        if row:
            out[li] = row
    return out


def model_to_json(model: PredicateSimilarityModel) -> dict:
    doc = {
        "format_version": MODEL_FORMAT_VERSION,
        "pinned": model.pinned,
        "predicates": list(model.labels),
        "similarity": _sparse_map(model.labels, model.similarity_matrix),
        "degenerate": list(model.degenerate),
    }
    if model.weights:
        doc["weights"] = model.weights
    if model.entropy:
        doc["entropy"] = model.entropy
    if model.cooccurrence is not None:
        doc["cooccurrence"] = _sparse_map(model.labels, model.cooccurrence)
    if model.idf is not None:
        doc["idf"] = {l: float(v) for l, v in zip(model.labels, model.idf)}
    return doc


def model_from_json(doc: dict) -> PredicateSimilarityModel:
    version = doc.get("format_version")
    if version != MODEL_FORMAT_VERSION:
        raise ValueError(f"unsupported model format version: {version!r}")
    labels = list(doc["predicates"])
    index = {label: i for i, label in enumerate(labels)}
    n = len(labels)
    sim = np.zeros((n, n))
    for a, row in doc.get("similarity", {}).items():
        for b, value in row.items():
            sim[index[a], index[b]] = value
    coocc = None
    if "cooccurrence" in doc:
        coocc = np.zeros((n, n))
        for a, row in doc["cooccurrence"].items():
            for b, value in row.items():
                coocc[index[a], index[b]] = value
    idf = None
    if "idf" in doc:
        idf = np.array([doc["idf"].get(l, 0.0) for l in labels])
    return PredicateSimilarityModel(
        labels=labels,
        similarity_matrix=sim,
        cooccurrence=coocc,
        idf=idf,
        weights=dict(doc.get("weights", {})),
        entropy=dict(doc.get("entropy", {})),
        degenerate=list(doc.get("degenerate", [])),
        pinned=bool(doc.get("pinned", False)),
    )


def save_model(model: PredicateSimilarityModel, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(model_to_json(model), fh, indent=1, sort_keys=True)
        fh.write("\n")


def load_model(path: str) -> PredicateSimilarityModel:
    with open(path, "r", encoding="utf-8") as fh:
        return model_from_json(json.load(fh))
