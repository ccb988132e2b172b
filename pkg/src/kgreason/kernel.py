"""Node-attributed random-walk kernel between two segments and the
closed-form influence of edges, nodes and node attributes.

The kernel is q' (I - c N A)^(-1) N p over the Kronecker product of the
two segments: A = A1 (x) A2 and N = sum_j diag(N1[:,j]) (x) diag(N2[:,j]),
which under one-hot attributes is the diagonal indicator of label-matched
node pairs. The product matrices are never materialized: every
matrix-vector product uses the reshape identity
(A1 (x) A2) vec(X) = vec(A1 X A2').

Influence values are the analytic derivatives of the kernel similarity
with respect to a symmetric edge pair, a node (sum over incident pairs)
or a single node-attribute entry. An element present in only one segment
would have zero influence, so both segments are first augmented with a
fully connected background component carrying every label of the node
union; background elements are excluded from reports.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import ceil

import numpy as np

from .errors import SingularSystem
from .segments import KnowledgeSegment, SegmentEdge


@dataclass(frozen=True)
class KernelConfig:
    decay: float | None = None        # None: 0.9 / spectral upper bound
    background: bool = True
    symmetric_adjacency: bool = True
    tolerance: float = 1e-10
    max_iterations: int = 10_000
    dense_cutoff: int = 64            # dense oracle refuses above this dim


BACKGROUND_EDGE_PREDICATE = -1


def augment_with_background(ks1: KnowledgeSegment,
                            ks2: KnowledgeSegment) -> tuple[KnowledgeSegment, KnowledgeSegment]:
    """Append to each segment a disjoint clique over the union of both
    segments' labels; each background node mirrors one label."""
    union = sorted(set(ks1.node_labels) | set(ks2.node_labels))

    def extend(ks: KnowledgeSegment) -> KnowledgeSegment:
        bg_ids = tuple(-(i + 1) for i in range(len(union)))
        bg_edges = []
        for i in range(len(union)):
            for j in range(i + 1, len(union)):
                bg_edges.append(SegmentEdge(bg_ids[i], BACKGROUND_EDGE_PREDICATE, bg_ids[j]))
        return KnowledgeSegment(
            node_ids=ks.node_ids + bg_ids,
            node_labels=ks.node_labels + tuple(union),
            edges=ks.edges + tuple(bg_edges),
            provenance=dict(ks.provenance),
            empty=ks.empty,
            background_from=ks.size,
        )

    return extend(ks1), extend(ks2)


def _maybe_augment(ks1: KnowledgeSegment, ks2: KnowledgeSegment, cfg: KernelConfig):
    if cfg.background and ks1.background_from is None and ks2.background_from is None:
        return augment_with_background(ks1, ks2)
    return ks1, ks2


@dataclass
class ProductOperator:
    """Implicit resolvent machinery for one segment pair."""

    a1: np.ndarray
    a2: np.ndarray
    match: np.ndarray          # n1 x n2 attribute-match weights (the N diagonal)
    decay: float
    spectral_bound: float
    tolerance: float
    max_iterations: int

    @property
    def shape(self) -> tuple[int, int]:
        return self.a1.shape[0], self.a2.shape[0]

    def adjacency_apply(self, x: np.ndarray) -> np.ndarray:
        return self.a1 @ x @ self.a2.T

    def adjacency_apply_t(self, x: np.ndarray) -> np.ndarray:
        return self.a1.T @ x @ self.a2

    def solve_right(self, b: np.ndarray) -> np.ndarray:
        """x = (I - c N A)^(-1) b by fixed-point iteration."""
        return self._solve(b, lambda x: self.match * self.adjacency_apply(x))

    def solve_left(self, b: np.ndarray) -> np.ndarray:
        """x = (I - c (N A)')^(-1) b, the transpose system."""
        return self._solve(b, lambda x: self.adjacency_apply_t(self.match * x))

    def _solve(self, b: np.ndarray, step) -> np.ndarray:
        x = b.copy()
        for _ in range(self.max_iterations):
            nxt = b + self.decay * step(x)
            delta = float(np.abs(nxt - x).max())
            x = nxt
            if delta <= self.tolerance:
                return x
        raise SingularSystem(
            f"kernel solve did not converge (decay={self.decay}, "
            f"spectral bound={self.spectral_bound})",
            spectral_bound=self.spectral_bound,
        )


def build_operator(ks1: KnowledgeSegment, ks2: KnowledgeSegment,
                   cfg: KernelConfig = KernelConfig()) -> tuple[ProductOperator, np.ndarray, np.ndarray]:
    """Operator plus the aligned attribute matrices (n1, n2 over the union
    vocabulary). Segments are used as given: augment first if wanted."""
    vocabulary = sorted(set(ks1.node_labels) | set(ks2.node_labels))
    a1 = ks1.adjacency(symmetric=cfg.symmetric_adjacency)
    a2 = ks2.adjacency(symmetric=cfg.symmetric_adjacency)
    n1 = ks1.attribute_matrix(vocabulary)
    n2 = ks2.attribute_matrix(vocabulary)
    match = n1 @ n2.T
    bound = 0.0
    if match.size:
        bound = float((match * np.outer(a1.sum(axis=1), a2.sum(axis=1))).max())
    decay = cfg.decay
    if decay is None:
        decay = min(0.9 / bound, 0.99) if bound > 0 else 0.5
    op = ProductOperator(a1, a2, match, decay, bound, cfg.tolerance, cfg.max_iterations)
    return op, n1, n2


def kernel_similarity(ks1: KnowledgeSegment, ks2: KnowledgeSegment,
                      cfg: KernelConfig = KernelConfig()) -> float:
    """Random-walk similarity with uniform start/stop distributions."""
    ks1, ks2 = _maybe_augment(ks1, ks2, cfg)
    op, _, _ = build_operator(ks1, ks2, cfg)
    n1, n2 = op.shape
    p = np.full((n1, n2), 1.0 / (n1 * n2))
    right = op.solve_right(op.match * p)
    return float(right.sum() / (n1 * n2))


def kernel_similarity_dense(ks1: KnowledgeSegment, ks2: KnowledgeSegment,
                            cfg: KernelConfig = KernelConfig()) -> float:
    """Direct evaluation materializing the Kronecker product. Test oracle;
    refuses product dimensions above cfg.dense_cutoff squared."""
    ks1, ks2 = _maybe_augment(ks1, ks2, cfg)
    op, n1m, n2m = build_operator(ks1, ks2, cfg)
    n1, n2 = op.shape
    dim = n1 * n2
    if dim > cfg.dense_cutoff * cfg.dense_cutoff:
        raise ValueError(f"dense evaluation refused for product dimension {dim}")
    a = np.kron(op.a1, op.a2)
    nmat = np.zeros((dim, dim))
    for j in range(n1m.shape[1]):
        nmat += np.kron(np.diag(n1m[:, j]), np.diag(n2m[:, j]))
    q = np.full(dim, 1.0 / dim)
    p = np.full(dim, 1.0 / dim)
    resolvent = np.linalg.inv(np.eye(dim) - op.decay * nmat @ a)
    return float(q @ resolvent @ nmat @ p)


# -- influence --------------------------------------------------------------

@dataclass
class ElementInfluence:
    """Influence of one segment's original elements, keyed by entity/triple
    ids with label lookups kept alongside for cross-segment matching."""

    edges: dict[tuple[int, int, int], float] = field(default_factory=dict)
    nodes: dict[int, float] = field(default_factory=dict)
    attributes: dict[str, float] = field(default_factory=dict)
    edge_labels: dict[tuple[int, int, int], tuple[str, str, str]] = field(default_factory=dict)
    node_labels: dict[int, str] = field(default_factory=dict)


@dataclass
class InfluenceReport:
    first: ElementInfluence
    second: ElementInfluence
    similarity: float
    decay: float


def influence(ks1: KnowledgeSegment, ks2: KnowledgeSegment,
              cfg: KernelConfig = KernelConfig(),
              predicate_label=str) -> InfluenceReport:
    """All three influence kinds for both segments, from one left and one
    right resolvent solve.

    With left = reshape(Q'q), right = reshape(Q N p), v = p + c A right and
    ln = N o left (elementwise diagonal product):
      edge (i,j) in segment 1:   c (<ln[i,:], (R A2')[j,:]> + transpose term)
      edge (i,j) in segment 2:   c (<ln[:,i], (A1 R)[:,j]> + transpose term)
      node i: sum of pair influences over the node's adjacency row
      attribute (i, l) in 1:     <left[i,:] * v[i,:], N2[:, col(l)]>
      attribute (i, l) in 2:     <left[:,i] * v[:,i], N1[:, col(l)]>
    """
    ks1, ks2 = _maybe_augment(ks1, ks2, cfg)
    op, n1m, n2m = build_operator(ks1, ks2, cfg)
    n1, n2 = op.shape
    vocabulary = sorted(set(ks1.node_labels) | set(ks2.node_labels))
    colindex = {label: j for j, label in enumerate(vocabulary)}

    p = np.full((n1, n2), 1.0 / (n1 * n2))
    q = np.full((n1, n2), 1.0 / (n1 * n2))
    right = op.solve_right(op.match * p)
    left = op.solve_left(q)
    similarity = float((q * right).sum())
    v = p + op.decay * op.adjacency_apply(right)
    ln = op.match * left
    w = left * v

    # pairwise edge-influence matrices for both sides
    ra2 = right @ op.a2.T
    pair1 = op.decay * (ln @ ra2.T)
    edge_inf1 = pair1 + pair1.T
    a1r = op.a1 @ right
    pair2 = op.decay * (ln.T @ a1r)
    edge_inf2 = pair2 + pair2.T
    attr1 = w @ n2m            # n1 x |vocabulary|
    attr2 = w.T @ n1m          # n2 x |vocabulary|

    def one_side(ks_aug: KnowledgeSegment, edge_inf: np.ndarray,
                 attr: np.ndarray, adjacency: np.ndarray) -> ElementInfluence:
        out = ElementInfluence()
        limit = ks_aug.original_size
        for e in ks_aug.edges:
            i, j = ks_aug.node_index(e.source), ks_aug.node_index(e.target)
            if i >= limit or j >= limit:
                continue
            out.edges[(e.source, e.predicate, e.target)] = float(edge_inf[i, j])
            out.edge_labels[(e.source, e.predicate, e.target)] = (
                ks_aug.node_labels[i], predicate_label(e.predicate), ks_aug.node_labels[j])
        for i in range(limit):
            eid = ks_aug.node_ids[i]
            label = ks_aug.node_labels[i]
            out.nodes[eid] = float((adjacency[i] * edge_inf[i]).sum())
            out.node_labels[eid] = label
            out.attributes[label] = float(attr[i, colindex[label]])
        return out

    report = InfluenceReport(
        first=one_side(ks1, edge_inf1, attr1, op.a1),
        second=one_side(ks2, edge_inf2, attr2, op.a2),
        similarity=similarity,
        decay=op.decay,
    )
    return report


# -- key elements -------------------------------------------------------------

@dataclass
class KeySets:
    """Top elements per category, by absolute influence; ties break on label."""

    nodes: list[tuple[str, float]]
    edges: list[tuple[tuple[str, str, str], float]]
    attributes: list[tuple[str, float]]

    @property
    def node_set(self) -> set[str]:
        return {label for label, _ in self.nodes}

    @property
    def edge_set(self) -> set[tuple[str, str, str]]:
        return {label for label, _ in self.edges}

    @property
    def attribute_set(self) -> set[str]:
        return {label for label, _ in self.attributes}


def _top(items: list[tuple], count: int) -> list[tuple]:
    ranked = sorted(items, key=lambda kv: (-abs(kv[1]), kv[0]))
    return ranked[:count]


def key_elements(side: ElementInfluence, fraction: float = 0.5) -> KeySets:
    """The ceil(fraction * n) elements of largest absolute influence in each
    category. Background elements never reach the report, so no further
    exclusion is needed here."""
    nodes = [(side.node_labels[eid], val) for eid, val in side.nodes.items()]
    edges = [(side.edge_labels[key], val) for key, val in side.edges.items()]
    attributes = list(side.attributes.items())
    return KeySets(
        nodes=_top(nodes, ceil(fraction * len(nodes))) if nodes else [],
        edges=_top(edges, ceil(fraction * len(edges))) if edges else [],
        attributes=_top(attributes, ceil(fraction * len(attributes))) if attributes else [],
    )


def influence_to_json(report: InfluenceReport) -> dict:
    def side(el: ElementInfluence) -> dict:
        return {
            "attributes": [
                {"element": label, "value": value}
                for label, value in sorted(el.attributes.items(), key=lambda kv: (-abs(kv[1]), kv[0]))
            ],
            "nodes": [
                {"element": el.node_labels[eid], "value": value}
                for eid, value in sorted(el.nodes.items(), key=lambda kv: (-abs(kv[1]), el.node_labels[kv[0]]))
            ],
            "edges": [
                {"element": list(el.edge_labels[key]), "value": value}
                for key, value in sorted(el.edges.items(), key=lambda kv: (-abs(kv[1]), el.edge_labels[kv[0]]))
            ],
        }

    return {
        "similarity": report.similarity,
        "decay": report.decay,
        "first": side(report.first),
        "second": side(report.second),
    }
