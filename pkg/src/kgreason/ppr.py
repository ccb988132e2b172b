"""Approximate personalized PageRank (push algorithm) and sweep cut.

Works on a weighted undirected view of the knowledge graph where each
triple contributes an edge weighted by its predicate's entropy weight.
The push algorithm maintains an approximation p and a residual r with the
contract r(v) <= eps * degree(v) for every v at termination; the sweep
orders nodes by p(v)/degree(v) and returns the prefix with minimum
weighted conductance.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field


@dataclass(frozen=True)
class NibbleParams:
    alpha: float = 0.15
    epsilon: float = 1e-5
    max_size: int = 50


@dataclass
class WeightedUndirectedView:
    """Adjacency with per-edge positive weights, symmetrized."""

    neighbors: list[dict[int, float]]
    degrees: list[float] = field(init=False)
    volume: float = field(init=False)

    def __post_init__(self):
        self.degrees = [sum(adj.values()) for adj in self.neighbors]
        self.volume = sum(self.degrees)

    @classmethod
    def from_graph(cls, graph, predicate_weight) -> "WeightedUndirectedView":
        """predicate_weight: predicate id -> positive weight. Parallel
        edges between the same pair accumulate."""
        neighbors: list[dict[int, float]] = [dict() for _ in range(graph.entity_count)]
        for t in graph.triples():
            w = predicate_weight(t.predicate)
            if w <= 0:
                continue
            if t.subject == t.object:
                neighbors[t.subject][t.subject] = neighbors[t.subject].get(t.subject, 0.0) + w
                continue
            neighbors[t.subject][t.object] = neighbors[t.subject].get(t.object, 0.0) + w
            neighbors[t.object][t.subject] = neighbors[t.object].get(t.subject, 0.0) + w
        return cls(neighbors)


def approximate_ppr(view: WeightedUndirectedView, seed: int, alpha: float,
                    epsilon: float) -> tuple[dict[int, float], dict[int, float]]:
    """Weighted push algorithm.

    Returns (p, r): the approximation and the final residual, with
    r[v] <= epsilon * degree(v) for all v.
    """
    p: dict[int, float] = {}
    r: dict[int, float] = {seed: 1.0}
    # queue of nodes that may violate the residual bound
    queue: list[int] = [seed]
    queued = {seed}
    while queue:
        u = queue.pop()
        queued.discard(u)
        deg = view.degrees[u]
        ru = r.get(u, 0.0)
        if deg <= 0 or ru <= epsilon * deg:
            continue
        p[u] = p.get(u, 0.0) + alpha * ru
        push_mass = (1.0 - alpha) * ru
        r[u] = push_mass / 2.0
        for v, w in view.neighbors[u].items():
            r[v] = r.get(v, 0.0) + push_mass * w / (2.0 * deg)
            if view.degrees[v] > 0 and r[v] > epsilon * view.degrees[v] and v not in queued:
                queue.append(v)
                queued.add(v)
        if r[u] > epsilon * deg and u not in queued:
            queue.append(u)
            queued.add(u)
    return p, r


def weighted_conductance(view: WeightedUndirectedView, node_set: set[int]) -> float:
    """Cut weight over the smaller side's volume; +inf for empty sides."""
    cut = 0.0
    vol = 0.0
    for u in node_set:
        vol += view.degrees[u]
        for v, w in view.neighbors[u].items():
            if v not in node_set:
                cut += w
    other = view.volume - vol
    denom = min(vol, other)
    if denom <= 1e-12 * max(view.volume, 1.0):
        return float("inf")
    return max(cut, 0.0) / denom


def sweep_cut(view: WeightedUndirectedView, p: dict[int, float],
              max_size: int) -> tuple[list[int], float]:
    """Order support nodes by p(v)/degree(v) and return the prefix with the
    minimum conductance among prefixes of size <= max_size.

    Ties in the score are broken by node id so the sweep is deterministic.
    """
    support = [v for v, mass in p.items() if mass > 0 and view.degrees[v] > 0]
    support.sort(key=lambda v: (-p[v] / view.degrees[v], v))
    best_set: list[int] = []
    best_cond = float("inf")
    prefix: set[int] = set()
    # incremental cut/volume maintenance
    cut = 0.0
    vol = 0.0
    for i, v in enumerate(support):
        if i >= max_size:
            break
        vol += view.degrees[v]
        for u, w in view.neighbors[v].items():
            if u == v:
                continue
            if u in prefix:
                cut -= w
            else:
                cut += w
        prefix.add(v)
        denom = min(vol, view.volume - vol)
        if denom <= 1e-12 * max(view.volume, 1.0):
            cond = float("inf")
        else:
            cond = max(cut, 0.0) / denom
        if cond < best_cond:
            best_cond = cond
            best_set = support[: i + 1]
    return best_set, best_cond


def pagerank_nibble(view: WeightedUndirectedView, seed: int,
                    params: NibbleParams) -> tuple[list[int], float, dict[int, float]]:
    """Run the push approximation from the seed and sweep for the best cut.

    Returns (node set, conductance, ppr vector). An isolated seed yields
    ([seed], inf, {}).
    """
    if view.degrees[seed] <= 0:
        return [seed], float("inf"), {}
    p, _ = approximate_ppr(view, seed, params.alpha, params.epsilon)
    if not p:
        return [seed], float("inf"), p
    nodes, cond = sweep_cut(view, p, params.max_size)
    if not nodes:
        return [seed], float("inf"), p
    if seed not in nodes:
        # keep the clue itself in its own context
        nodes = sorted(set(nodes) | {seed})
    return nodes, cond, p
