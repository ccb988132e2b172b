"""K shortest simple paths on a weighted directed view (Yen's method).

Paths are node-id sequences; the cost of a path is the sum of its edge
costs, accumulated left to right. Among equal-cost paths the
lexicographically smaller node sequence ranks first, which makes the
enumeration order a pure function of the adjacency, so results are
reproducible and comparable against brute-force enumeration.

The adjacency is stored in compressed sparse rows so graph-scale views
build with vectorized numpy passes; neighbor lists materialize lazily
because a search only ever touches a small fraction of the nodes.
"""

from __future__ import annotations

import heapq

import numpy as np


class CostGraph:
    """Directed adjacency with positive traversal costs, one entry per
    (u, v) pair: parallel edges collapse to the smallest (cost, tag).

    `tag` is opaque payload (the winning edge) ordered only to break
    exact cost ties deterministically.
    """

    __slots__ = ("_indptr", "_indices", "_costs", "_tag0", "_tag1", "_cache", "_n")

    def __init__(self, indptr, indices, costs, tag0, tag1):
        self._indptr = indptr
        self._indices = indices
        self._costs = costs
        self._tag0 = tag0
        self._tag1 = tag1
        self._cache: dict[int, list] = {}
        self._n = len(indptr) - 1

    @classmethod
    def from_arrays(cls, n_nodes: int, src, dst, cost, tag0, tag1) -> "CostGraph":
        """Collapse parallel (src, dst) rows keeping the minimum
        (cost, tag0, tag1) and index by source."""
        src = np.asarray(src, dtype=np.int64)
        dst = np.asarray(dst, dtype=np.int64)
        cost = np.asarray(cost, dtype=np.float64)
        tag0 = np.asarray(tag0, dtype=np.int64)
        tag1 = np.asarray(tag1, dtype=np.int64)
        order = np.lexsort((tag1, tag0, cost, dst, src))
        src, dst, cost = src[order], dst[order], cost[order]
        tag0, tag1 = tag0[order], tag1[order]
        if len(src):
            keep = np.empty(len(src), dtype=bool)
            keep[0] = True
            keep[1:] = (src[1:] != src[:-1]) | (dst[1:] != dst[:-1])
            src, dst, cost = src[keep], dst[keep], cost[keep]
            tag0, tag1 = tag0[keep], tag1[keep]
        indptr = np.zeros(n_nodes + 1, dtype=np.int64)
        np.add.at(indptr, src + 1, 1)
        np.cumsum(indptr, out=indptr)
        return cls(indptr, dst, cost, tag0, tag1)

    @staticmethod
    def collapse(edges) -> "CostGraph":
        """Build from python (u, v, cost, tag) rows; tag may be None or an
        (int, int) pair."""
        rows = list(edges)
        if not rows:
            return CostGraph.from_arrays(0, [], [], [], [], [])
        n = max(max(u, v) for u, v, _, _ in rows) + 1
        src = [u for u, _, _, _ in rows]
        dst = [v for _, v, _, _ in rows]
        cost = [c for _, _, c, _ in rows]
        tag0 = [t[0] if t else 0 for _, _, _, t in rows]
        tag1 = [t[1] if t else 0 for _, _, _, t in rows]
        return CostGraph.from_arrays(n, src, dst, cost, tag0, tag1)

    def neighbors(self, u: int):
        """Sorted (v, cost, (tag0, tag1)) entries for u."""
        if not (0 <= u < self._n):
            return ()
        bucket = self._cache.get(u)
        if bucket is None:
            lo, hi = self._indptr[u], self._indptr[u + 1]
            bucket = [
                (int(self._indices[i]), float(self._costs[i]),
                 (int(self._tag0[i]), int(self._tag1[i])))
                for i in range(lo, hi)
            ]
            self._cache[u] = bucket
        return bucket


def path_cost(graph: CostGraph, path: list[int]) -> float:
    """Canonical left-to-right cost accumulation."""
    total = 0.0
    for u, v in zip(path, path[1:]):
        for w, cost, _ in graph.neighbors(u):
            if w == v:
                total += cost
                break
        else:
            raise ValueError(f"edge {u}->{v} not in graph")
    return total


def _reconstruct(parent: dict[int, int], node: int) -> list[int]:
    out = [node]
    while node in parent:
        node = parent[node]
        out.append(node)
    out.reverse()
    return out


def dijkstra(graph: CostGraph, source: int, target: int,
             banned_nodes: set[int] | None = None,
             banned_edges: set[tuple[int, int]] | None = None) -> list[int] | None:
    """Shortest path by cost, lexicographically smallest on ties.

    Returns the node sequence or None when the target is unreachable.
    """
    banned_nodes = banned_nodes or set()
    banned_edges = banned_edges or set()
    if source in banned_nodes or target in banned_nodes:
        return None
    dist: dict[int, float] = {source: 0.0}
    parent: dict[int, int] = {}
    settled: set[int] = set()
    counter = 0
    heap: list[tuple[float, int, int]] = [(0.0, counter, source)]
    while heap:
        d, _, u = heapq.heappop(heap)
        if u in settled or d > dist.get(u, float("inf")):
            continue
        settled.add(u)
        if u == target:
            return _reconstruct(parent, target)
        for v, cost, _ in graph.neighbors(u):
            if v in settled or v in banned_nodes or (u, v) in banned_edges:
                continue
            nd = d + cost
            old = dist.get(v)
            if old is None or nd < old:
                dist[v] = nd
                parent[v] = u
                counter += 1
                heapq.heappush(heap, (nd, counter, v))
            elif nd == old:
                # tie: keep the lexicographically smaller path
                old_path = _reconstruct(parent, v)
                new_path = _reconstruct(parent, u) + [v]
                if new_path < old_path:
                    parent[v] = u
                    counter += 1
                    heapq.heappush(heap, (nd, counter, v))
    return None


def k_shortest_simple_paths(graph: CostGraph, source: int, target: int,
                            k: int) -> list[tuple[list[int], float]]:
    """Up to k simple paths ordered by (cost, node sequence).

    Yen's algorithm: each accepted path spawns spur candidates that ban
    the outgoing edges of previously accepted paths sharing the same root.
    """
    if k <= 0:
        return []
    first = dijkstra(graph, source, target)
    if first is None:
        return []
    accepted: list[tuple[float, list[int]]] = [(path_cost(graph, first), first)]
    candidates: list[tuple[float, list[int]]] = []
    seen = {tuple(first)}

    while len(accepted) < k:
        _, last = accepted[-1]
        for i in range(len(last) - 1):
            spur = last[i]
            root = last[: i + 1]
            banned_edges: set[tuple[int, int]] = set()
            for _, path in accepted:
                if len(path) > i and path[: i + 1] == root:
                    banned_edges.add((path[i], path[i + 1]))
            banned_nodes = set(root[:-1])
            spur_path = dijkstra(graph, spur, target, banned_nodes, banned_edges)
            if spur_path is None:
                continue
            total = root[:-1] + spur_path
            key = tuple(total)
            if key in seen:
                continue
            seen.add(key)
            heapq.heappush(candidates, (path_cost(graph, total), total))
        if not candidates:
            break
        accepted.append(heapq.heappop(candidates))
    return [(path, cost) for cost, path in accepted]


def all_simple_paths_bruteforce(graph: CostGraph, source: int, target: int,
                                limit: int | None = None) -> list[tuple[list[int], float]]:
    """Exhaustive simple-path enumeration, sorted by (cost, node sequence).

    Exponential; independent oracle for small graphs only.
    """
    results: list[tuple[float, list[int]]] = []
    path = [source]
    on_path = {source}

    def walk(u: int):
        if u == target:
            results.append((path_cost(graph, path), list(path)))
            return
        for v, _, _ in graph.neighbors(u):
            if v in on_path:
                continue
            path.append(v)
            on_path.add(v)
            walk(v)
            path.pop()
            on_path.discard(v)

    walk(source)
    results.sort(key=lambda item: (item[0], item[1]))
    if limit is not None:
        results = results[:limit]
    return [(p, c) for c, p in results]
