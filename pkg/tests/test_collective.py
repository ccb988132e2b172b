"""Collective reasoning: line graphs, loss derivatives, pair checks."""

import numpy as np
import pytest

from kgreason.collective import (build_line_graphs, collective_influence,
                                 reason_collective)
from kgreason.errors import InvalidQuery, MissingSegment
from kgreason.fixtures import (iraq_collective_scenario, obama_collective_scenario,
                               obama_pairwise_scenario)
from kgreason.kernel import KernelConfig, kernel_similarity
from kgreason.mining import PredicateSimilarityModel
from kgreason.pairwise import ReasoningParams, reason_pair
from kgreason.segments import KnowledgeSegment, SegmentEdge
from kgreason.store import KnowledgeGraph, QueryGraph

from test_kernel import LABEL_POOL, make_segment, random_segment


def line_setup(rng, n_edges=3, seg_nodes=4):
    """Random query graph (path shaped, so consecutive edges share a node)
    with random segments attached."""
    nodes = tuple(f"q{i}" for i in range(n_edges + 1))
    triples = [(nodes[i], f"p{i % 2}", nodes[i + 1]) for i in range(n_edges)]
    query = QueryGraph.from_triples(triples)
    segments = {i: random_segment(rng, seg_nodes, LABEL_POOL, 100 * (i + 1))
                for i in range(n_edges)}
    labels = sorted({p for _, p, _ in triples} | {"isTypeOf"})
    entries = {}
    for a in labels:
        for b in labels:
            if a < b:
                entries[(a, b)] = float(rng.uniform(0.2, 0.9))
    model = PredicateSimilarityModel.from_pinned(labels, entries)
    return query, segments, model


class TestLineGraphs:
    def test_two_edge_path_closed_form(self, rng):
        query, segments, model = line_setup(rng, n_edges=2)
        cfg = KernelConfig()
        pair = build_line_graphs(query, segments, model, cfg)
        sim = model.similarity("p0", "p1")
        kernel = kernel_similarity(segments[0], segments[1], cfg)
        assert pair.h1[0, 1] == pytest.approx(sim)
        assert pair.h2[0, 1] == pytest.approx(kernel)
        assert pair.loss == pytest.approx(2 * (sim - kernel) ** 2, rel=1e-9)

    def test_identical_weights_zero_loss(self, rng):
        query, segments, model = line_setup(rng, n_edges=2)
        pair = build_line_graphs(query, segments, model, KernelConfig())
        pair.h2 = pair.h1.copy()
        assert pair.loss == 0.0

    def test_adjacency_from_shared_endpoints(self):
        query = QueryGraph.from_triples([
            ("a", "p", "b"), ("b", "q", "c"), ("x", "r", "y")])
        segments = {i: make_segment(["A", "B"], [(0, 1)], 10 * i) for i in range(3)}
        model = PredicateSimilarityModel.from_pinned(["p", "q", "r"], {})
        pair = build_line_graphs(query, segments, model, KernelConfig())
        assert pair.adjacency[0, 1] == 1.0
        assert pair.adjacency[0, 2] == 0.0
        assert pair.adjacency[1, 2] == 0.0

    def test_symmetry_and_permutation_invariant_loss(self, rng):
        query, segments, model = line_setup(rng, n_edges=3)
        pair = build_line_graphs(query, segments, model, KernelConfig())
        assert np.allclose(pair.h1, pair.h1.T)
        assert np.allclose(pair.h2, pair.h2.T)
        perm = np.array([2, 0, 1])
        h1p = pair.h1[np.ix_(perm, perm)]
        h2p = pair.h2[np.ix_(perm, perm)]
        assert float(((h1p - h2p) ** 2).sum()) == pytest.approx(pair.loss, rel=1e-12)

    def test_missing_segment(self, rng):
        query, segments, model = line_setup(rng, n_edges=2)
        del segments[1]
        with pytest.raises(MissingSegment):
            build_line_graphs(query, segments, model, KernelConfig())


class TestCollectiveInfluence:
    def test_isolated_line_node_all_zero(self, rng):
        query = QueryGraph.from_triples([("a", "p", "b"), ("x", "q", "y")])
        segments = {0: random_segment(rng, 3, LABEL_POOL, 10),
                    1: random_segment(rng, 3, LABEL_POOL, 50)}
        model = PredicateSimilarityModel.from_pinned(["p", "q"], {("p", "q"): 0.5})
        pair = build_line_graphs(query, segments, model, KernelConfig())
        influences = collective_influence(pair, query, segments, KernelConfig())
        for side in influences.values():
            assert all(v == 0.0 for v in side.nodes.values())
            assert all(v == 0.0 for v in side.edges.values())
            assert all(v == 0.0 for v in side.attributes.values())

    def test_zero_residual_zero_influence(self, rng):
        query, segments, model = line_setup(rng, n_edges=2)
        cfg = KernelConfig()
        pair = build_line_graphs(query, segments, model, cfg)
        pair.h1 = pair.h2.copy()  # force h_e == h_c
        influences = collective_influence(pair, query, segments, cfg)
        for side in influences.values():
            assert all(abs(v) < 1e-15 for v in side.edges.values())

    def test_matches_loss_finite_difference(self, rng):
        """Chain rule ≡ central difference of the pair loss under a
        symmetric edge perturbation of one segment.

        The influence values differentiate the loss summed over unordered
        line-graph edges; the reported Frobenius `loss` field counts both
        symmetric entries and is exactly twice this sum.
        """
        from kgreason.kernel import _maybe_augment, build_operator
        from test_influence import dense_similarity

        cfg = KernelConfig()
        checked = 0
        for _ in range(6):
            query, segments, model = line_setup(rng, n_edges=3, seg_nodes=3)
            pair = build_line_graphs(query, segments, model, cfg)
            influences = collective_influence(pair, query, segments, cfg,
                                              predicate_label=str)

            def loss_with(n, perturb):
                total = 0.0
                for i in range(3):
                    for j in range(i + 1, 3):
                        if not pair.adjacency[i, j]:
                            continue
                        a1k, a2k = _maybe_augment(segments[i], segments[j], cfg)
                        op, n1m, n2m = build_operator(a1k, a2k, cfg)
                        a1, a2 = op.a1.copy(), op.a2.copy()
                        if i == n:
                            perturb(a1, a1k)
                        if j == n:
                            perturb(a2, a2k)
                        value = dense_similarity(a1, a2, n1m, n2m, op.decay)
                        total += (pair.h1[i, j] - value) ** 2
                return total

            n = 1  # middle segment neighbors both others
            side = influences[n]
            for (src, _, dst), analytic in side.edges.items():
                h = 1e-5

                def perturbed(sign):
                    def apply(a, aug, src=src, dst=dst, sign=sign):
                        i1, j1 = aug.node_index(src), aug.node_index(dst)
                        a[i1, j1] += sign * h
                        a[j1, i1] += sign * h
                    return apply

                numeric = (loss_with(n, perturbed(+1)) - loss_with(n, perturbed(-1))) / (2 * h)
                if abs(numeric) < 1e-10 and abs(analytic) < 1e-10:
                    continue
                rel = abs(analytic - numeric) / max(abs(analytic), abs(numeric))
                assert rel < 1e-4, (analytic, numeric)
                checked += 1
        assert checked > 5

    def test_structural_identity_with_pairwise_influence(self, rng):
        """Collective values decompose as -2 * residual * pairwise derivative
        summed over line-graph neighbors."""
        from kgreason.kernel import influence as pairwise_influence

        cfg = KernelConfig()
        query, segments, model = line_setup(rng, n_edges=3, seg_nodes=3)
        pair = build_line_graphs(query, segments, model, cfg)
        influences = collective_influence(pair, query, segments, cfg)
        n = 1
        expected = {}
        for k in pair.neighbors(n):
            residual = -2.0 * (pair.h1[n, k] - pair.h2[n, k])
            rep = pairwise_influence(segments[n], segments[k], cfg)
            for key, val in rep.first.edges.items():
                expected[key] = expected.get(key, 0.0) + residual * val
        for key, val in influences[n].edges.items():
            assert val == pytest.approx(expected[key], rel=1e-9, abs=1e-15)


class TestReasonCollective:
    def test_requires_two_edges(self):
        s = obama_collective_scenario()
        single = QueryGraph.from_triples([("Barack Obama", "wasBornIn", "Honolulu")])
        with pytest.raises(InvalidQuery):
            reason_collective(s.graph, s.model, single, s.params)

    def test_consistent_birthplace_chain(self):
        s = obama_collective_scenario()
        verdict = reason_collective(s.graph, s.model, s.query, s.params)
        assert verdict.inconsistent is False
        checked = [p for p in verdict.pairs_checked if p.status == "checked"]
        for p in checked:
            assert p.object_transfer.verdict == "subsumes"

    def test_all_pairs_reported(self):
        s = iraq_collective_scenario()
        verdict = reason_collective(s.graph, s.model, s.query, s.params)
        assert len(verdict.pairs_checked) == 3
        assert {(p.edge_a, p.edge_b) for p in verdict.pairs_checked} == {(0, 1), (0, 2), (1, 2)}

    def test_two_edge_query_agrees_with_pairwise_decision(self):
        """A 2-edge query sharing a subject must reach the pairwise verdict."""
        s = obama_collective_scenario()
        query = QueryGraph.from_triples([
            ("Barack Obama", "wasBornIn", "Honolulu"),
            ("Barack Obama", "wasBornIn", "Hawaii")])
        collective = reason_collective(s.graph, s.model, query, s.params)
        pairwise = reason_pair(s.graph, s.model, query.edge_triples()[0],
                               query.edge_triples()[1], s.params)
        assert pairwise.case == "C4"
        assert collective.inconsistent == (pairwise.consistent is False)

    def test_verdict_json_shape(self):
        s = iraq_collective_scenario()
        verdict = reason_collective(s.graph, s.model, s.query, s.params)
        doc = verdict.to_json(s.graph)
        assert doc["inconsistent"] is True
        assert len(doc["pairsChecked"]) == 3
        assert "lineGraphs" in doc and "h2Normalized" in doc["lineGraphs"]
        assert set(doc["evidence"]["segments"]) == {"0", "1", "2"}


class TestInconsistencyWalkthrough:
    """Three claims that are pairwise innocuous but collectively wrong."""

    def setup_method(self):
        s = iraq_collective_scenario()
        self.verdict = reason_collective(s.graph, s.model, s.query, s.params)

    def test_only_the_first_and_third_claims_gate(self):
        by_pair = {(p.edge_a, p.edge_b): p for p in self.verdict.pairs_checked}
        assert by_pair[(0, 1)].status == "below-overlap"
        assert by_pair[(1, 2)].status == "below-overlap"
        assert by_pair[(0, 2)].status == "checked"

    def test_gated_pair_overlap(self):
        check = next(p for p in self.verdict.pairs_checked if p.status == "checked")
        assert check.overlap.mean == pytest.approx(7 / 9)
        assert sorted([check.overlap.attributes, check.overlap.nodes,
                       check.overlap.edges]) == pytest.approx([2 / 3, 2 / 3, 1.0])

    def test_subjects_relate_objects_do_not(self):
        check = next(p for p in self.verdict.pairs_checked if p.status == "checked")
        subj = max(check.subject_transfer.forward.value,
                   check.subject_transfer.backward.value)
        assert subj == pytest.approx(0.870, abs=1e-9)
        obj = max(check.object_transfer.forward.value,
                  check.object_transfer.backward.value)
        assert obj == pytest.approx(0.767 * 0.870 ** 3, abs=1e-12)
        assert check.object_transfer.verdict == "disjoint"

    def test_collective_inconsistency(self):
        assert self.verdict.inconsistent is True
