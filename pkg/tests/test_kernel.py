"""Random-walk kernel: closed forms, dense oracle, background graph."""

import numpy as np
import pytest

from kgreason.errors import SingularSystem
from kgreason.kernel import (KernelConfig, augment_with_background,
                             build_operator, influence, kernel_similarity,
                             kernel_similarity_dense, key_elements)
from kgreason.segments import KnowledgeSegment, SegmentEdge


def make_segment(labels, edge_pairs, base_id=0, predicate=7):
    ids = tuple(base_id + i for i in range(len(labels)))
    edges = tuple(SegmentEdge(ids[i], predicate, ids[j]) for i, j in edge_pairs)
    return KnowledgeSegment(node_ids=ids, node_labels=tuple(labels), edges=edges)


def random_segment(rng, n, label_pool, base_id, p_edge=0.5):
    labels = list(rng.choice(label_pool, size=n, replace=False))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p_edge]
    return make_segment(labels, pairs, base_id)


LABEL_POOL = [f"L{i}" for i in range(9)]


class TestClosedForms:
    def test_identical_single_nodes(self):
        ks1 = make_segment(["X"], [], 0)
        ks2 = make_segment(["X"], [], 10)
        cfg = KernelConfig(background=False)
        assert kernel_similarity(ks1, ks2, cfg) == pytest.approx(1.0, abs=1e-12)

    def test_disjoint_single_nodes(self):
        ks1 = make_segment(["X"], [], 0)
        ks2 = make_segment(["Y"], [], 10)
        cfg = KernelConfig(background=False)
        assert kernel_similarity(ks1, ks2, cfg) == pytest.approx(0.0, abs=1e-12)

    def test_decay_to_zero_limit(self, rng):
        """As the decay vanishes the kernel approaches q' N p."""
        ks1 = random_segment(rng, 3, LABEL_POOL, 0)
        ks2 = random_segment(rng, 4, LABEL_POOL, 100)
        cfg0 = KernelConfig(background=False, decay=1e-12)
        op, _, _ = build_operator(ks1, ks2, KernelConfig(background=False))
        n1, n2 = op.shape
        expected = op.match.sum() / (n1 * n2) ** 2
        assert kernel_similarity(ks1, ks2, cfg0) == pytest.approx(expected, rel=1e-6)


class TestDenseOracle:
    def test_matches_dense_on_random_pairs(self, rng):
        for trial in range(60):
            ks1 = random_segment(rng, int(rng.integers(2, 6)), LABEL_POOL, 0)
            ks2 = random_segment(rng, int(rng.integers(2, 6)), LABEL_POOL, 100)
            cfg = KernelConfig(background=bool(trial % 2),
                               decay=0.1 if trial % 3 == 0 else None)
            s_iter = kernel_similarity(ks1, ks2, cfg)
            s_dense = kernel_similarity_dense(ks1, ks2, cfg)
            assert s_iter == pytest.approx(s_dense, abs=1e-9)

    def test_symmetry(self, rng):
        for _ in range(30):
            ks1 = random_segment(rng, int(rng.integers(2, 6)), LABEL_POOL, 0)
            ks2 = random_segment(rng, int(rng.integers(2, 6)), LABEL_POOL, 100)
            a = kernel_similarity(ks1, ks2)
            b = kernel_similarity(ks2, ks1)
            assert a == pytest.approx(b, abs=1e-9)

    def test_singular_system_reported(self):
        ks1 = make_segment(["X", "Y"], [(0, 1)], 0)
        ks2 = make_segment(["X", "Y"], [(0, 1)], 10)
        cfg = KernelConfig(background=False, decay=50.0, max_iterations=50)
        with pytest.raises(SingularSystem) as err:
            kernel_similarity(ks1, ks2, cfg)
        assert err.value.spectral_bound is not None


class TestBackground:
    def test_construction(self):
        ks1 = make_segment(["A", "B"], [(0, 1)], 0)
        ks2 = make_segment(["B", "C", "D"], [(0, 1), (1, 2)], 10)
        a1, a2 = augment_with_background(ks1, ks2)
        union = 4
        assert a1.size == 2 + union
        assert a2.size == 3 + union
        assert a1.background_from == 2
        assert sorted(a1.node_labels[2:]) == ["A", "B", "C", "D"]
        # background is a clique ...
        bg_edges = [e for e in a1.edges if e.source < 0 and e.target < 0]
        assert len(bg_edges) == union * (union - 1) // 2
        # ... and disconnected from the originals
        assert not any((e.source < 0) != (e.target < 0) for e in a1.edges)

    def test_unique_element_gains_influence_via_background(self):
        """'C' appears only in ks1: with the background its attribute still
        matches something on the other side, so its influence is nonzero."""
        ks1 = make_segment(["A", "B", "C"], [(0, 1), (1, 2)], 0)
        ks2 = make_segment(["A", "B"], [(0, 1)], 10)
        with_bg = influence(ks1, ks2, KernelConfig(background=True))
        without = influence(ks1, ks2, KernelConfig(background=False))
        assert without.first.attributes["C"] == pytest.approx(0.0, abs=1e-15)
        assert with_bg.first.attributes["C"] > 0.0


class TestKeyElements:
    def test_ceiling_counts(self):
        from kgreason.kernel import ElementInfluence
        el = ElementInfluence(
            nodes={i: float(i) for i in range(7)},
            node_labels={i: f"n{i}" for i in range(7)},
            attributes={f"a{i}": float(i) for i in range(7)},
        )
        keys = key_elements(el, fraction=0.5)
        assert len(keys.attributes) == 4  # ceil(3.5)
        assert len(keys.nodes) == 4
        el6 = ElementInfluence(attributes={f"a{i}": 1.0 * i for i in range(6)})
        assert len(key_elements(el6, 0.5).attributes) == 3

    def test_all_zero_ties_break_by_label(self):
        from kgreason.kernel import ElementInfluence
        el = ElementInfluence(attributes={lab: 0.0 for lab in ("d", "b", "a", "c")})
        keys = key_elements(el, 0.5)
        assert [label for label, _ in keys.attributes] == ["a", "b"]

    def test_ranked_by_absolute_value(self):
        from kgreason.kernel import ElementInfluence
        el = ElementInfluence(attributes={"x": -5.0, "y": 3.0, "z": 0.1, "w": -0.2})
        keys = key_elements(el, 0.5)
        assert [label for label, _ in keys.attributes] == ["x", "y"]
