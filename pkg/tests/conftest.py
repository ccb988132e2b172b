import numpy as np
import pytest

from kgreason.store import KnowledgeGraph, LoadConfig


@pytest.fixture
def tiny_graph():
    return KnowledgeGraph.from_labeled_triples([
        ("A", "p", "B"),
        ("B", "p", "C"),
        ("A", "q", "C"),
    ])


def random_labeled_triples(rng: np.random.Generator, n_triples: int,
                           n_entities: int, n_predicates: int):
    rows = []
    for _ in range(n_triples):
        s = f"e{rng.integers(n_entities)}"
        o = f"e{rng.integers(n_entities)}"
        p = f"p{rng.integers(n_predicates)}"
        rows.append((s, p, o))
    return rows


@pytest.fixture
def rng():
    return np.random.default_rng(20260810)
