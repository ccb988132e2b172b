"""Bundled demo dataset: a small hand-built knowledge graph with pinned
similarity models that exercise every reasoning path end to end.

One canvas graph carries two story clusters: a geopolitical cluster
(White House / Washington,D.C / Iraq / Afghanistan) for the pairwise and
collective inconsistency walkthroughs, and a biographical cluster
(Barack Obama / Honolulu / Hawaii) for local clustering and the
consistent birth-place comparisons. Several node pairs intentionally
carry two parallel relations (isLocatedIn + situatedIn on White
House-Washington,D.C, livesIn + wasBornIn on Obama-Honolulu): each
claim's weighted view then traverses its own edge identity, which keeps
the key-element overlap between different claims' segments small.

Similarity models are pinned per scenario rather than mined: the type
row carries the reference values (happenedIn 0.767, dealsWith 0.697,
participatedIn 0.869, isLocatedIn 0.870) and every clue predicate gets
its own row of traversability weights.
"""

from __future__ import annotations

from dataclasses import dataclass

from .kernel import KernelConfig
from .mining import PredicateSimilarityModel
from .pairwise import ReasoningParams
from .store import KnowledgeGraph, QueryGraph

WHITE_HOUSE = "White House"
WASHINGTON = "Washington,D.C"
US = "United States"
PRESIDENT = "United States President"
ARMY = "United States Army"
OPERATION = "Operation Mountain Thrust"
AFGHANISTAN = "Afghanistan"
IRAQ = "Iraq"
IRAQI_ARMY = "Iraqi Army"
ASIA = "Asia"
PENN_AVENUE = "1600 Pennsylvania Avenue"

OBAMA = "Barack Obama"
MICHELLE = "Michelle Obama"
HARVARD = "Harvard Law School"
COLUMBIA = "Columbia University"
PARTY = "Democratic Party"
HONOLULU = "Honolulu"
HAWAII = "Hawaii"

CANVAS_TRIPLES = [
    # geopolitical cluster
    (WHITE_HOUSE, "isLocatedIn", WASHINGTON),
    (WHITE_HOUSE, "situatedIn", WASHINGTON),
    (WHITE_HOUSE, "isOfficeOf", PRESIDENT),
    (WHITE_HOUSE, "hasAddress", PENN_AVENUE),
    (PENN_AVENUE, "addressLocatedIn", WASHINGTON),
    (US, "hasCapital", WASHINGTON),
    (PRESIDENT, "livesIn", WHITE_HOUSE),
    (PRESIDENT, "worksIn", WASHINGTON),
    (PRESIDENT, "isLeaderOf", US),
    (PRESIDENT, "isCommanderOf", ARMY),
    (PRESIDENT, "visited", IRAQ),
    (ARMY, "participatedIn", OPERATION),
    (ARMY, "belongsTo", US),
    (ARMY, "headquarteredIn", WASHINGTON),
    (ARMY, "foughtIn", AFGHANISTAN),
    (ARMY, "protects", WHITE_HOUSE),
    (US, "dealsWith", AFGHANISTAN),
    (US, "dealsWith", IRAQ),
    (OPERATION, "happenedIn", AFGHANISTAN),
    (IRAQ, "hasEmbassyAt", WASHINGTON),
    (IRAQI_ARMY, "isArmyOf", IRAQ),
    (AFGHANISTAN, "isLocatedIn", ASIA),
    (IRAQ, "isLocatedIn", ASIA),
    # biographical cluster
    (OBAMA, "isMarriedTo", MICHELLE),
    (OBAMA, "graduatedFrom", HARVARD),
    (OBAMA, "graduatedFrom", COLUMBIA),
    (MICHELLE, "graduatedFrom", HARVARD),
    (OBAMA, "isAffiliatedTo", PARTY),
    (MICHELLE, "isAffiliatedTo", PARTY),
    (OBAMA, "livesIn", HONOLULU),
    (OBAMA, "wasBornIn", HONOLULU),
    (HONOLULU, "isLocatedIn", HAWAII),
    (HAWAII, "isLocatedIn", US),
]

# reference values for the type-predicate row; isArmyOf is an army-of ->
# located-in style containment and carries the same weight
TYPE_ROW = {
    ("isTypeOf", "happenedIn"): 0.767,
    ("isTypeOf", "dealsWith"): 0.697,
    ("isTypeOf", "participatedIn"): 0.869,
    ("isTypeOf", "isLocatedIn"): 0.870,
    ("isTypeOf", "isArmyOf"): 0.870,
    ("isTypeOf", "belongsTo"): 0.600,
}

CANVAS_PREDICATES = sorted({p for _, p, _ in CANVAS_TRIPLES})
CLUE_PREDICATES = ["isTypeOf", "punish", "means", "participatedIn", "wasBornIn"]


def build_canvas_graph() -> KnowledgeGraph:
    return KnowledgeGraph.from_labeled_triples(CANVAS_TRIPLES)


def _model(rows: dict[tuple[str, str], float]) -> PredicateSimilarityModel:
    labels = sorted(set(CANVAS_PREDICATES) | set(CLUE_PREDICATES))
    entries = dict(TYPE_ROW)
    entries.update(rows)
    return PredicateSimilarityModel.from_pinned(labels, entries)


PAIRWISE_ROWS = {
    ("participatedIn", "isLocatedIn"): 0.72,
    ("participatedIn", "hasCapital"): 0.83,
    ("participatedIn", "livesIn"): 0.91,
    ("participatedIn", "worksIn"): 0.88,
    ("participatedIn", "isCommanderOf"): 0.86,
    ("participatedIn", "dealsWith"): 0.64,
    ("participatedIn", "happenedIn"): 0.77,
    ("punish", "situatedIn"): 0.90,
    ("punish", "isOfficeOf"): 0.85,
    ("punish", "hasCapital"): 0.80,
    ("punish", "hasEmbassyAt"): 0.75,
    ("punish", "isLeaderOf"): 0.82,
    ("punish", "isArmyOf"): 0.80,
}


def pairwise_model() -> PredicateSimilarityModel:
    """Rows for the <White House, participatedIn, Operation Mountain Thrust>
    vs <White House, punish, Iraqi Army> walkthrough."""
    return _model(dict(PAIRWISE_ROWS))


def collective_model() -> PredicateSimilarityModel:
    """Rows for the three-claim query graph walkthrough: the army wiring
    of the participatedIn view differs from the pairwise scenario so the
    two claims' segments overlap on exactly the shared corridor."""
    return _model({
        ("participatedIn", "belongsTo"): 0.80,
        ("participatedIn", "hasCapital"): 0.83,
        ("participatedIn", "foughtIn"): 0.85,
        ("participatedIn", "happenedIn"): 0.77,
        ("participatedIn", "headquarteredIn"): 0.90,
        ("participatedIn", "isLeaderOf"): 0.82,
        ("participatedIn", "isLocatedIn"): 0.72,
        ("participatedIn", "protects"): 0.88,
        ("participatedIn", "worksIn"): 0.88,
        ("punish", "situatedIn"): 0.90,
        ("punish", "hasCapital"): 0.80,
        ("punish", "isLeaderOf"): 0.82,
        ("punish", "visited"): 0.78,
        ("punish", "isArmyOf"): 0.80,
        ("means", "hasAddress"): 0.80,
        ("means", "addressLocatedIn"): 0.80,
    })


OBAMA_ROWS = {
    ("wasBornIn", "livesIn"): 0.80,
    ("wasBornIn", "isLocatedIn"): 0.70,
    ("wasBornIn", "graduatedFrom"): 0.35,
    ("wasBornIn", "isMarriedTo"): 0.30,
    ("wasBornIn", "isAffiliatedTo"): 0.25,
}


def obama_model() -> PredicateSimilarityModel:
    return _model(dict(OBAMA_ROWS))


def demo_model() -> PredicateSimilarityModel:
    """Union of the pairwise walkthrough rows and the biographical rows;
    their clue predicates are disjoint so both stories work on one model."""
    merged = dict(PAIRWISE_ROWS)
    merged.update(OBAMA_ROWS)
    merged.update({("means", "hasAddress"): 0.80, ("means", "addressLocatedIn"): 0.80})
    return _model(merged)


@dataclass
class PairwiseScenario:
    graph: KnowledgeGraph
    model: PredicateSimilarityModel
    t1: tuple[str, str, str]
    t2: tuple[str, str, str]
    params: ReasoningParams


@dataclass
class CollectiveScenario:
    graph: KnowledgeGraph
    model: PredicateSimilarityModel
    query: QueryGraph
    params: ReasoningParams


def iraq_pairwise_scenario(graph: KnowledgeGraph | None = None) -> PairwiseScenario:
    return PairwiseScenario(
        graph=graph or build_canvas_graph(),
        model=pairwise_model(),
        t1=(WHITE_HOUSE, "participatedIn", OPERATION),
        t2=(WHITE_HOUSE, "punish", IRAQI_ARMY),
        params=ReasoningParams(segment_k=4, segment_bidirectional=True,
                               transfer_k=5, transfer_bidirectional=True),
    )


def iraq_collective_scenario(graph: KnowledgeGraph | None = None) -> CollectiveScenario:
    query = QueryGraph.from_triples([
        (WHITE_HOUSE, "punish", IRAQI_ARMY),
        (WASHINGTON, "means", WHITE_HOUSE),
        (WASHINGTON, "participatedIn", OPERATION),
    ])
    return CollectiveScenario(
        graph=graph or build_canvas_graph(),
        model=collective_model(),
        query=query,
        params=ReasoningParams(segment_k=8, segment_bidirectional=True,
                               transfer_k=5, transfer_bidirectional=True),
    )


def obama_pairwise_scenario(graph: KnowledgeGraph | None = None) -> PairwiseScenario:
    return PairwiseScenario(
        graph=graph or build_canvas_graph(),
        model=obama_model(),
        t1=(OBAMA, "wasBornIn", HONOLULU),
        t2=(OBAMA, "wasBornIn", HAWAII),
        params=ReasoningParams(segment_k=4, segment_bidirectional=True,
                               transfer_k=5, transfer_bidirectional=True),
    )


def obama_collective_scenario(graph: KnowledgeGraph | None = None) -> CollectiveScenario:
    query = QueryGraph.from_triples([
        (OBAMA, "wasBornIn", HONOLULU),
        (OBAMA, "wasBornIn", HAWAII),
        (OBAMA, "wasBornIn", US),
    ])
    return CollectiveScenario(
        graph=graph or build_canvas_graph(),
        model=obama_model(),
        query=query,
        params=ReasoningParams(segment_k=4, segment_bidirectional=True,
                               transfer_k=5, transfer_bidirectional=True),
    )
