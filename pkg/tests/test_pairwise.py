"""Pairwise reasoning: case split, overlap, transferred information."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kgreason.errors import NoPath, UnknownEntity
from kgreason.fixtures import (iraq_pairwise_scenario, obama_pairwise_scenario,
                               build_canvas_graph, obama_model)
from kgreason.kernel import KeySets
from kgreason.mining import PredicateSimilarityModel
from kgreason.pairwise import (CONSISTENT, INCONSISTENT, UNRELATED,
                               ReasoningParams, classify_pair,
                               opposite_predicate_check, overlap_rate,
                               reason_pair, transferred_information)
from kgreason.store import KnowledgeGraph

entity = st.sampled_from(["a", "b", "c", "d"])
pred = st.sampled_from(["p", "q"])
triple = st.tuples(entity, pred, entity)


class TestClassifyPair:
    def test_distinct_everything(self):
        assert classify_pair(("Barack Obama", "wasBornIn", "Honolulu"),
                             ("Google", "isLocatedIn", "USA")) == "C1"

    def test_same_subject_same_predicate(self):
        assert classify_pair(("Barack Obama", "wasBornIn", "Honolulu"),
                             ("Barack Obama", "wasBornIn", "Hawaii")) == "C4"

    def test_same_subject_different_predicate(self):
        assert classify_pair(("Barack Obama", "wasBornIn", "Honolulu"),
                             ("Barack Obama", "graduatedFrom", "Harvard")) == "C3"

    def test_object_feeds_subject(self):
        assert classify_pair(("Barack Obama", "is", "President"),
                             ("President", "workAt", "White House")) == "C6"

    def test_shared_endpoints_both(self):
        assert classify_pair(("a", "p", "b"), ("a", "q", "b")) == "C2"

    def test_shared_object_only(self):
        assert classify_pair(("a", "p", "b"), ("c", "q", "b")) == "C5"

    @given(triple, triple)
    def test_total_and_prioritized(self, t1, t2):
        case = classify_pair(t1, t2)
        assert case in {"C1", "C2", "C3", "C4", "C5", "C6"}
        s1, p1, o1 = t1
        s2, p2, o2 = t2
        if s1 == s2 and o1 == o2:
            assert case == "C2"
        elif s1 == s2:
            assert case == ("C4" if p1 == p2 else "C3")

    @given(triple, triple)
    def test_symmetry_for_symmetric_cases(self, t1, t2):
        case_ab = classify_pair(t1, t2)
        case_ba = classify_pair(t2, t1)
        for symmetric in ("C1", "C2", "C5"):
            if case_ab == symmetric:
                assert case_ba == symmetric
        if case_ab == "C6":
            assert case_ba == "C6"


class TestOppositePredicates:
    def test_curated_pair_inconsistent(self):
        assert opposite_predicate_check("isFather", "isSon") == INCONSISTENT
        assert opposite_predicate_check("isSon", "isFather") == INCONSISTENT

    def test_equal_predicates_consistent(self):
        assert opposite_predicate_check("wasBornIn", "wasBornIn") == CONSISTENT

    def test_unrelated(self):
        assert opposite_predicate_check("wasBornIn", "hasWebsite") == UNRELATED

    def test_custom_table(self):
        table = {frozenset(("up", "down"))}
        assert opposite_predicate_check("up", "down", table) == INCONSISTENT
        assert opposite_predicate_check("up", "left", table) == UNRELATED


def keysets(attrs=(), nodes=(), edges=()):
    return KeySets(nodes=[(n, 1.0) for n in nodes],
                   edges=[(e, 1.0) for e in edges],
                   attributes=[(a, 1.0) for a in attrs])


class TestOverlapRate:
    def test_disjoint_sets(self):
        a = keysets(attrs=("x",), nodes=("x",), edges=(("x", "p", "y"),))
        b = keysets(attrs=("z",), nodes=("z",), edges=(("z", "p", "w"),))
        rates = overlap_rate(a, b)
        assert rates.attributes == rates.nodes == rates.edges == 0.0
        assert rates.mean == 0.0

    def test_identical_sets(self):
        a = keysets(attrs=("x", "y"), nodes=("x",), edges=(("x", "p", "y"),))
        rates = overlap_rate(a, a)
        assert rates.mean == 1.0

    def test_min_denominator(self):
        a = keysets(attrs=("x", "y", "z", "w"))
        b = keysets(attrs=("x", "y", "z"))
        assert overlap_rate(a, b).attributes == 1.0

    def test_both_empty_posts_one(self):
        assert overlap_rate(keysets(), keysets()).mean == 1.0

    def test_monotone_under_disjointification(self):
        a = keysets(attrs=("x", "y", "z"))
        b_levels = [("x", "y", "z"), ("x", "y", "q"), ("x", "r", "q"), ("s", "r", "q")]
        rates = [overlap_rate(a, keysets(attrs=attrs)).attributes for attrs in b_levels]
        assert rates == sorted(rates, reverse=True)
        assert all(0.0 <= r <= 1.0 for r in rates)


class TestTransferredInformation:
    def test_reflexive_transfer_is_one(self):
        s = obama_pairwise_scenario()
        result = transferred_information(s.graph, s.model, "Honolulu", "Honolulu", s.params)
        assert result.forward.value == 1.0
        assert result.verdict == "subsumes"

    def test_no_path_transfers_nothing(self):
        g = KnowledgeGraph.from_labeled_triples([
            ("a", "isLocatedIn", "b"), ("x", "isLocatedIn", "y")])
        model = PredicateSimilarityModel.from_pinned(
            ["isTypeOf", "isLocatedIn"], {("isTypeOf", "isLocatedIn"): 0.87})
        result = transferred_information(g, model, "a", "x")
        assert result.forward.value == 0.0
        assert result.forward.error == "no-path"
        assert result.verdict == "disjoint"

    def test_single_hop_location_edge(self):
        s = obama_pairwise_scenario()
        result = transferred_information(s.graph, s.model, "Honolulu", "Hawaii", s.params)
        best = max(result.forward.value, result.backward.value)
        assert best == pytest.approx(0.870, abs=1e-9)
        assert result.verdict == "subsumes"

    def test_path_value_is_product_of_similarities(self):
        g = KnowledgeGraph.from_labeled_triples([
            ("a", "isLocatedIn", "m"), ("m", "isLocatedIn", "b")])
        model = PredicateSimilarityModel.from_pinned(
            ["isTypeOf", "isLocatedIn"], {("isTypeOf", "isLocatedIn"): 0.87})
        result = transferred_information(g, model, "a", "b")
        assert result.forward.value == pytest.approx(0.87 * 0.87, abs=1e-12)


class TestReasonPair:
    def test_identical_triples_consistent(self):
        s = obama_pairwise_scenario()
        v = reason_pair(s.graph, s.model, s.t1, s.t1, s.params)
        assert v.case == "C2"
        assert v.consistent is True

    def test_c1_no_inconsistency_check(self):
        s = obama_pairwise_scenario()
        v = reason_pair(s.graph, s.model,
                        ("Barack Obama", "wasBornIn", "Honolulu"),
                        ("Iraq", "isLocatedIn", "Asia"), s.params)
        assert v.case == "C1"
        assert v.same_thing is False
        assert v.consistent is None

    def test_c5_c6_never_inconsistent(self):
        s = obama_pairwise_scenario()
        v5 = reason_pair(s.graph, s.model,
                         ("Barack Obama", "wasBornIn", "Honolulu"),
                         ("Michelle Obama", "livesIn", "Honolulu"), s.params)
        assert v5.case == "C5" and v5.consistent is None
        v6 = reason_pair(s.graph, s.model,
                         ("Barack Obama", "livesIn", "Honolulu"),
                         ("Honolulu", "isLocatedIn", "Hawaii"), s.params)
        assert v6.case == "C6" and v6.consistent is None

    def test_birthplace_c4_consistent_through_location(self):
        """Honolulu lies in Hawaii, so the two birth-place claims agree."""
        s = obama_pairwise_scenario()
        v = reason_pair(s.graph, s.model, s.t1, s.t2, s.params)
        assert v.case == "C4"
        assert v.same_thing is True
        assert max(v.transfer.forward.value, v.transfer.backward.value) >= 0.87 - 1e-9
        assert v.consistent is True

    def test_unknown_entities_rejected(self):
        s = obama_pairwise_scenario()
        with pytest.raises(UnknownEntity):
            reason_pair(s.graph, s.model, ("nobody", "wasBornIn", "Honolulu"),
                        s.t2, s.params)

    def test_extraction_failure_carries_partial_evidence(self):
        g = KnowledgeGraph.from_labeled_triples([
            ("a", "r", "b"), ("a", "r", "c"), ("island", "r", "far")])
        model = PredicateSimilarityModel.from_pinned(
            ["isTypeOf", "p", "q", "r"], {("p", "r"): 0.5, ("q", "r"): 0.5})
        with pytest.raises(NoPath) as err:
            reason_pair(g, model, ("a", "p", "b"), ("a", "q", "far"))
        assert err.value.partial["failed"] == "t2"

    def test_verdict_json_shape(self):
        s = obama_pairwise_scenario()
        v = reason_pair(s.graph, s.model, s.t1, s.t2, s.params)
        doc = v.to_json(s.graph)
        assert doc["case"] == "C4"
        assert doc["overlapRate"]["mean"] == pytest.approx(v.overlap.mean)
        assert doc["transfer"]["verdict"] == "subsumes"
        assert len(doc["evidence"]["segments"]) == 2
        assert doc["evidence"]["influence"]["first"]["attributes"]

    def test_determinism(self):
        s = iraq_pairwise_scenario()
        a = reason_pair(s.graph, s.model, s.t1, s.t2, s.params).to_json(s.graph)
        b = reason_pair(s.graph, s.model, s.t1, s.t2, s.params).to_json(s.graph)
        assert a == b


class TestInconsistencyWalkthrough:
    """The geopolitical clue pair: same subject, unrelated objects."""

    def setup_method(self):
        self.s = iraq_pairwise_scenario()
        self.verdict = reason_pair(self.s.graph, self.s.model,
                                   self.s.t1, self.s.t2, self.s.params)

    def test_case_and_segments(self):
        assert self.verdict.case == "C3"
        ks1, ks2 = self.verdict.segments
        assert len(ks1.node_ids) == 7
        assert len(ks2.node_ids) == 6

    def test_overlap_rates(self):
        rates = self.verdict.overlap
        assert rates.attributes == 1.0
        assert rates.nodes == 1.0
        assert rates.edges == pytest.approx(1 / 3)
        assert rates.mean == pytest.approx(7 / 9)

    def test_attribute_influence_ranking(self):
        keys1, keys2 = self.verdict.key_sets
        assert [a for a, _ in keys1.attributes] == [
            "Washington,D.C", "United States President", "White House", "United States"]
        assert {a for a, _ in keys2.attributes} == {
            "Washington,D.C", "White House", "United States"}

    def test_shared_key_edge_is_the_capital_edge(self):
        keys1, keys2 = self.verdict.key_sets
        assert keys1.edge_set & keys2.edge_set == {
            ("United States", "hasCapital", "Washington,D.C")}

    def test_transfer_blocked_both_ways(self):
        t = self.verdict.transfer
        assert t.forward.value == pytest.approx(0.767 * 0.870 ** 3, abs=1e-12)
        assert round(t.forward.value, 3) == 0.505
        assert t.backward.value == pytest.approx(t.forward.value, abs=1e-12)
        assert t.verdict == "disjoint"

    def test_verdict_inconsistent(self):
        assert self.verdict.same_thing is True
        assert self.verdict.consistent is False
