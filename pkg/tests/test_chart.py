import itertools
import math

import pytest

from conftest import t
from plcg.chart import (
    TooManyParsesError,
    UnaryCycleError,
    enumerate_parses,
    sentence_probability,
    viterbi_parse,
)
from plcg.grammar_types import PcfgModel, Rule
from plcg.induction import induce_pcfg, pcfg_tree_log_prob


def model_from(counts, start="S"):
    return PcfgModel({Rule(l, tuple(r)): c for (l, r), c in counts.items()}, start)


@pytest.fixture
def pp_model():
    """Hand-set 2-way PP attachment ambiguity: high attach wins."""
    return model_from({
        ("S", ("NP", "VP")): 10,
        ("NP", ("N",)): 6,
        ("NP", ("NP", "PP")): 4,
        ("VP", ("V", "NP")): 7,
        ("VP", ("VP", "PP")): 3,
        ("PP", ("P", "NP")): 10,
    })


class TestViterbi:
    def test_matches_enumeration_max(self, pp_model):
        tags = ["N", "V", "N", "P", "N"]
        best = viterbi_parse(tags, pp_model)
        assert best is not None
        tree, lp = best
        parses = enumerate_parses(tags, pp_model)
        assert len(parses) == 2
        assert math.exp(lp) == pytest.approx(parses[0][1])
        assert tree == parses[0][0]

    def test_higher_probability_attachment_chosen(self, pp_model):
        # NP attachment of the PP carries 4/10 vs VP attachment's 3/10.
        tree, _ = viterbi_parse(["N", "V", "N", "P", "N"], pp_model)
        assert t("(NP (NP N) (PP P (NP N)))") in tree.children[1].children

    def test_unknown_tag_is_no_parse(self, pp_model):
        assert viterbi_parse(["N", "XX"], pp_model) is None

    def test_uncovered_sequence_is_no_parse(self, pp_model):
        assert viterbi_parse(["P", "P"], pp_model) is None

    def test_empty_sequence_raises(self, pp_model):
        with pytest.raises(ValueError):
            viterbi_parse([], pp_model)

    def test_deterministic(self, pp_model):
        tags = ["N", "V", "N", "P", "N", "P", "N"]
        runs = {viterbi_parse(tags, pp_model) for _ in range(3)}
        assert len(runs) == 1

    def test_unary_rules_handled(self):
        model = model_from({
            ("S", ("A",)): 1,
            ("A", ("B", "B")): 1,
            ("B", ("b",)): 1,
        })
        tree, lp = viterbi_parse(["b", "b"], model)
        assert tree == t("(S (A (B b) (B b)))")
        assert lp == pytest.approx(0.0)

    def test_score_agrees_with_rule_product(self, pp_model):
        tags = ["N", "V", "N"]
        tree, lp = viterbi_parse(tags, pp_model)
        assert lp == pytest.approx(pcfg_tree_log_prob(tree, pp_model))

    def test_nary_rules_debinarized_in_output(self):
        trees = [t("(S (A a) (B b) (C c))")] * 3
        model = induce_pcfg(trees)
        tree, lp = viterbi_parse(["a", "b", "c"], model)
        assert tree == trees[0]
        assert lp == pytest.approx(0.0)


class TestEnumeration:
    def test_exhaustive_over_short_inputs(self, pp_model):
        # Every parse found by brute force appears exactly once.
        tags = ["N", "V", "N", "P", "N"]
        parses = enumerate_parses(tags, pp_model)
        trees = [p[0] for p in parses]
        assert len(set(trees)) == len(trees)
        for tree, prob in parses:
            assert math.exp(pcfg_tree_log_prob(tree, pp_model)) == pytest.approx(prob)

    def test_sorted_by_probability(self, pp_model):
        parses = enumerate_parses(["N", "V", "N", "P", "N"], pp_model)
        probs = [p for _, p in parses]
        assert probs == sorted(probs, reverse=True)

    def test_no_parse_is_empty(self, pp_model):
        assert enumerate_parses(["P"], pp_model) == []

    def test_limit_enforced(self, pp_model):
        tags = ["N", "V"] + ["N", "P"] * 5 + ["N"]
        with pytest.raises(TooManyParsesError):
            enumerate_parses(tags, pp_model, limit=3)

    def test_unary_cycle_detected(self):
        model = model_from({
            ("S", ("A",)): 1,
            ("A", ("S",)): 1,
            ("S", ("x",)): 1,
        })
        with pytest.raises(UnaryCycleError):
            enumerate_parses(["x"], model)


class TestInside:
    def test_sum_equals_enumeration(self, pp_model):
        for n in (3, 5, 7):
            tags = ["N", "V"] + ["N", "P"] * ((n - 3) // 2) + ["N"]
            total = sum(p for _, p in enumerate_parses(tags, pp_model))
            assert sentence_probability(tags, pp_model) == pytest.approx(total, abs=1e-9)

    def test_no_parse_is_zero(self, pp_model):
        assert sentence_probability(["P", "P"], pp_model) == 0.0

    def test_proper_grammar_mass_bounded(self):
        # Geometric right-branching grammar: mass over lengths <= L
        # approaches one from below.
        model = model_from({
            ("S", ("a", "S")): 1,
            ("S", ("a",)): 1,
        })
        total = 0.0
        for n in range(1, 12):
            total += sentence_probability(["a"] * n, model)
            assert total <= 1.0 + 1e-9
        assert total == pytest.approx(1.0, abs=0.01)

    def test_viterbi_never_exceeds_inside(self, pp_model):
        for n in (3, 5):
            tags = ["N", "V"] + ["N", "P"] * ((n - 3) // 2) + ["N"]
            _, lp = viterbi_parse(tags, pp_model)
            assert math.exp(lp) <= sentence_probability(tags, pp_model) + 1e-12


def test_all_sequences_agree_with_enumeration(pp_model):
    for n in range(1, 5):
        for tags in itertools.product(["N", "V", "P"], repeat=n):
            parses = enumerate_parses(list(tags), pp_model)
            best = viterbi_parse(list(tags), pp_model)
            if not parses:
                assert best is None
            else:
                assert best is not None
                assert math.exp(best[1]) == pytest.approx(parses[0][1])
