import math
from fractions import Fraction

import pytest

from conftest import assert_model_normalized, t
from plcg.grammar_types import Rule
from plcg.induction import (
    corpus_log_likelihood,
    delta_tree_log_prob,
    induce_delta_model,
    induce_pcfg,
    induce_plcg,
    pcfg_tree_exact_prob,
    pcfg_tree_log_prob,
    plcg_tree_log_prob,
)
from plcg.transforms import binarize_corpus


class TestPcfgInduction:
    def test_counts_by_hand(self):
        trees = [t("(S (A a) (B b))"), t("(S (A a) (A a))"), t("(S (A x))")]
        model = induce_pcfg(trees)
        assert model.counts[Rule("S", ("A", "B"))] == 1
        assert model.counts[Rule("S", ("A", "A"))] == 1
        assert model.counts[Rule("A", ("a",))] == 3
        assert model.prob(Rule("S", ("A", "B"))) == pytest.approx(1 / 3)
        assert model.prob(Rule("A", ("a",))) == pytest.approx(3 / 4)

    def test_single_tree_has_probability_one(self):
        tree = t("(S (NP (DT a) (NN b)) (VP (VB c)))")
        model = induce_pcfg([tree])
        assert pcfg_tree_log_prob(tree, model) == pytest.approx(0.0)
        assert pcfg_tree_exact_prob(tree, model) == Fraction(1)

    def test_unseen_rule_gets_zero(self):
        model = induce_pcfg([t("(S (A a) (B b))")])
        assert pcfg_tree_log_prob(t("(S (B b) (A a))"), model) == float("-inf")

    def test_empty_corpus_raises(self):
        with pytest.raises(ValueError):
            induce_pcfg([])

    def test_mixed_roots_raise(self):
        with pytest.raises(ValueError):
            induce_pcfg([t("(S (A a))"), t("(T (A a))")])

    def test_normalized(self):
        trees = [t("(S (A a) (B b))"), t("(S (A a) (A a))"), t("(S (B b))")]
        assert_model_normalized(induce_pcfg(trees))


class TestPlcgInduction:
    def test_attach_ratio_by_hand(self):
        # Two trees attach S directly, one projects S -> S b from the same
        # (S, S) context: attach probability 3/4.
        trees = [
            t("(T c (S a))"),
            t("(T c (S a))"),
            t("(T c (S (S a) b))"),
        ]
        model = induce_plcg(trees)
        assert model.p_att("S", "S") == pytest.approx(0.75)
        assert model.p_lc(Rule("S", ("S", "b")), "S", "S") == pytest.approx(1.0)
        assert_model_normalized(model)

    def test_shift_distribution_by_hand(self):
        trees = [t("(S a)"), t("(S a)"), t("(S b)")]
        model = induce_plcg(trees)
        assert model.shift_dist("S") == pytest.approx({"a": 2 / 3, "b": 1 / 3})

    def test_goal_category_separates_contexts(self):
        # Subject NPs (goal S) are pronouns; object NPs (goal NP, via the
        # sought slot of VP -> VB NP) are DT NN.  The PCFG collapses both.
        trees = [
            t("(S (NP PRP) (VP VB (NP DT NN)))"),
            t("(S (NP PRP) (VP VB (NP DT NN)))"),
        ]
        plcg = induce_plcg(trees)
        pcfg = induce_pcfg(trees)
        assert plcg.p_lc(Rule("NP", ("PRP",)), "PRP", "S") == pytest.approx(1.0)
        assert plcg.p_lc(Rule("NP", ("DT", "NN")), "DT", "NP") == pytest.approx(1.0)
        assert pcfg.prob(Rule("NP", ("PRP",))) == pytest.approx(0.5)

    def test_single_tree_has_probability_one(self):
        tree = t("(S (NP (DT a) (NN b)) (VP (VB c)))")
        model = induce_plcg([tree])
        assert plcg_tree_log_prob(tree, model) == pytest.approx(0.0)

    def test_unseen_structure_gets_zero(self):
        model = induce_plcg([t("(S (A a) (B b))")])
        assert plcg_tree_log_prob(t("(S (A a))"), model) == float("-inf")

    def test_projection_scores_include_attach_complement(self):
        trees = [
            t("(T c (S a))"),
            t("(T c (S a))"),
            t("(T c (S (S a) b))"),
        ]
        model = induce_plcg(trees)
        # The nested tree pays (1 - 3/4) at its (S, S) projection and 3/4
        # at the final attach from the same context: 3/16 overall.
        lp = plcg_tree_log_prob(t("(T c (S (S a) b))"), model)
        assert math.exp(lp) == pytest.approx(3 / 16)


class TestDeltaInduction:
    def trees(self):
        return binarize_corpus([
            t("(S (NP PRP) (VP VB (NP DT NN)))"),
            t("(S (NP PRP) (VP VB (NP NN NN)))"),
            t("(S (NP NN) (VP VB))"),
        ])

    def test_deltas_in_range(self):
        model = induce_delta_model(self.trees())
        for dist in model.delta_counts.values():
            assert set(dist) <= {-2, -1, 0, 1}

    def test_normalized(self):
        assert_model_normalized(induce_delta_model(self.trees()))

    def test_rejects_nary_rules(self):
        with pytest.raises(ValueError):
            induce_delta_model([t("(S a b c)")])

    def test_single_tree_has_probability_one(self):
        tree = binarize_corpus([t("(S (NP PRP) (VP VB (NP DT NN)))")])[0]
        model = induce_delta_model([tree])
        assert delta_tree_log_prob(tree, model) == pytest.approx(0.0)

    def test_unseen_depth_gets_zero(self):
        flat = binarize_corpus([t("(S a b)")])
        model = induce_delta_model(flat)
        deep = binarize_corpus([t("(S (S a b) b)")])[0]
        assert delta_tree_log_prob(deep, model) == float("-inf")


class TestCorpusLogLikelihood:
    def test_dispatch_matches_per_tree_scores(self):
        trees = [t("(S (A a) (B b))"), t("(S (A a) (A a))")]
        pcfg = induce_pcfg(trees)
        plcg = induce_plcg(trees)
        assert corpus_log_likelihood(trees, pcfg) == pytest.approx(
            sum(pcfg_tree_log_prob(x, pcfg) for x in trees)
        )
        assert corpus_log_likelihood(trees, plcg) == pytest.approx(
            sum(plcg_tree_log_prob(x, plcg) for x in trees)
        )

    def test_training_likelihood_plcg_vs_pcfg_on_shared_support(self):
        # With a single tree both models assign probability one.
        tree = t("(S (A a) (B b))")
        assert corpus_log_likelihood([tree], induce_pcfg([tree])) == pytest.approx(0.0)
        assert corpus_log_likelihood([tree], induce_plcg([tree])) == pytest.approx(0.0)
