import random
from collections import Counter

import pytest

from conftest import t
from plcg.corpus import random_tree_over_yield
from plcg.evalb import (
    YieldMismatchError,
    aggregate,
    brackets,
    score,
    score_corpus,
    score_pair,
)

# Attachment-ambiguity fixtures: flat treebank style and N-bar style.
PENN_VP = t("(VP saw (NP the man) (PP with (NP a telescope)))")
PENN_NP = t("(VP saw (NP (NP the man) (PP with (NP a telescope))))")
NBAR_VP = t("(VP saw (NP the (N1 man)) (PP with (NP a (N1 telescope))))")
NBAR_NP = t("(VP saw (NP the (N1 man (PP with (NP a (N1 telescope))))))")


class TestBrackets:
    def test_unary_chain_collapses_keeping_outermost(self):
        tree = t("(S (NP (DT the) (NN man)))")
        assert brackets(tree, include_unary=True) == Counter({(0, 2, "S"): 1, (0, 2, "NP"): 1})
        assert brackets(tree, include_unary=False) == Counter({(0, 2, "S"): 1})

    def test_single_preterminal_is_empty(self):
        assert brackets(t("(NN man)"), include_unary=True) == Counter()

    def test_preterminal_spans_excluded(self):
        spans = brackets(t("(S (NP (DT a) (NN b)) (VP (VB c)))"), include_unary=True)
        assert spans == Counter({(0, 3, "S"): 1, (0, 2, "NP"): 1, (2, 3, "VP"): 1})

    def test_root_wrapper_excluded(self):
        wrapped = t("(ROOT (S (NP (NN a)) (VP (VB b))))")
        bare = t("(S (NP (NN a)) (VP (VB b)))")
        assert brackets(wrapped, include_unary=True) == brackets(bare, include_unary=True)

    def test_duplicate_brackets_kept_as_multiset(self):
        tree = t("(NP (NP (NP (NN a) (NN b))) (NN c))")
        spans = brackets(tree, include_unary=True)
        assert spans[(0, 2, "NP")] == 2


class TestErrorTable:
    """The four attachment-error cells: (precision errors, recall errors, CBs)."""

    def errors(self, gold, test):
        m, g, tn, cb = score(gold, test, labelled=True, include_unary=False)
        return tn - m, g - m, cb

    def test_flat_style_vp_instead_of_np(self):
        assert self.errors(PENN_NP, PENN_VP) == (0, 1, 0)

    def test_flat_style_np_instead_of_vp(self):
        assert self.errors(PENN_VP, PENN_NP) == (1, 0, 0)

    def test_nbar_style_vp_instead_of_np(self):
        assert self.errors(NBAR_NP, NBAR_VP) == (1, 2, 1)

    def test_nbar_style_np_instead_of_vp(self):
        assert self.errors(NBAR_VP, NBAR_NP) == (2, 1, 1)


class TestScore:
    def test_perfect_self_score(self):
        tree = PENN_NP
        for labelled in (False, True):
            for unary in (False, True):
                m, g, tn, cb = score(tree, tree, labelled, unary)
                assert m == g == tn and cb == 0

    def test_unlabelled_ignores_labels(self):
        gold = t("(S (NP (NN a)) (VP (VB b)))")
        test = t("(X (Y (NN a)) (Z (VB b)))")
        m_unlab, _, _, _ = score(gold, test, labelled=False, include_unary=False)
        m_lab, _, _, _ = score(gold, test, labelled=True, include_unary=False)
        # Spans (0,2), (0,1), (1,2) all match by position, none by label.
        assert m_unlab == 3 and m_lab == 0

    def test_yield_mismatch_raises(self):
        with pytest.raises(YieldMismatchError):
            score(t("(S a)"), t("(S b)"), labelled=True, include_unary=False)

    def test_symmetry_on_random_pairs(self, rng):
        for _ in range(200):
            words = ["w%d" % i for i in range(rng.randint(2, 9))]
            gold = random_tree_over_yield(rng, words)
            test = random_tree_over_yield(rng, words)
            for labelled in (False, True):
                for unary in (False, True):
                    m1, g1, t1, _ = score(gold, test, labelled, unary)
                    m2, g2, t2, _ = score(test, gold, labelled, unary)
                    assert (m1, g1, t1) == (m2, t2, g2)

    def test_unlabelled_matched_at_least_labelled(self, rng):
        for _ in range(50):
            words = ["w%d" % i for i in range(rng.randint(2, 7))]
            gold = random_tree_over_yield(rng, words)
            test = random_tree_over_yield(rng, words)
            mu, _, _, _ = score(gold, test, labelled=False, include_unary=False)
            ml, _, _, _ = score(gold, test, labelled=True, include_unary=False)
            assert mu >= ml


class TestAggregate:
    def test_identical_corpora_are_perfect(self):
        report, retained = score_corpus([PENN_NP, NBAR_NP], [PENN_NP, NBAR_NP])
        assert retained == 2
        assert report.precision == report.recall == 1.0
        assert report.labelled_precision == report.labelled_recall == 1.0
        assert report.avg_cbs == 0.0 and report.zero_cb_rate == 1.0

    def test_micro_average_by_hand(self):
        # Sentence 1: flat-style NP-for-VP error, 4 matched of gold 4, test 5.
        # Sentence 2: N-bar-style VP-for-NP error, 3 matched of gold 5, test 4.
        report = aggregate([score_pair(PENN_VP, PENN_NP), score_pair(NBAR_NP, NBAR_VP)])
        assert report.labelled_precision == pytest.approx((4 + 3) / (5 + 4))
        assert report.labelled_recall == pytest.approx((4 + 3) / (4 + 5))
        assert report.avg_cbs == pytest.approx(0.5)
        assert report.zero_cb_rate == pytest.approx(0.5)
        assert report.noncrossing_accuracy == pytest.approx(1 - 1 / 9)

    def test_empty_aggregate_raises(self):
        with pytest.raises(ValueError):
            aggregate([])

    def test_max_length_filter(self):
        golds = [t("(S a b)"), t("(S a b c d)")]
        report, retained = score_corpus(golds, golds, max_length=3)
        assert retained == 1 and report.sentence_count == 1

    def test_misaligned_corpora_raise(self):
        with pytest.raises(ValueError):
            score_corpus([PENN_NP], [])

    def test_yield_mismatch_names_sentence(self):
        with pytest.raises(YieldMismatchError) as info:
            score_corpus([t("(S a)"), t("(S b)")], [t("(S a)"), t("(S c)")])
        assert info.value.index == 1
