"""Tail-merging binarization and its inverse.

``A -> X1 X2 ... Xn`` (n >= 3) becomes ``A -> X1 A@X1`` and
``A@X1 -> X2 ... Xn``, recursively, so n-ary rules sharing mother and left
corner collapse to a single top rule.  The ``@`` separator is reserved,
which makes debinarization a pure label test.
"""

from __future__ import annotations

from collections import defaultdict
from typing import Sequence

from .grammar_types import PcfgModel, Rule
from .treebank import Tree

SEPARATOR = "@"


class ReservedSymbolError(ValueError):
    pass


def _check_label(label: str) -> str:
    if SEPARATOR in label:
        raise ReservedSymbolError(
            "label %r contains the reserved binarization separator %r" % (label, SEPARATOR)
        )
    return label


def binarize_tree(t: Tree) -> Tree:
    if t.is_leaf:
        _check_label(t.label)
        return t
    _check_label(t.label)
    children = [binarize_tree(c) for c in t.children]
    if len(children) <= 2:
        return Tree(t.label, tuple(children))
    head, rest = children[0], children[1:]
    tail_label = t.label + SEPARATOR + head.label
    tail = _binarize_tail(tail_label, rest)
    return Tree(t.label, (head, tail))


def _binarize_tail(label: str, children: list[Tree]) -> Tree:
    if len(children) <= 2:
        return Tree(label, tuple(children))
    head, rest = children[0], children[1:]
    return Tree(label, (head, _binarize_tail(label + SEPARATOR + head.label, rest)))


def debinarize_tree(t: Tree) -> Tree:
    if t.is_leaf:
        return t
    children: list[Tree] = []
    for c in t.children:
        dc = debinarize_tree(c)
        if SEPARATOR in dc.label and not dc.is_leaf:
            children.extend(dc.children)
        else:
            children.append(dc)
    return Tree(t.label, tuple(children))


def binarize_corpus(trees: Sequence[Tree]) -> list[Tree]:
    return [binarize_tree(t) for t in trees]


def binarize_rule(rule: Rule) -> list[Rule]:
    if len(rule.rhs) <= 2:
        return [rule]
    _check_label(rule.lhs)
    for sym in rule.rhs:
        _check_label(sym)
    out = []
    lhs, rhs = rule.lhs, list(rule.rhs)
    while len(rhs) > 2:
        tail = lhs + SEPARATOR + rhs[0]
        out.append(Rule(lhs, (rhs[0], tail)))
        lhs, rhs = tail, rhs[1:]
    out.append(Rule(lhs, tuple(rhs)))
    return out


def binarize_pcfg(model: PcfgModel) -> PcfgModel:
    """Count-level binarization; the resulting PCFG assigns every tree the
    same probability as the n-ary model assigns its debinarized form."""
    counts: dict[Rule, int] = defaultdict(int)
    for rule, c in model.counts.items():
        for part in binarize_rule(rule):
            counts[part] += c
    return PcfgModel(dict(counts), model.start)


def is_binarized_symbol(label: str) -> bool:
    return SEPARATOR in label
