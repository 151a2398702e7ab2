"""Exhaustive chart parsing of tag sequences under a PCFG.

The model is binarized internally (probability-preserving tail merging),
parsed with a CKY-style chart, and the Viterbi tree is debinarized before
being returned.  No pruning: this module is the exactness baseline.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import _kernels
from .grammar_types import NEG_INF, PcfgModel, Rule
from .induction import pcfg_tree_log_prob
from .transforms import binarize_pcfg, debinarize_tree
from .treebank import Tree, write_tree


class TooManyParsesError(ValueError):
    pass


class UnaryCycleError(ValueError):
    pass


@dataclass
class CompiledPcfg:
    """Binarized, integer-indexed form of a PCFG for the chart kernels."""

    model: PcfgModel
    sym_ids: dict[str, int]
    syms: list[str]
    bin_rules: list[Rule]
    un_rules: list[Rule]
    bin_lhs: np.ndarray
    bin_r1: np.ndarray
    bin_r2: np.ndarray
    bin_lp: np.ndarray
    un_lhs: np.ndarray
    un_child: np.ndarray
    un_lp: np.ndarray
    start_id: int


def compile_pcfg(model: PcfgModel) -> CompiledPcfg:
    binarized = binarize_pcfg(model)
    syms = sorted(binarized.symbols | {binarized.start})
    ids = {s: i for i, s in enumerate(syms)}
    bin_rules = sorted(r for r in binarized.rules if len(r.rhs) == 2)
    un_rules = sorted(r for r in binarized.rules if len(r.rhs) == 1)
    return CompiledPcfg(
        model=binarized,
        sym_ids=ids,
        syms=syms,
        bin_rules=bin_rules,
        un_rules=un_rules,
        bin_lhs=np.array([ids[r.lhs] for r in bin_rules], dtype=np.int64),
        bin_r1=np.array([ids[r.rhs[0]] for r in bin_rules], dtype=np.int64),
        bin_r2=np.array([ids[r.rhs[1]] for r in bin_rules], dtype=np.int64),
        bin_lp=np.array([binarized.log_prob(r) for r in bin_rules]),
        un_lhs=np.array([ids[r.lhs] for r in un_rules], dtype=np.int64),
        un_child=np.array([ids[r.rhs[0]] for r in un_rules], dtype=np.int64),
        un_lp=np.array([binarized.log_prob(r) for r in un_rules]),
        start_id=ids[binarized.start],
    )


# Keyed by id() but holding the model itself: the strong reference keeps
# the id from being recycled while the entry is alive.
_COMPILE_CACHE: dict[int, tuple[PcfgModel, CompiledPcfg]] = {}


def _compiled(model: PcfgModel) -> CompiledPcfg:
    key = id(model)
    hit = _COMPILE_CACHE.get(key)
    if hit is not None and hit[0] is model:
        return hit[1]
    if len(_COMPILE_CACHE) > 64:
        _COMPILE_CACHE.clear()
    compiled = compile_pcfg(model)
    _COMPILE_CACHE[key] = (model, compiled)
    return compiled


def _term_ids(tags: Sequence[str], g: CompiledPcfg) -> Optional[np.ndarray]:
    try:
        return np.array([g.sym_ids[t] for t in tags], dtype=np.int64)
    except KeyError:
        return None


def viterbi_parse(tags: Sequence[str], model: PcfgModel) -> Optional[tuple[Tree, float]]:
    """Highest-probability parse of the tag sequence, or None when the
    grammar does not cover it."""
    if not tags:
        raise ValueError("empty tag sequence")
    g = _compiled(model)
    terms = _term_ids(tags, g)
    if terms is None:
        return None
    n, n_syms = len(tags), len(g.syms)
    best = np.full((n + 1, n + 1, n_syms), NEG_INF)
    back_op = np.full((n + 1, n + 1, n_syms), -1, dtype=np.int64)
    back_split = np.full((n + 1, n + 1, n_syms), -1, dtype=np.int64)
    _kernels.viterbi_fill(
        n, n_syms, terms, g.bin_lhs, g.bin_r1, g.bin_r2, g.bin_lp,
        g.un_lhs, g.un_child, g.un_lp, best, back_op, back_split,
    )
    score = best[0, n, g.start_id]
    if score == NEG_INF:
        return None
    tree = _extract(g, tags, back_op, back_split, 0, n, g.start_id)
    return debinarize_tree(tree), float(score)


def _extract(g: CompiledPcfg, tags, back_op, back_split, i, j, sym) -> Tree:
    op = back_op[i, j, sym]
    if op == -1:
        return Tree(tags[i])
    if op <= -2:
        rule = g.un_rules[-2 - op]
        return Tree(rule.lhs, (_extract(g, tags, back_op, back_split, i, j, g.sym_ids[rule.rhs[0]]),))
    rule = g.bin_rules[op]
    m = back_split[i, j, sym]
    left = _extract(g, tags, back_op, back_split, i, m, g.sym_ids[rule.rhs[0]])
    right = _extract(g, tags, back_op, back_split, m, j, g.sym_ids[rule.rhs[1]])
    return Tree(rule.lhs, (left, right))


def sentence_probability(tags: Sequence[str], model: PcfgModel) -> float:
    """Inside probability: the summed probability of all parses."""
    if not tags:
        raise ValueError("empty tag sequence")
    g = _compiled(model)
    terms = _term_ids(tags, g)
    if terms is None:
        return 0.0
    n, n_syms = len(tags), len(g.syms)
    inside = np.full((n + 1, n + 1, n_syms), NEG_INF)
    _kernels.inside_fill(
        n, n_syms, terms, g.bin_lhs, g.bin_r1, g.bin_r2, g.bin_lp,
        g.un_lhs, g.un_child, g.un_lp, inside, 200, 1e-14,
    )
    lp = inside[0, n, g.start_id]
    return math.exp(lp) if lp != NEG_INF else 0.0


def enumerate_parses(
    tags: Sequence[str], model: PcfgModel, limit: int = 10000
) -> list[tuple[Tree, float]]:
    """All distinct parses with exact probabilities; test oracle for small
    grammars.  Raises when the parse count exceeds ``limit`` or the grammar
    has a unary cycle over the input."""
    if not tags:
        raise ValueError("empty tag sequence")
    g = _compiled(model)
    if any(t not in g.sym_ids for t in tags):
        return []
    n = len(tags)
    memo: dict[tuple[int, int, str], list[Tree]] = {}
    in_progress: set[tuple[int, int, str]] = set()

    def derive(i: int, j: int, sym: str) -> list[Tree]:
        key = (i, j, sym)
        if key in memo:
            return memo[key]
        if key in in_progress:
            raise UnaryCycleError("unary cycle at %s" % (key,))
        in_progress.add(key)
        out: list[Tree] = []
        if j == i + 1 and tags[i] == sym:
            out.append(Tree(sym))
        for r in g.un_rules:
            if r.lhs == sym:
                for sub in derive(i, j, r.rhs[0]):
                    out.append(Tree(sym, (sub,)))
        for r in g.bin_rules:
            if r.lhs != sym:
                continue
            for m in range(i + 1, j):
                for left in derive(i, m, r.rhs[0]):
                    for right in derive(m, j, r.rhs[1]):
                        out.append(Tree(sym, (left, right)))
        in_progress.discard(key)
        if len(out) > limit:
            raise TooManyParsesError("more than %d parses" % limit)
        memo[key] = out
        return out

    trees = derive(0, n, model.start)
    if len(trees) > limit:
        raise TooManyParsesError("more than %d parses" % limit)
    results = []
    for bt in trees:
        t = debinarize_tree(bt)
        lp = pcfg_tree_log_prob(t, model)
        results.append((t, math.exp(lp) if lp != NEG_INF else 0.0))
    results.sort(key=lambda pair: (-pair[1], write_tree(pair[0])))
    return results
