"""Timing comparison of the chart kernels: compiled (numba) vs pure Python.

Runs the Viterbi and inside fills on synthetic sentences of increasing
length under a grammar induced from the bundled corpus generator.

Usage: python3 benchmarks/bench_chart.py [--sizes 10 20 40] [--repeats 5]
"""

import argparse
import time

import numpy as np

from plcg import _kernels
from plcg.chart import compile_pcfg
from plcg.corpus import generate_corpus
from plcg.grammar_types import NEG_INF
from plcg.induction import induce_pcfg
from plcg.treebank import PreprocessOptions, pos_yield, preprocess_corpus, to_pos_tree


def build_inputs(n_tags):
    trees = generate_corpus(500, seed=11)
    trees, _ = preprocess_corpus(trees, PreprocessOptions())
    trees = [to_pos_tree(t) for t in trees]
    model = induce_pcfg(trees)
    g = compile_pcfg(model)
    tags = []
    for t in trees:
        tags.extend(pos_yield(t))
        if len(tags) >= n_tags:
            break
    terms = np.array([g.sym_ids[t] for t in tags[:n_tags]], dtype=np.int64)
    return g, terms


def time_fill(fill, g, terms, repeats, inside):
    n = len(terms)
    n_syms = len(g.syms)
    best = time.perf_counter() * 0 + float("inf")
    for _ in range(repeats):
        chart = np.full((n + 1, n + 1, n_syms), NEG_INF)
        t0 = time.perf_counter()
        if inside:
            fill(n, n_syms, terms, g.bin_lhs, g.bin_r1, g.bin_r2, g.bin_lp,
                 g.un_lhs, g.un_child, g.un_lp, chart, 200, 1e-14)
        else:
            back_op = np.full((n + 1, n + 1, n_syms), -1, dtype=np.int64)
            back_split = np.full((n + 1, n + 1, n_syms), -1, dtype=np.int64)
            fill(n, n_syms, terms, g.bin_lhs, g.bin_r1, g.bin_r2, g.bin_lp,
                 g.un_lhs, g.un_child, g.un_lp, chart, back_op, back_split)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[10, 20, 40, 80])
    ap.add_argument("--repeats", type=int, default=5)
    args = ap.parse_args()

    if not _kernels.USE_NUMBA:
        print("note: numba unavailable or disabled; both columns run pure Python")

    print("%-8s %-8s %12s %12s %8s" % ("kernel", "length", "numba (s)", "python (s)", "ratio"))
    for inside in (False, True):
        name = "inside" if inside else "viterbi"
        jit = _kernels.inside_fill if inside else _kernels.viterbi_fill
        py = _kernels.inside_fill_py if inside else _kernels.viterbi_fill_py
        for n in args.sizes:
            g, terms = build_inputs(n)
            t_jit = time_fill(jit, g, terms, args.repeats, inside)
            t_py = time_fill(py, g, terms, args.repeats, inside)
            ratio = t_py / t_jit if t_jit > 0 else float("inf")
            print("%-8s %-8d %12.5f %12.5f %7.1fx" % (name, n, t_jit, t_py, ratio))


if __name__ == "__main__":
    main()
