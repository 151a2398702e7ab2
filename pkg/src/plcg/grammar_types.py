"""Rule and model types shared across induction, parsing, and serialization.

All models store raw counts; probabilities are derived, so re-normalization
is checkable after a save/load round trip.  No smoothing anywhere: unseen
events keep probability zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

NEG_INF = float("-inf")


@dataclass(frozen=True, order=True)
class Rule:
    lhs: str
    rhs: tuple[str, ...]

    def __post_init__(self):
        if not self.rhs:
            raise ValueError("rule with empty right-hand side")

    def __str__(self) -> str:
        return "%s -> %s" % (self.lhs, " ".join(self.rhs))


@dataclass
class PcfgModel:
    """Relative-frequency PCFG: counts per local tree, conditioned on the
    mother category."""

    counts: dict[Rule, int]
    start: str

    def __post_init__(self):
        self._lhs_totals: dict[str, int] = {}
        for rule, c in self.counts.items():
            self._lhs_totals[rule.lhs] = self._lhs_totals.get(rule.lhs, 0) + c

    @property
    def rules(self) -> Iterable[Rule]:
        return self.counts.keys()

    def lhs_total(self, lhs: str) -> int:
        return self._lhs_totals.get(lhs, 0)

    def prob(self, rule: Rule) -> float:
        c = self.counts.get(rule, 0)
        return c / self._lhs_totals[rule.lhs] if c else 0.0

    def exact_prob(self, rule: Rule) -> Fraction:
        c = self.counts.get(rule, 0)
        return Fraction(c, self._lhs_totals[rule.lhs]) if c else Fraction(0)

    def log_prob(self, rule: Rule) -> float:
        p = self.prob(rule)
        return math.log(p) if p else NEG_INF

    @property
    def nonterminals(self) -> set[str]:
        return set(self._lhs_totals)

    @property
    def symbols(self) -> set[str]:
        syms = set(self._lhs_totals)
        for rule in self.counts:
            syms.update(rule.rhs)
        return syms

    @property
    def terminals(self) -> set[str]:
        return self.symbols - self.nonterminals


def left_corner_closure(rules: Iterable[Rule], extra: Iterable[str] = ()) -> dict[str, frozenset[str]]:
    """For each symbol, the reflexive-transitive set of its possible left
    corners under the given rule set."""
    first: dict[str, set[str]] = {}
    syms: set[str] = set(extra)
    for rule in rules:
        first.setdefault(rule.lhs, set()).add(rule.rhs[0])
        syms.add(rule.lhs)
        syms.update(rule.rhs)
    closure: dict[str, frozenset[str]] = {}
    for sym in syms:
        seen = {sym}
        frontier = [sym]
        while frontier:
            nxt = frontier.pop()
            for corner in first.get(nxt, ()):
                if corner not in seen:
                    seen.add(corner)
                    frontier.append(corner)
        closure[sym] = frozenset(seen)
    return closure


@dataclass
class PlcgModel:
    """The three conditional tables of a probabilistic left-corner grammar.

    shift_counts[gc][lc]: times terminal lc was shifted under goal gc.
    att_counts[(lc, gc)]: (attach events, attach + project events).
    proj_counts[(lc, gc)][rule]: projections of rule from corner lc.
    """

    shift_counts: dict[str, dict[str, int]]
    att_counts: dict[tuple[str, str], tuple[int, int]]
    proj_counts: dict[tuple[str, str], dict[Rule, int]]
    start: str
    lc_closure: dict[str, frozenset[str]] = field(default_factory=dict)

    def __post_init__(self):
        if not self.lc_closure:
            self.lc_closure = left_corner_closure(self.all_rules(), [self.start])

    def all_rules(self) -> set[Rule]:
        out: set[Rule] = set()
        for dist in self.proj_counts.values():
            out.update(dist)
        return out

    def p_shift(self, lc: str, gc: str) -> float:
        dist = self.shift_counts.get(gc)
        if not dist:
            return 0.0
        c = dist.get(lc, 0)
        return c / sum(dist.values()) if c else 0.0

    def p_att(self, lc: str, gc: str) -> float:
        if lc != gc:
            return 0.0
        att, total = self.att_counts.get((lc, gc), (0, 0))
        return att / total if total else 0.0

    def p_lc(self, rule: Rule, lc: str, gc: str) -> float:
        dist = self.proj_counts.get((lc, gc))
        if not dist:
            return 0.0
        c = dist.get(rule, 0)
        return c / sum(dist.values()) if c else 0.0

    def projections(self, lc: str, gc: str) -> dict[Rule, float]:
        dist = self.proj_counts.get((lc, gc))
        if not dist:
            return {}
        total = sum(dist.values())
        return {rule: c / total for rule, c in dist.items()}

    def shift_dist(self, gc: str) -> dict[str, float]:
        dist = self.shift_counts.get(gc)
        if not dist:
            return {}
        total = sum(dist.values())
        return {lc: c / total for lc, c in dist.items()}

    def is_possible_corner(self, corner: str, gc: str) -> bool:
        return corner in self.lc_closure.get(gc, frozenset((gc,)))


# Sentinel rule standing for a bare attach of a shifted terminal in the
# delta model (the only non-projection event at a decision point).
ATTACH_RULE = Rule("<attach>", ("<attach>",))


@dataclass
class DeltaModel:
    """Stack-size conditioned model (composed machine, binary rules).

    delta_counts[(depth, lc, gc)][delta]: stack-size changes observed.
    rule_counts[(lc, gc, depth, delta)][rule]: rules given the delta;
    ATTACH_RULE records a bare terminal attach (delta -2).
    Shifts are still scored by the base model's shift table.
    """

    delta_counts: dict[tuple[int, str, str], dict[int, int]]
    rule_counts: dict[tuple[str, str, int, int], dict[Rule, int]]
    base: PlcgModel

    @property
    def start(self) -> str:
        return self.base.start

    def p_delta(self, delta: int, depth: int, lc: str, gc: str) -> float:
        dist = self.delta_counts.get((depth, lc, gc))
        if not dist:
            return 0.0
        c = dist.get(delta, 0)
        return c / sum(dist.values()) if c else 0.0

    def rule_dist(self, lc: str, gc: str, depth: int, delta: int) -> dict[Rule, float]:
        dist = self.rule_counts.get((lc, gc, depth, delta))
        if not dist:
            return {}
        total = sum(dist.values())
        return {rule: c / total for rule, c in dist.items()}

    def delta_dist(self, depth: int, lc: str, gc: str) -> dict[int, float]:
        dist = self.delta_counts.get((depth, lc, gc))
        if not dist:
            return {}
        total = sum(dist.values())
        return {d: c / total for d, c in dist.items()}


Model = PcfgModel | PlcgModel | DeltaModel


def log(p: float) -> float:
    return math.log(p) if p > 0.0 else NEG_INF
