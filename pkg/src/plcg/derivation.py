"""Left-corner derivations of trees and their replay on the stack machine.

The machine keeps a stack of found constituents and sought ("minus") goal
categories.  A shift is forced exactly when a sought category is on top.
With the compose flag, the attach decision is taken at projection time and
the matching goal is popped immediately, which bounds the stack on purely
left- or right-branching input.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, NamedTuple, Optional, Sequence

from .grammar_types import Rule
from .treebank import Tree


@dataclass(frozen=True)
class LcMove:
    """One elementary operation: shift(symbol), project(rule), or attach.

    ``compose`` marks a projection whose attach decision was taken
    immediately (stack-composition variant)."""

    kind: str  # "shift" | "project" | "attach"
    symbol: Optional[str] = None
    rule: Optional[Rule] = None
    compose: bool = False

    @staticmethod
    def shift(symbol: str) -> "LcMove":
        return LcMove("shift", symbol=symbol)

    @staticmethod
    def project(rule: Rule, compose: bool = False) -> "LcMove":
        return LcMove("project", rule=rule, compose=compose)

    @staticmethod
    def attach() -> "LcMove":
        return LcMove("attach")


class ReplayError(ValueError):
    def __init__(self, index: int, message: str):
        super().__init__("move %d: %s" % (index, message))
        self.index = index


def lc_derivation(t: Tree, compose: bool = False) -> list[LcMove]:
    """The unique left-corner move sequence reconstructing ``t`` from the
    goal ``t.label``."""
    out: list[LcMove] = []
    _derive(t, out, compose)
    return out


def _derive(node: Tree, out: list[LcMove], compose: bool) -> None:
    if node.is_leaf:
        out.append(LcMove.shift(node.label))
        out.append(LcMove.attach())
        return
    # Left spine down to the terminal corner.
    spine = [node]
    while not spine[-1].children[0].is_leaf:
        spine.append(spine[-1].children[0])
    out.append(LcMove.shift(spine[-1].children[0].label))
    for nd in reversed(spine):
        rule = Rule(nd.label, tuple(c.label for c in nd.children))
        is_top = nd is node
        out.append(LcMove.project(rule, compose=compose and is_top))
        for sibling in nd.children[1:]:
            _derive(sibling, out, compose)
    if not compose:
        out.append(LcMove.attach())


class _Node:
    __slots__ = ("label", "children")

    def __init__(self, label: str):
        self.label = label
        self.children: list["_Node"] = []

    def freeze(self) -> Tree:
        return Tree(self.label, tuple(c.freeze() for c in self.children))


def replay(moves: Sequence[LcMove], start: str) -> Tree:
    """Run a complete derivation on the stack machine and rebuild the tree.

    Inverse of :func:`lc_derivation` for both the base and compose variants.
    """
    holder = _Node("")
    # Entries: ("s", category, parent node) or ("f", node).
    stack: list[tuple] = [("s", start, holder)]
    for i, mv in enumerate(moves):
        if mv.kind == "shift":
            if not stack or stack[-1][0] != "s":
                raise ReplayError(i, "shift without a sought category on top")
            stack.append(("f", _Node(mv.symbol)))
        elif mv.kind == "project":
            rule = mv.rule
            if not stack or stack[-1][0] != "f":
                raise ReplayError(i, "projection without a left corner")
            corner = stack.pop()[1]
            if corner.label != rule.rhs[0]:
                raise ReplayError(
                    i, "left corner %s does not start %s" % (corner.label, rule)
                )
            node = _Node(rule.lhs)
            node.children.append(corner)
            if mv.compose:
                if not stack or stack[-1][0] != "s":
                    raise ReplayError(i, "composed projection without a goal")
                _, cat, parent = stack.pop()
                if cat != rule.lhs:
                    raise ReplayError(i, "%s does not fill goal %s" % (rule.lhs, cat))
                parent.children.append(node)
            else:
                stack.append(("f", node))
            for sym in reversed(rule.rhs[1:]):
                stack.append(("s", sym, node))
        elif mv.kind == "attach":
            if len(stack) < 2 or stack[-1][0] != "f" or stack[-2][0] != "s":
                raise ReplayError(i, "attach needs a found item over a goal")
            found = stack.pop()[1]
            _, cat, parent = stack.pop()
            if found.label != cat:
                raise ReplayError(i, "%s does not fill goal %s" % (found.label, cat))
            parent.children.append(found)
        else:
            raise ReplayError(i, "unknown move kind %r" % mv.kind)
    if stack:
        raise ReplayError(len(moves), "incomplete derivation: %d entries left" % len(stack))
    if len(holder.children) != 1:
        raise ReplayError(len(moves), "derivation did not build exactly one tree")
    return holder.children[0].freeze()


class Event(NamedTuple):
    """A move together with its conditioning context.

    ``lc`` is None for shifts.  ``depth`` is the number of stack entries
    beneath the exposed left corner (for shifts, the full stack size)."""

    move: LcMove
    lc: Optional[str]
    gc: str
    depth: int


def derivation_events(t: Tree, compose: bool = False) -> Iterator[Event]:
    """Replay the gold derivation symbolically, yielding each move with the
    (left corner, goal, stack depth) context it was taken in."""
    # Entries: ("s", cat) or ("f", cat).
    stack: list[tuple[str, str]] = [("s", t.label)]
    for mv in lc_derivation(t, compose=compose):
        if mv.kind == "shift":
            gc = stack[-1][1]
            yield Event(mv, None, gc, len(stack))
            stack.append(("f", mv.symbol))
        elif mv.kind == "project":
            lc = stack[-1][1]
            gc = stack[-2][1]
            yield Event(mv, lc, gc, len(stack) - 1)
            stack.pop()
            if mv.compose:
                stack.pop()
            else:
                stack.append(("f", mv.rule.lhs))
            for sym in reversed(mv.rule.rhs[1:]):
                stack.append(("s", sym))
        else:  # attach
            lc = stack[-1][1]
            gc = stack[-2][1]
            yield Event(mv, lc, gc, len(stack) - 1)
            stack.pop()
            stack.pop()


def stack_delta(move: LcMove) -> int:
    """Net stack-size change of a composed-machine operation (binary rules:
    between -2 and +1)."""
    if move.kind == "shift":
        return 1
    if move.kind == "attach":
        return -2
    arity = len(move.rule.rhs)
    return (arity - 1) - (2 if move.compose else 0)


def max_stack_depth(t: Tree, compose: bool = False) -> int:
    """Peak stack size over the gold derivation of ``t``."""
    depth = peak = 1
    for ev in derivation_events(t, compose=compose):
        depth += stack_delta(ev.move)
        peak = max(peak, depth)
    return peak
