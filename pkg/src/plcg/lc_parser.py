"""Probabilistic left-corner beam parser over tag sequences.

The parser keeps one beam per word boundary: all states that have consumed
i words compete, attach/project moves are expanded to a fixpoint within the
boundary, and the k best states survive to shift the next tag.  Move lists
are held in a prefix-sharing store so states are cheap to branch.

Variants:
  base    - attach decided when a completed corner sits on its goal.
  compose - attach decided at projection time (bounded stack on pure
            left/right branching input).
  delta   - compose machine scored by the stack-size conditioned model.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .derivation import LcMove, replay
from .grammar_types import ATTACH_RULE, NEG_INF, DeltaModel, PlcgModel
from .transforms import debinarize_tree, is_binarized_symbol
from .treebank import Tree, write_tree


class MoveStore:
    """Prefix-sharing store of move sequences: each handle points at a node
    holding (move, parent handle)."""

    ROOT = -1

    def __init__(self):
        self._moves: list[LcMove] = []
        self._parents: list[int] = []

    def append(self, handle: int, move: LcMove) -> int:
        self._moves.append(move)
        self._parents.append(handle)
        return len(self._moves) - 1

    def sequence(self, handle: int) -> list[LcMove]:
        out = []
        while handle != MoveStore.ROOT:
            out.append(self._moves[handle])
            handle = self._parents[handle]
        out.reverse()
        return out

    def __len__(self) -> int:
        return len(self._moves)


# Stack entries: ("s", category) sought, ("f", category, spent) found, where
# spent marks a corner whose attach decision was already taken (compose).
SOUGHT, FOUND = "s", "f"


@dataclass(frozen=True)
class ParserState:
    stack: tuple
    moves: int  # handle into the shared MoveStore
    log_prob: float
    consumed: int
    max_stack: int

    @property
    def complete(self) -> bool:
        return not self.stack

    @property
    def needs_shift(self) -> bool:
        return bool(self.stack) and self.stack[-1][0] == SOUGHT


def initial_state(start: str) -> ParserState:
    return ParserState(((SOUGHT, start),), MoveStore.ROOT, 0.0, 0, 1)


def _push(state: ParserState, store: MoveStore, move: LcMove,
          stack: tuple, lp_inc: float, consumed: int) -> ParserState:
    return ParserState(
        stack=stack,
        moves=store.append(state.moves, move),
        log_prob=state.log_prob + lp_inc,
        consumed=consumed,
        max_stack=max(state.max_stack, len(stack)),
    )


def shift_successor(
    state: ParserState, tag: str, model: PlcgModel | DeltaModel, store: MoveStore
) -> Optional[ParserState]:
    """The single forced shift when a sought category is exposed."""
    base = model.base if isinstance(model, DeltaModel) else model
    gc = state.stack[-1][1]
    p = base.p_shift(tag, gc)
    if p == 0.0:
        return None
    stack = state.stack + ((FOUND, tag, False),)
    return _push(state, store, LcMove.shift(tag), stack, math.log(p), state.consumed + 1)


def successors(
    state: ParserState, model: PlcgModel | DeltaModel, store: MoveStore, variant: str = "base"
) -> Iterator[ParserState]:
    """Attach/project successors of a state whose top is a found corner.

    Probability increments over all successors sum to one at any context
    seen in training."""
    if state.needs_shift or state.complete:
        return
    if variant == "delta":
        yield from _delta_successors(state, model, store)
        return
    _, lc, spent = state.stack[-1]
    gc = state.stack[-2][1]
    p_att = 0.0 if spent else model.p_att(lc, gc)
    if p_att > 0.0:
        stack = state.stack[:-2]
        yield _push(state, store, LcMove.attach(), stack, math.log(p_att), state.consumed)
    for rule, p_rule in model.projections(lc, gc).items():
        if not model.is_possible_corner(rule.lhs, gc):
            continue
        p = (1.0 - p_att) * p_rule
        if p == 0.0:
            continue
        soughts = tuple((SOUGHT, sym) for sym in reversed(rule.rhs[1:]))
        if variant == "compose" and rule.lhs == gc:
            # Decide the attachment now, with the same conditioning the base
            # variant would use once the constituent completes.
            p_att_new = model.p_att(rule.lhs, gc)
            if p_att_new > 0.0:
                stack = state.stack[:-2] + soughts
                yield _push(
                    state, store, LcMove.project(rule, compose=True), stack,
                    math.log(p * p_att_new), state.consumed,
                )
            if p_att_new < 1.0:
                stack = state.stack[:-1] + ((FOUND, rule.lhs, True),) + soughts
                yield _push(
                    state, store, LcMove.project(rule), stack,
                    math.log(p * (1.0 - p_att_new)), state.consumed,
                )
        else:
            stack = state.stack[:-1] + ((FOUND, rule.lhs, False),) + soughts
            yield _push(state, store, LcMove.project(rule), stack, math.log(p), state.consumed)


def _delta_successors(
    state: ParserState, model: DeltaModel, store: MoveStore
) -> Iterator[ParserState]:
    _, lc, _ = state.stack[-1]
    gc = state.stack[-2][1]
    depth = len(state.stack) - 1
    for delta, p_delta in model.delta_dist(depth, lc, gc).items():
        for rule, p_rule in model.rule_dist(lc, gc, depth, delta).items():
            p = p_delta * p_rule
            if p == 0.0:
                continue
            if rule == ATTACH_RULE:
                stack = state.stack[:-2]
                yield _push(state, store, LcMove.attach(), stack, math.log(p), state.consumed)
                continue
            attach = delta in (-2, -1)
            soughts = tuple((SOUGHT, sym) for sym in reversed(rule.rhs[1:]))
            if attach:
                if rule.lhs != gc:
                    continue
                stack = state.stack[:-2] + soughts
                move = LcMove.project(rule, compose=True)
            else:
                stack = state.stack[:-1] + ((FOUND, rule.lhs, True),) + soughts
                move = LcMove.project(rule)
            yield _push(state, store, move, stack, math.log(p), state.consumed)


def _closure(
    states: list[ParserState], model, store: MoveStore, variant: str,
    max_nonshift: int, state_limit: Optional[int] = None,
) -> list[ParserState]:
    """Expand attach/project moves to a fixpoint within a word boundary."""
    out = list(states)
    frontier = list(states)
    rounds = 0
    while frontier and rounds < max_nonshift:
        nxt: list[ParserState] = []
        for st in frontier:
            nxt.extend(successors(st, model, store, variant))
        out.extend(nxt)
        if state_limit is not None and len(out) > state_limit:
            raise TooManyDerivationsError("state count exceeded %d" % state_limit)
        frontier = nxt
        rounds += 1
    return out


class TooManyDerivationsError(ValueError):
    pass


class IncompleteDerivationError(ValueError):
    pass


def beam_parse(
    tags: Sequence[str],
    model: PlcgModel | DeltaModel,
    k: int,
    n_best: int = 1,
    variant: str = "base",
    max_nonshift: int = 50,
) -> list[tuple[Tree, float]]:
    """Up to ``n_best`` complete parses, best first.  Not guaranteed optimal
    unless ``k`` exceeds the number of reachable states."""
    if k < 1 or n_best < 1:
        raise ValueError("k and n_best must be >= 1")
    if not tags:
        raise ValueError("empty tag sequence")
    store = MoveStore()
    if variant == "delta" and not isinstance(model, DeltaModel):
        raise TypeError("delta variant needs a DeltaModel")
    beam = [initial_state(model.start)]
    for i, tag in enumerate(tags):
        pool = _closure(beam, model, store, variant, max_nonshift)
        pool.sort(key=lambda s: (-s.log_prob, s.moves))
        pool = pool[:k]
        beam = []
        for st in pool:
            if st.needs_shift:
                shifted = shift_successor(st, tag, model, store)
                if shifted is not None:
                    beam.append(shifted)
        if not beam:
            return []
    final = _closure(beam, model, store, variant, max_nonshift)
    complete = [st for st in final if st.complete]
    complete.sort(key=lambda s: (-s.log_prob, s.moves))
    return _n_best_trees(complete, model, store, n_best)


def _n_best_trees(
    complete: list[ParserState], model, store: MoveStore, n_best: int
) -> list[tuple[Tree, float]]:
    # Distinct derivations of one tree only arise through binarization;
    # after debinarizing, keep the best score per tree.
    out: list[tuple[Tree, float]] = []
    seen: dict[str, int] = {}
    for st in complete:
        tree = recover_tree(st.moves, model.start, store)
        key = write_tree(tree)
        if key in seen:
            continue
        seen[key] = len(out)
        out.append((tree, st.log_prob))
        if len(out) == n_best:
            break
    return out


def exhaustive_lc_parse(
    tags: Sequence[str],
    model: PlcgModel | DeltaModel,
    variant: str = "base",
    max_nonshift: int = 50,
    state_limit: int = 200000,
) -> list[tuple[Tree, float]]:
    """Every complete derivation with its probability; oracle for small
    fixtures.  Each tree of the model appears through exactly one
    derivation (before binarization)."""
    if not tags:
        raise ValueError("empty tag sequence")
    store = MoveStore()
    beam = [initial_state(model.start)]
    for tag in tags:
        pool = _closure(beam, model, store, variant, max_nonshift, state_limit)
        beam = []
        for st in pool:
            if st.needs_shift:
                shifted = shift_successor(st, tag, model, store)
                if shifted is not None:
                    beam.append(shifted)
        if not beam:
            return []
    final = _closure(beam, model, store, variant, max_nonshift, state_limit)
    complete = [st for st in final if st.complete]
    complete.sort(key=lambda s: (-s.log_prob, s.moves))
    return [(recover_tree(st.moves, model.start, store), st.log_prob) for st in complete]


def recover_tree(handle: int, start: str, store: MoveStore) -> Tree:
    """Replay a stored derivation into a tree, undoing binarization when the
    moves mention introduced symbols."""
    moves = store.sequence(handle)
    try:
        tree = replay(moves, start)
    except Exception as exc:
        raise IncompleteDerivationError(str(exc)) from exc
    if any(
        mv.rule is not None and is_binarized_symbol(mv.rule.lhs) for mv in moves
    ):
        tree = debinarize_tree(tree)
    return tree


def best_log_prob(results: list[tuple[Tree, float]]) -> float:
    return results[0][1] if results else NEG_INF
