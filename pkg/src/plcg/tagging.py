"""Factored part-of-speech probability for a word in left-corner context.

P(p | w, gc, p-2, p-1) is approximated by
P(p | w, gc) * P(p | p-2, p-1) / P(p), renormalized over the preterminals
seen with the word.  All three tables are relative frequencies; unseen
words raise (no smoothing).
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable


class UnseenWordError(KeyError):
    pass


@dataclass
class TaggingStats:
    """Counts over events (word, goal category, p-2, p-1, tag)."""

    word_gc_tag: dict[tuple[str, str], dict[str, int]] = field(
        default_factory=lambda: defaultdict(lambda: defaultdict(int))
    )
    trigram: dict[tuple[str, str], dict[str, int]] = field(
        default_factory=lambda: defaultdict(lambda: defaultdict(int))
    )
    unigram: dict[str, int] = field(default_factory=lambda: defaultdict(int))
    word_tags: dict[str, set[str]] = field(default_factory=lambda: defaultdict(set))

    def add(self, word: str, gc: str, p2: str, p1: str, tag: str, count: int = 1) -> None:
        self.word_gc_tag[(word, gc)][tag] += count
        self.trigram[(p2, p1)][tag] += count
        self.unigram[tag] += count
        self.word_tags[word].add(tag)

    @classmethod
    def from_events(cls, events: Iterable[tuple[str, str, str, str, str]]) -> "TaggingStats":
        stats = cls()
        for word, gc, p2, p1, tag in events:
            stats.add(word, gc, p2, p1, tag)
        return stats

    def p_tag_given_word_gc(self, tag: str, word: str, gc: str) -> float:
        dist = self.word_gc_tag.get((word, gc))
        if not dist:
            return 0.0
        return dist.get(tag, 0) / sum(dist.values())

    def p_tag_given_history(self, tag: str, p2: str, p1: str) -> float:
        dist = self.trigram.get((p2, p1))
        if not dist:
            return 0.0
        return dist.get(tag, 0) / sum(dist.values())

    def p_tag(self, tag: str) -> float:
        total = sum(self.unigram.values())
        return self.unigram.get(tag, 0) / total if total else 0.0


def tag_probability(
    word: str, gc: str, p2: str, p1: str, stats: TaggingStats
) -> dict[str, float]:
    """Distribution over candidate preterminals of ``word``."""
    candidates = stats.word_tags.get(word)
    if not candidates:
        raise UnseenWordError(word)
    scores: dict[str, float] = {}
    for tag in sorted(candidates):
        prior = stats.p_tag(tag)
        if prior == 0.0:
            continue
        scores[tag] = (
            stats.p_tag_given_word_gc(tag, word, gc)
            * stats.p_tag_given_history(tag, p2, p1)
            / prior
        )
    total = sum(scores.values())
    if total == 0.0:
        return {tag: 0.0 for tag in scores}
    return {tag: s / total for tag, s in scores.items()}
