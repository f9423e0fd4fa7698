from __future__ import annotations

import logging
from functools import lru_cache
from itertools import combinations
from typing import Iterator

from src.diagram.models import ChordDiagram, from_words
from src.skeleton.models import Skeleton

logger = logging.getLogger(__name__)


def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """All ways to write ``total`` as an ordered sum of ``parts`` non-negative integers."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    # stars and bars
    for bars in combinations(range(total + parts - 1), parts - 1):
        prev = -1
        out = []
        for b in bars:
            out.append(b - prev - 1)
            prev = b
        out.append(total + parts - 1 - prev - 1)
        yield tuple(out)


def perfect_matchings(points: list[int]) -> Iterator[list[tuple[int, int]]]:
    if not points:
        yield []
        return
    first = points[0]
    for i in range(1, len(points)):
        rest = points[1:i] + points[i + 1:]
        for m in perfect_matchings(rest):
            yield [(first, points[i]), *m]


def _placements(s: Skeleton, count: int) -> Iterator[list[str]]:
    """For each distribution of ``count`` ordered points on the segments, the segment of each point."""
    segs = s.segments
    for comp in compositions(count, len(segs)):
        owner: list[str] = []
        for seg, k in zip(segs, comp):
            owner.extend([seg] * k)
        yield owner


def _diagram(s: Skeleton, owner: list[str], matching: list[tuple[int, int]], marks: list[int]) -> ChordDiagram:
    label = [None] * len(owner)
    for k, (a, b) in enumerate(matching):
        label[a] = label[b] = k
    for k, m in enumerate(marks):
        label[m] = f"M{k}"
    words: dict[str, list] = {}
    for seg, lab in zip(owner, label):
        words.setdefault(seg, []).append(lab)
    return from_words(words, s)


def enumerate_diagrams(s: Skeleton, n: int) -> list[ChordDiagram]:
    """Every canonical degree-``n`` diagram on ``s`` exactly once, in a fixed order."""
    return list(_enumerate_cached(s, n, 0))


def enumerate_marked(s: Skeleton, chords: int, marks: int = 1) -> list[ChordDiagram]:
    """Configurations of ``chords`` chords plus ``marks`` labelled single points."""
    return list(_enumerate_cached(s, chords, marks))


@lru_cache(maxsize=64)
def _enumerate_cached(s: Skeleton, n: int, marks: int) -> tuple[ChordDiagram, ...]:
    if n < 0:
        raise ValueError("degree must be non-negative")
    count = 2 * n + marks
    seen: set[ChordDiagram] = set()
    for owner in _placements(s, count):
        for mark_slots in _ordered_choices(list(range(count)), marks):
            rest = [i for i in range(count) if i not in mark_slots]
            for matching in perfect_matchings(rest):
                seen.add(_diagram(s, owner, matching, list(mark_slots)))
    out = tuple(sorted(seen, key=ChordDiagram.sort_key))
    logger.debug("enumerated %d diagrams (degree %d, %d marks)", len(out), n, marks)
    return out


def _ordered_choices(items: list[int], k: int) -> Iterator[tuple[int, ...]]:
    if k == 0:
        yield ()
        return
    for i in items:
        for tail in _ordered_choices([x for x in items if x != i], k - 1):
            yield (i, *tail)


def count_naive(s: Skeleton, n: int) -> int:
    """Generate-and-dedupe oracle: label every slot arrangement, then identify canonical forms."""
    from itertools import permutations

    count = 2 * n
    seen: set[ChordDiagram] = set()
    for owner in _placements(s, count):
        for perm in permutations(range(count)):
            label = [perm[i] // 2 for i in range(count)]
            words: dict[str, list] = {}
            for seg, lab in zip(owner, label):
                words.setdefault(seg, []).append(lab)
            seen.add(from_words(words, s))
    return len(seen)
