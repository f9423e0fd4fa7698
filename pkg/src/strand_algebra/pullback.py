"""Pullback of strand diagrams along maps of free groups.

Each source strand is cut into intervals, one per letter of its word, read
bottom to top. Every chord endpoint on a target strand lifts independently to
any interval covering it; intervals of inverse letters reverse the order and
contribute a sign per endpoint. An uncovered strand kills the diagram.
"""
from __future__ import annotations

import itertools
import logging

from src.diagram.models import ChordDiagram, LinComb, from_words
from src.errors import CellMismatchError
from src.skeleton.catalog import strands
from src.strand_algebra.free_group import FreeGroupMap

logger = logging.getLogger(__name__)


def _covers(beta: FreeGroupMap) -> dict[int, list[tuple[int, int, int]]]:
    """Target strand -> intervals ``(source strand, interval index, sign)`` covering it."""
    covers: dict[int, list[tuple[int, int, int]]] = {j: [] for j in range(1, beta.target_rank + 1)}
    for i, word in enumerate(beta.words, start=1):
        for t, (g, e) in enumerate(word):
            covers[g].append((i, t, e))
    return covers


def lift_diagram(beta: FreeGroupMap, d: ChordDiagram) -> list[tuple[int, ChordDiagram]]:
    target = strands(beta.source_rank)
    covers = _covers(beta)
    words = d.words()
    endpoints: list[tuple[int, object]] = []
    for j in range(1, beta.target_rank + 1):
        for label in words.get(str(j), []):
            endpoints.append((j, label))
    choices = []
    for j, _ in endpoints:
        if not covers[j]:
            return []
        choices.append(covers[j])

    out: list[tuple[int, ChordDiagram]] = []
    for pick in itertools.product(*choices):
        intervals: dict[tuple[int, int], list] = {}
        sign = 1
        for (j, label), (i, t, e) in zip(endpoints, pick):
            intervals.setdefault((i, t), []).append(label)
            if e < 0:
                sign = -sign
        lifted: dict[str, list] = {}
        for (i, t) in sorted(intervals):
            labels = intervals[(i, t)]
            e = beta.words[i - 1][t][1]
            lifted.setdefault(str(i), []).extend(labels if e > 0 else reversed(labels))
        out.append((sign, from_words(lifted, target)))
    return out


def pullback(beta: FreeGroupMap, v: LinComb) -> LinComb:
    """Sum of all lifts; the result lives on ``strands(beta.source_rank)``."""
    if v.skeleton != strands(beta.target_rank):
        raise CellMismatchError(
            f"pullback along a map into F_{beta.target_rank} needs a combination on {beta.target_rank} strands"
        )
    return v.map_terms(lambda d: lift_diagram(beta, d), strands(beta.source_rank))
