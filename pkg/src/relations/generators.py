from __future__ import annotations

import logging

from src.diagram.enumerate import enumerate_marked
from src.diagram.models import LinComb, from_words
from src.skeleton.models import Skeleton

logger = logging.getLogger(__name__)

# Bump whenever relation conventions change; cached bases embed it.
RELATION_VERSION = "4t-vi/1"

_MARK = "M0"


def _normalized(rel: LinComb) -> LinComb:
    items = rel.items()
    if items and items[0][1] < 0:
        return -rel
    return rel


def _dedupe(relations: list[LinComb]) -> list[LinComb]:
    seen: dict[frozenset, LinComb] = {}
    for rel in relations:
        if rel.is_zero():
            continue
        rel = _normalized(rel)
        key = frozenset((d, c) for d, c in rel.items())
        seen.setdefault(key, rel)
    return sorted(seen.values(), key=lambda r: [d.sort_key() for d in r.support()])


def _with_moving_chord(words: dict[str, list], label: int, seg: str, index: int) -> dict[str, list]:
    """Turn the mark into one end of chord ``label`` and put its other end at ``seg[index]``."""
    out = {k: [label if x == _MARK else x for x in v] for k, v in words.items()}
    out.setdefault(seg, []).insert(index, label)
    return out


def four_t_relations(s: Skeleton, n: int) -> list[LinComb]:
    """Four-term relations of degree ``n``.

    A fixed chord f and a moving chord with one end pinned at a marked point;
    the free end goes just after and just before each end of f. The relation is
    after(F1) - before(F1) + after(F2) - before(F2).
    """
    if n < 2:
        return []
    out: list[LinComb] = []
    for config in enumerate_marked(s, n - 1, 1):
        words = config.words()
        moving = n - 1
        for f in range(n - 1):
            rel = LinComb.zero(s)
            for seg, labels in words.items():
                for idx, lab in enumerate(labels):
                    if lab != f:
                        continue
                    rel.add_term(from_words(_with_moving_chord(words, moving, seg, idx + 1), s), 1)
                    rel.add_term(from_words(_with_moving_chord(words, moving, seg, idx), s), -1)
            out.append(rel)
    result = _dedupe(out)
    logger.debug("4T: %d relations in degree %d", len(result), n)
    return result


def vi_relations(s: Skeleton, n: int) -> list[LinComb]:
    """Vertex invariance at trivalent vertices, dots and anti-dots.

    The extra chord runs from a free marked point to the end of each edge at the
    vertex; outgoing ends count -1 and incoming ends +1.
    """
    if n < 1:
        return []
    vertices = s.vertices_of_kind("trivalent", "dot", "antidot")
    if not vertices:
        return []
    out: list[LinComb] = []
    moving = n - 1
    for config in enumerate_marked(s, n - 1, 1):
        words = config.words()
        for w in vertices:
            rel = LinComb.zero(s)
            for h, edge, outgoing in s.incident(w):
                index = 0 if outgoing else len(words.get(edge, []))
                rel.add_term(from_words(_with_moving_chord(words, moving, edge, index), s), -1 if outgoing else 1)
            out.append(rel)
    result = _dedupe(out)
    logger.debug("VI: %d relations in degree %d", len(result), n)
    return result


def all_relations(s: Skeleton, n: int) -> list[LinComb]:
    return four_t_relations(s, n) + vi_relations(s, n)

