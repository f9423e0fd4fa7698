"""Direct implementations of doubling, deletion, permutation and reversal of strands."""
from __future__ import annotations

import itertools
from typing import Sequence

from src.diagram.models import ChordDiagram, LinComb, from_words
from src.errors import CellMismatchError
from src.skeleton.catalog import strands


def _strand_count(v: LinComb) -> int:
    if not v.skeleton.is_strand_skeleton:
        raise CellMismatchError("strand maps need a combination on a strand skeleton")
    return v.skeleton.strand_count


def _relabel(d: ChordDiagram, n_out: int, placement: dict[int, int]) -> ChordDiagram | None:
    words = d.words()
    out: dict[str, list] = {}
    for j, labels in words.items():
        k = placement.get(int(j))
        if k is None:
            return None
        out[str(k)] = labels
    return from_words(out, strands(n_out))


def delta(i: int, v: LinComb) -> LinComb:
    """Double strand ``i``; ``i = 0`` or ``n + 1`` adds an empty strand on that side."""
    n = _strand_count(v)
    if not 0 <= i <= n + 1:
        raise ValueError(f"doubling index {i} out of range 0..{n + 1}")
    target = strands(n + 1)

    def image(d: ChordDiagram) -> list[tuple[int, ChordDiagram]]:
        words = d.words()
        if i in (0, n + 1):
            shift = 1 if i == 0 else 0
            return [(1, from_words({str(int(j) + shift): w for j, w in words.items()}, target))]
        base = {str(int(j) + (1 if int(j) > i else 0)): w for j, w in words.items() if int(j) != i}
        doubled = words.get(str(i), [])
        out = []
        for pick in itertools.product((i, i + 1), repeat=len(doubled)):
            lifted = {k: list(w) for k, w in base.items()}
            for label, k in zip(doubled, pick):
                lifted.setdefault(str(k), []).append(label)
            out.append((1, from_words(lifted, target)))
        return out

    return v.map_terms(image, target)


def d(i: int, v: LinComb) -> LinComb:
    """Delete strand ``i``; diagrams with an endpoint on it vanish."""
    n = _strand_count(v)
    if not 1 <= i <= n:
        raise ValueError(f"deletion index {i} out of range 1..{n}")
    placement = {j: j - (1 if j > i else 0) for j in range(1, n + 1) if j != i}

    def image(diagram: ChordDiagram) -> list[tuple[int, ChordDiagram]]:
        out = _relabel(diagram, n - 1, placement)
        return [] if out is None else [(1, out)]

    return v.map_terms(image, strands(n - 1))


def permute(sigma: Sequence[int], v: LinComb) -> LinComb:
    """A chord between strands i and j goes to a chord between sigma(i) and sigma(j)."""
    n = _strand_count(v)
    if sorted(sigma) != list(range(1, n + 1)):
        raise ValueError(f"{tuple(sigma)} is not a permutation of 1..{n}")
    placement = {j: sigma[j - 1] for j in range(1, n + 1)}
    return v.map_terms(lambda diagram: [(1, _relabel(diagram, n, placement))], strands(n))


def switch_all(v: LinComb) -> LinComb:
    """Reverse every strand; each endpoint contributes a sign, so the total sign is +1."""
    n = _strand_count(v)

    def image(diagram: ChordDiagram) -> list[tuple[int, ChordDiagram]]:
        words = {j: list(reversed(w)) for j, w in diagram.words().items()}
        return [((-1) ** (2 * diagram.degree), from_words(words, strands(n)))]

    return v.map_terms(image, strands(n))


def switch_strand(i: int, v: LinComb) -> LinComb:
    """Reverse strand ``i`` alone, with a sign per endpoint on it."""
    n = _strand_count(v)
    key = str(i)

    def image(diagram: ChordDiagram) -> list[tuple[int, ChordDiagram]]:
        words = {j: list(reversed(w)) if j == key else w for j, w in diagram.words().items()}
        return [((-1) ** len(words.get(key, ())), from_words(words, strands(n)))]

    return v.map_terms(image, strands(n))


def parse_permutation(text: str) -> tuple[int, ...]:
    """``231`` or ``2,3,1`` -> (2, 3, 1)."""
    cleaned = text.strip().strip("()")
    parts = cleaned.split(",") if "," in cleaned else list(cleaned)
    return tuple(int(p) for p in parts if p.strip())
