from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from src.errors import ParseError

Letter = tuple[int, int]  # (generator index, +1 or -1)
Word = tuple[Letter, ...]

_LETTER_RE = re.compile(r"x(\d+)('?)")


def invert_word(w: Word) -> Word:
    return tuple((g, -e) for g, e in reversed(w))


def free_reduce(w: Iterable[Letter]) -> Word:
    out: list[Letter] = []
    for g, e in w:
        if out and out[-1] == (g, -e):
            out.pop()
        else:
            out.append((g, e))
    return tuple(out)


def parse_word(text: str, *, line: int | None = None, source: str | None = None) -> Word:
    """Parse ``x1 x3' x2`` (spaces optional); ``1`` or an empty string is the empty word."""
    compact = text.replace(" ", "").replace("*", "")
    if compact in ("", "1"):
        return ()
    letters: list[Letter] = []
    pos = 0
    while pos < len(compact):
        m = _LETTER_RE.match(compact, pos)
        if not m:
            raise ParseError(f"bad letter at {compact[pos:]!r}; use x<i> or x<i>'", line=line, source=source)
        gen = int(m.group(1))
        if gen < 1:
            raise ParseError("generators are numbered from 1", line=line, source=source)
        letters.append((gen, -1 if m.group(2) else 1))
        pos = m.end()
    return tuple(letters)


def format_word(w: Word) -> str:
    if not w:
        return "1"
    return "".join(f"x{g}" + ("'" if e < 0 else "") for g, e in w)


@dataclass(frozen=True)
class FreeGroupMap:
    """A homomorphism F_m -> F_n given by the images of the m generators."""

    words: tuple[Word, ...]
    target_rank: int

    def __post_init__(self) -> None:
        for w in self.words:
            for g, e in w:
                if not 1 <= g <= self.target_rank or e not in (1, -1):
                    raise ValueError(f"letter x{g} is not a generator of F_{self.target_rank}")

    @property
    def source_rank(self) -> int:
        return len(self.words)

    @classmethod
    def of(cls, words: Sequence[str | Word], target_rank: int | None = None) -> "FreeGroupMap":
        parsed = tuple(parse_word(w) if isinstance(w, str) else tuple(w) for w in words)
        if target_rank is None:
            target_rank = max((g for w in parsed for g, _ in w), default=0)
        return cls(parsed, target_rank)

    def compose(self, inner: "FreeGroupMap") -> "FreeGroupMap":
        """``self . inner``: substitute the images of ``self`` into the words of ``inner``.

        Words are not reduced, so pullbacks compose exactly.
        """
        if inner.target_rank != self.source_rank:
            raise ValueError(f"cannot compose F_{self.source_rank} <- F_{inner.target_rank}")
        out = []
        for w in inner.words:
            image: list[Letter] = []
            for g, e in w:
                piece = self.words[g - 1]
                image.extend(piece if e > 0 else invert_word(piece))
            out.append(tuple(image))
        return FreeGroupMap(tuple(out), self.target_rank)

    def reduced(self) -> "FreeGroupMap":
        return FreeGroupMap(tuple(free_reduce(w) for w in self.words), self.target_rank)

    def is_identity(self) -> bool:
        r = self.reduced()
        return r.source_rank == r.target_rank and all(w == ((i + 1, 1),) for i, w in enumerate(r.words))

    def __str__(self) -> str:
        return "(" + ", ".join(format_word(w) for w in self.words) + ")"


def parse_map(text: str, *, target_rank: int | None = None, source: str | None = None) -> FreeGroupMap:
    """One word per line, or a single parenthesised comma separated list."""
    stripped = text.strip()
    if stripped.startswith("(") and stripped.endswith(")"):
        words = [parse_word(w, source=source) for w in stripped[1:-1].split(",")]
    else:
        words = []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if line:
                words.append(parse_word(line, line=lineno, source=source))
    if target_rank is None:
        target_rank = max((g for w in words for g, _ in w), default=0)
    try:
        return FreeGroupMap(tuple(words), target_rank)
    except ValueError as exc:
        raise ParseError(str(exc), source=source) from exc


# --- the maps that realise the strand operations and the associator properties ----------


def doubling_map(i: int, n: int) -> FreeGroupMap:
    """Pullback realisation of doubling strand ``i`` of ``n`` (0 and n+1 add an empty strand)."""
    if i == 0:
        return FreeGroupMap(((),) + tuple(((k, 1),) for k in range(1, n + 1)), n)
    if i == n + 1:
        return FreeGroupMap(tuple(((k, 1),) for k in range(1, n + 1)) + ((),), n)
    if not 1 <= i <= n:
        raise ValueError(f"doubling index {i} out of range 0..{n + 1}")
    gens = list(range(1, i + 1)) + list(range(i, n + 1))
    return FreeGroupMap(tuple(((k, 1),) for k in gens), n)


def deletion_map(i: int, n: int) -> FreeGroupMap:
    if not 1 <= i <= n:
        raise ValueError(f"deletion index {i} out of range 1..{n}")
    return FreeGroupMap(tuple(((k, 1),) for k in range(1, n + 1) if k != i), n)


def permutation_map(sigma: Sequence[int]) -> FreeGroupMap:
    """Source strand k covers target strand sigma^-1(k), so a chord on j lifts to sigma(j)."""
    n = len(sigma)
    inverse = {s: k for k, s in enumerate(sigma, start=1)}
    return FreeGroupMap(tuple(((inverse[k], 1),) for k in range(1, n + 1)), n)


def reversal_map(n: int) -> FreeGroupMap:
    return FreeGroupMap(tuple(((k, -1),) for k in range(1, n + 1)), n)


BETA_1 = FreeGroupMap.of(["x2", "x3"], 3)
BETA_2 = FreeGroupMap.of(["x3", "x2", "x1"], 3)
BETA_3 = FreeGroupMap.of(["x2x1'", "x3x1'"], 3)
BETA_4 = FreeGroupMap.of(["x1'", "x2'", "x3'"], 3)
BETA_5 = FreeGroupMap.of(["x3'", "x3'x1", "x2'x1"], 3)
