from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping

import sympy
from sympy.polys.domains import QQ
from sympy.polys.polyerrors import CoercionFailed

from src.errors import DiagramError
from src.skeleton.models import Skeleton, id_key

Slot = tuple[str, int]


def slot_key(slot: Slot) -> tuple:
    return (id_key(slot[0]), slot[1])


@dataclass(frozen=True)
class ChordDiagram:
    """Chords as pairs of ``(segment, position)`` slots; positions count tail to head.

    ``marks`` holds single unpaired points; only relation generators use them.
    """

    chords: tuple[tuple[Slot, Slot], ...] = ()
    marks: tuple[Slot, ...] = ()

    @property
    def degree(self) -> int:
        return len(self.chords)

    def sort_key(self) -> tuple:
        return (
            self.degree,
            tuple((slot_key(a), slot_key(b)) for a, b in self.chords),
            tuple(slot_key(m) for m in self.marks),
        )

    def words(self) -> dict[str, list]:
        """Per segment, the labels met from tail to head: chord index or ``"M<k>"`` for marks."""
        placed: dict[str, list[tuple[int, object]]] = {}
        for i, (a, b) in enumerate(self.chords):
            placed.setdefault(a[0], []).append((a[1], i))
            placed.setdefault(b[0], []).append((b[1], i))
        for k, m in enumerate(self.marks):
            placed.setdefault(m[0], []).append((m[1], f"M{k}"))
        return {seg: [lab for _, lab in sorted(items, key=lambda t: t[0])] for seg, items in placed.items()}

    def count_on(self, seg: str) -> int:
        n = sum((a[0] == seg) + (b[0] == seg) for a, b in self.chords)
        return n + sum(m[0] == seg for m in self.marks)

    def __str__(self) -> str:
        from src.diagram.text_format import format_inline

        return format_inline(self)


EMPTY = ChordDiagram()


def _compact(words: Mapping[str, list]) -> tuple[tuple[tuple[Slot, Slot], ...], tuple[Slot, ...]]:
    ends: dict[object, list[Slot]] = {}
    for seg, labels in words.items():
        for pos, lab in enumerate(labels):
            ends.setdefault(lab, []).append((seg, pos))
    chords = []
    marks = []
    for lab, slots in ends.items():
        if isinstance(lab, str) and lab.startswith("M"):
            if len(slots) != 1:
                raise DiagramError(f"mark {lab!r} must occur once")
            marks.append(slots[0])
            continue
        if len(slots) != 2:
            raise DiagramError(f"chord {lab!r} has {len(slots)} endpoints, expected 2")
        a, b = sorted(slots, key=slot_key)
        chords.append((a, b))
    chords.sort(key=lambda c: (slot_key(c[0]), slot_key(c[1])))
    marks.sort(key=slot_key)
    return tuple(chords), tuple(marks)


def from_words(words: Mapping[str, Iterable], skeleton: Skeleton) -> ChordDiagram:
    """Build the canonical diagram whose endpoints read ``words`` along each segment.

    Each chord label occurs exactly twice; labels ``"M..."`` are single marks.
    """
    clean: dict[str, list] = {}
    for seg, labels in words.items():
        labels = list(labels)
        if not labels:
            continue
        if not skeleton.has_segment(seg):
            raise DiagramError(f"segment {seg!r} is not part of the skeleton")
        clean[seg] = labels

    circles = [c for c in clean if c in skeleton.circles]
    if not circles:
        chords, marks = _compact(clean)
        return ChordDiagram(chords, marks)

    best: ChordDiagram | None = None
    shifts = [range(len(clean[c])) for c in circles]
    for rot in itertools.product(*shifts):
        trial = dict(clean)
        for c, r in zip(circles, rot):
            trial[c] = clean[c][r:] + clean[c][:r]
        chords, marks = _compact(trial)
        cand = ChordDiagram(chords, marks)
        if best is None or cand.sort_key() < best.sort_key():
            best = cand
    assert best is not None
    return best


def canonicalize(d: ChordDiagram, skeleton: Skeleton) -> ChordDiagram:
    """Renumber positions to 0..k-1 per segment and pick the least rotation on circles."""
    seen: set[Slot] = set()
    for a, b in d.chords:
        for slot in (a, b):
            if slot in seen:
                raise DiagramError(f"slot {slot[0]}:{slot[1]} is used twice")
            seen.add(slot)
    for m in d.marks:
        if m in seen:
            raise DiagramError(f"slot {m[0]}:{m[1]} is used twice")
        seen.add(m)
    return from_words(d.words(), skeleton)


# --- coefficients -------------------------------------------------------------------------


def to_scalar(domain, value):
    """Convert ints, Fractions, strings and sympy numbers into ``domain``."""
    if isinstance(value, Fraction):
        value = sympy.Rational(value.numerator, value.denominator)
    try:
        if isinstance(value, str):
            return domain.from_sympy(sympy.sympify(value))
        return domain.convert(value)
    except (CoercionFailed, TypeError, sympy.SympifyError) as exc:
        raise DiagramError(f"cannot use {value!r} as a coefficient") from exc


def format_scalar(domain, value) -> str:
    return str(domain.to_sympy(value))


class LinComb:
    """Finite formal sum of diagrams on one skeleton; zero coefficients are never stored."""

    __slots__ = ("skeleton", "domain", "_terms")

    def __init__(self, skeleton: Skeleton, terms: Mapping[ChordDiagram, object] | None = None, domain=QQ):
        self.skeleton = skeleton
        self.domain = domain
        self._terms: dict[ChordDiagram, object] = {}
        for d, c in (terms or {}).items():
            self._accumulate(d, to_scalar(domain, c))

    @classmethod
    def single(cls, skeleton: Skeleton, d: ChordDiagram, coeff=1, domain=QQ) -> "LinComb":
        return cls(skeleton, {d: coeff}, domain)

    @classmethod
    def zero(cls, skeleton: Skeleton, domain=QQ) -> "LinComb":
        return cls(skeleton, None, domain)

    def _accumulate(self, d: ChordDiagram, c) -> None:
        if not c:
            return
        total = self._terms.get(d, self.domain.zero) + c
        if total:
            self._terms[d] = total
        else:
            self._terms.pop(d, None)

    # --- access --------------------------------------------------------------------------

    def items(self) -> list[tuple[ChordDiagram, object]]:
        return sorted(self._terms.items(), key=lambda kv: kv[0].sort_key())

    def support(self) -> list[ChordDiagram]:
        return [d for d, _ in self.items()]

    def coeff(self, d: ChordDiagram):
        return self._terms.get(d, self.domain.zero)

    def degrees(self) -> list[int]:
        return sorted({d.degree for d in self._terms})

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __iter__(self) -> Iterator[ChordDiagram]:
        return iter(self.support())

    # --- arithmetic ----------------------------------------------------------------------

    def _check(self, other: "LinComb") -> None:
        if other.skeleton is not self.skeleton and other.skeleton != self.skeleton:
            raise DiagramError("cannot combine linear combinations on different skeletons")

    def with_domain(self, domain) -> "LinComb":
        if domain == self.domain:
            return self
        out = LinComb(self.skeleton, None, domain)
        for d, c in self._terms.items():
            out._terms[d] = domain.convert_from(c, self.domain)
        return out

    def _unified(self, other: "LinComb") -> tuple["LinComb", "LinComb"]:
        self._check(other)
        if self.domain == other.domain:
            return self, other
        dom = self.domain.unify(other.domain)
        return self.with_domain(dom), other.with_domain(dom)

    def copy(self) -> "LinComb":
        out = LinComb(self.skeleton, None, self.domain)
        out._terms = dict(self._terms)
        return out

    def __add__(self, other: "LinComb") -> "LinComb":
        a, b = self._unified(other)
        out = a.copy()
        for d, c in b._terms.items():
            out._accumulate(d, c)
        return out

    def __neg__(self) -> "LinComb":
        return self.scale(-1)

    def __sub__(self, other: "LinComb") -> "LinComb":
        return self + (-other)

    def scale(self, factor) -> "LinComb":
        f = to_scalar(self.domain, factor) if not _is_element_of(factor, self.domain) else factor
        out = LinComb(self.skeleton, None, self.domain)
        for d, c in self._terms.items():
            out._accumulate(d, c * f)
        return out

    def __mul__(self, factor) -> "LinComb":
        return self.scale(factor)

    __rmul__ = __mul__

    def add_term(self, d: ChordDiagram, coeff) -> None:
        """In-place accumulation; used while building results."""
        self._accumulate(d, to_scalar(self.domain, coeff) if not _is_element_of(coeff, self.domain) else coeff)

    def degree_part(self, n: int) -> "LinComb":
        return LinComb._from_raw(self.skeleton, self.domain, {d: c for d, c in self._terms.items() if d.degree == n})

    def map_terms(self, fn: Callable[[ChordDiagram], Iterable[tuple[object, ChordDiagram]]], skeleton: Skeleton) -> "LinComb":
        """Linear extension of ``fn``, which sends a diagram to ``(coefficient, diagram)`` pairs."""
        out = LinComb(skeleton, None, self.domain)
        for d, c in self._terms.items():
            for k, image in fn(d):
                out._accumulate(image, c * to_scalar(self.domain, k))
        return out

    @classmethod
    def _from_raw(cls, skeleton: Skeleton, domain, terms: dict) -> "LinComb":
        out = cls(skeleton, None, domain)
        out._terms = dict(terms)
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LinComb):
            return NotImplemented
        if self.skeleton != other.skeleton:
            return False
        a, b = self._unified(other)
        return a._terms == b._terms

    def __hash__(self) -> int:
        return hash((self.skeleton.fingerprint, frozenset(self._terms)))

    def __repr__(self) -> str:
        from src.diagram.text_format import format_lincomb

        return f"LinComb({format_lincomb(self)!r})"


def _is_element_of(value, domain) -> bool:
    try:
        return domain.of_type(value)
    except Exception:  # noqa: BLE001
        return False
