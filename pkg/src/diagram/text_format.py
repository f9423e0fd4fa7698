"""Text formats for diagrams and linear combinations.

Inline diagram: space separated chords ``e:p-f:q`` or ``empty``.
Diagram file: a ``skeleton <name-or-file>`` header followed by
``chord <edge>:<pos> <edge>:<pos>`` lines.
LinComb file: the same header followed by ``<coefficient> | <inline diagram>`` lines.
The header ``skeleton inline`` carries the skeleton records itself.
"""
from __future__ import annotations

from pathlib import Path

from sympy.polys.domains import QQ

from src.diagram.models import ChordDiagram, LinComb, canonicalize, format_scalar, to_scalar
from src.errors import DiagramError, ParseError
from src.skeleton.models import Skeleton
from src.skeleton.text_format import dump_skeleton, load_skeleton, parse_skeleton

INLINE = "inline"
_RECORDS = ("vertex", "edge", "circle")


def format_slot(slot: tuple[str, int]) -> str:
    return f"{slot[0]}:{slot[1]}"


def format_inline(d: ChordDiagram) -> str:
    if not d.chords:
        return "empty"
    return " ".join(f"{format_slot(a)}-{format_slot(b)}" for a, b in d.chords)


def _parse_slot(token: str) -> tuple[str, int]:
    seg, sep, pos = token.rpartition(":")
    if not sep or not seg:
        raise ValueError(f"bad slot {token!r}, expected <edge>:<pos>")
    return seg, int(pos)


def parse_inline(text: str, skeleton: Skeleton) -> ChordDiagram:
    text = text.strip()
    if text in ("", "empty"):
        return ChordDiagram()
    chords = []
    for token in text.split():
        left, sep, right = token.partition("-")
        if not sep:
            raise ValueError(f"bad chord {token!r}, expected <edge>:<pos>-<edge>:<pos>")
        chords.append((_parse_slot(left), _parse_slot(right)))
    return canonicalize(ChordDiagram(tuple(chords)), skeleton)


def format_lincomb(lc: LinComb) -> str:
    if lc.is_zero():
        return "0"
    return " + ".join(f"({format_scalar(lc.domain, c)})*[{format_inline(d)}]" for d, c in lc.items())


def dump_lincomb(lc: LinComb, skeleton_name: str = INLINE) -> str:
    lines = [f"skeleton {skeleton_name}"]
    if skeleton_name == INLINE:
        lines += dump_skeleton(lc.skeleton).splitlines()
    for d, c in lc.items():
        lines.append(f"{format_scalar(lc.domain, c)} | {format_inline(d)}")
    return "\n".join(lines) + "\n"


def dump_diagram(d: ChordDiagram, skeleton_name: str) -> str:
    lines = [f"skeleton {skeleton_name}"]
    lines += [f"chord {format_slot(a)} {format_slot(b)}" for a, b in d.chords]
    return "\n".join(lines) + "\n"


def _header(lines: list[tuple[int, str]], source: str | None) -> tuple[Skeleton, str, list[tuple[int, str]]]:
    """Resolve the ``skeleton`` header; ``skeleton inline`` is followed by skeleton records."""
    if not lines or not lines[0][1].startswith("skeleton "):
        raise ParseError("expected a 'skeleton <name-or-file>' header", line=lines[0][0] if lines else 1, source=source)
    lineno, first = lines[0]
    name = first.split(None, 1)[1].strip()
    if name == INLINE:
        records = [line for _, line in lines[1:] if line.split()[0] in _RECORDS]
        rest = [(i, line) for i, line in lines[1:] if line.split()[0] not in _RECORDS]
        return parse_skeleton("\n".join(records), source=source), name, rest
    try:
        skeleton = load_skeleton(name)
    except FileNotFoundError as exc:
        raise ParseError(str(exc), line=lineno, source=source) from exc
    return skeleton, name, lines[1:]


def _content_lines(text: str) -> list[tuple[int, str]]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((lineno, line))
    return out


def parse_diagram(text: str, *, source: str | None = None) -> tuple[Skeleton, ChordDiagram]:
    skeleton, _, body = _header(_content_lines(text), source)
    chords = []
    for lineno, line in body:
        parts = line.split()
        if len(parts) != 3 or parts[0] != "chord":
            raise ParseError("expected: chord <edge>:<pos> <edge>:<pos>", line=lineno, source=source)
        try:
            chords.append((_parse_slot(parts[1]), _parse_slot(parts[2])))
        except ValueError as exc:
            raise ParseError(str(exc), line=lineno, source=source) from exc
    try:
        return skeleton, canonicalize(ChordDiagram(tuple(chords)), skeleton)
    except DiagramError as exc:
        raise ParseError(str(exc), source=source) from exc


def parse_lincomb(text: str, *, source: str | None = None, domain=QQ) -> tuple[LinComb, str]:
    """Parse a LinComb file; returns the combination and the skeleton name from its header."""
    skeleton, name, body = _header(_content_lines(text), source)
    out = LinComb(skeleton, None, domain)
    for lineno, line in body:
        coeff, sep, diagram = line.partition("|")
        if not sep:
            raise ParseError("expected: <coefficient> | <diagram>", line=lineno, source=source)
        try:
            c = to_scalar(domain, coeff.strip())
            out.add_term(parse_inline(diagram, skeleton), c)
        except (ValueError, DiagramError) as exc:
            raise ParseError(str(exc), line=lineno, source=source) from exc
    return out, name


def load_lincomb(path: str | Path, *, domain=QQ) -> tuple[LinComb, str]:
    p = Path(path)
    if not p.exists():
        raise FileNotFoundError(f"Input not found: {p}")
    return parse_lincomb(p.read_text(encoding="utf-8"), source=str(p), domain=domain)
