from __future__ import annotations

from pathlib import Path

from src.errors import ParseError, SkeletonError
from src.skeleton.models import Skeleton, Vertex, sorted_ids

_ARITY = {"trivalent": 3, "dot": 2, "antidot": 2, "boundary": 1}


def dump_skeleton(s: Skeleton) -> str:
    """One record per line, vertices then edges then circles, each in natural id order."""
    lines: list[str] = []
    for vid in sorted_ids(s.vertices):
        v = s.vertices[vid]
        lines.append(f"vertex {vid} {v.kind} {' '.join(v.half_edges)}")
    for eid in sorted_ids(s.edges):
        tail, head = s.edges[eid]
        lines.append(f"edge {eid} {tail} {head}")
    for cid in sorted_ids(s.circles):
        lines.append(f"circle {cid}")
    return "\n".join(lines) + "\n"


def parse_skeleton(text: str, *, source: str | None = None) -> Skeleton:
    vertices: dict[str, Vertex] = {}
    edges: dict[str, tuple[str, str]] = {}
    circles: set[str] = set()

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        record = parts[0]
        try:
            if record == "vertex":
                if len(parts) < 3:
                    raise ParseError("expected: vertex <id> <kind> <half-edges...>", line=lineno, source=source)
                vid, kind, hs = parts[1], parts[2], tuple(parts[3:])
                if kind not in _ARITY:
                    raise ParseError(f"unknown vertex kind {kind!r}", line=lineno, source=source)
                if vid in vertices:
                    raise ParseError(f"duplicate vertex {vid!r}", line=lineno, source=source)
                vertices[vid] = Vertex(kind, hs)  # type: ignore[arg-type]
            elif record == "edge":
                if len(parts) != 4:
                    raise ParseError("expected: edge <id> <tail-h> <head-h>", line=lineno, source=source)
                if parts[1] in edges:
                    raise ParseError(f"duplicate edge {parts[1]!r}", line=lineno, source=source)
                edges[parts[1]] = (parts[2], parts[3])
            elif record == "circle":
                if len(parts) != 2:
                    raise ParseError("expected: circle <id>", line=lineno, source=source)
                circles.add(parts[1])
            else:
                raise ParseError(f"unknown record {record!r}", line=lineno, source=source)
        except SkeletonError as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(str(exc), line=lineno, source=source) from exc

    try:
        return Skeleton(vertices, edges, frozenset(circles)).validate()
    except SkeletonError as exc:
        raise ParseError(str(exc), source=source) from exc


def load_skeleton(name_or_path: str) -> Skeleton:
    """Resolve a built-in name (``theta``, ``strands(3)``, ...) or read a skeleton file."""
    from src.skeleton.catalog import named_skeleton

    named = named_skeleton(name_or_path)
    if named is not None:
        return named
    path = Path(name_or_path)
    if not path.exists():
        raise FileNotFoundError(f"Skeleton not found: {name_or_path}")
    return parse_skeleton(path.read_text(encoding="utf-8"), source=str(path))
