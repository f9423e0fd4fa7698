from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Literal

from src.errors import SkeletonError

VertexKind = Literal["trivalent", "dot", "antidot", "boundary"]

_ARITY: dict[str, int] = {"trivalent": 3, "dot": 2, "antidot": 2, "boundary": 1}
_ID_RE = re.compile(r"^[A-Za-z0-9_.']+$")
_DIGITS_RE = re.compile(r"(\d+)")


def id_key(ident: str) -> tuple:
    """Natural sort key: ``2`` sorts before ``10`` and ``e2`` before ``e10``."""
    parts = _DIGITS_RE.split(ident)
    return tuple((0, int(p), "") if p.isdigit() else (1, 0, p) for p in parts if p)


def sorted_ids(ids: Iterable[str]) -> list[str]:
    return sorted(ids, key=id_key)


def check_id(ident: str) -> str:
    if not _ID_RE.match(ident):
        raise SkeletonError(f"invalid id {ident!r}: use letters, digits, '_', '.' or \"'\"")
    return ident


@dataclass(frozen=True)
class Vertex:
    """A vertex record; trivalent half-edges are kept as a rotation class."""

    kind: VertexKind
    half_edges: tuple[str, ...]

    def __post_init__(self) -> None:
        if self.kind not in _ARITY:
            raise SkeletonError(f"unknown vertex kind {self.kind!r}")
        if len(self.half_edges) != _ARITY[self.kind]:
            raise SkeletonError(
                f"{self.kind} vertex needs {_ARITY[self.kind]} half-edges, got {len(self.half_edges)}"
            )
        if self.kind == "trivalent":
            hs = self.half_edges
            i = min(range(3), key=lambda k: id_key(hs[k]))
            object.__setattr__(self, "half_edges", hs[i:] + hs[:i])

    @property
    def bivalent(self) -> bool:
        return self.kind in ("dot", "antidot")

    def successor(self, half_edge: str) -> str:
        """Next half-edge in the cyclic order (trivalent) or the other half-edge (bivalent)."""
        hs = self.half_edges
        i = hs.index(half_edge)
        return hs[(i + 1) % len(hs)]


@dataclass(frozen=True)
class HalfEdgeInfo:
    vertex: str
    edge: str
    end: Literal["tail", "head"]


@dataclass(frozen=True)
class Skeleton:
    """Half-edge graph: vertices, oriented edges (tail, head) and free circles.

    Values are never mutated after construction; operations build new skeletons.
    """

    vertices: dict[str, Vertex]
    edges: dict[str, tuple[str, str]]
    circles: frozenset[str] = field(default_factory=frozenset)

    def __hash__(self) -> int:
        return hash(self.fingerprint)

    # --- lookup -------------------------------------------------------------------------

    @cached_property
    def half_edge_index(self) -> dict[str, HalfEdgeInfo]:
        owner: dict[str, str] = {}
        for vid, v in self.vertices.items():
            for h in v.half_edges:
                owner[h] = vid
        index: dict[str, HalfEdgeInfo] = {}
        for eid, (tail, head) in self.edges.items():
            if tail in owner:
                index[tail] = HalfEdgeInfo(owner[tail], eid, "tail")
            if head in owner:
                index[head] = HalfEdgeInfo(owner[head], eid, "head")
        return index

    @cached_property
    def fingerprint(self) -> str:
        from src.skeleton.text_format import dump_skeleton

        return hashlib.sha256(dump_skeleton(self).encode("utf-8")).hexdigest()

    @property
    def segments(self) -> list[str]:
        """All chord-carrying segments: edges and circles, in natural order."""
        return sorted_ids([*self.edges, *self.circles])

    def has_segment(self, seg: str) -> bool:
        return seg in self.edges or seg in self.circles

    def tail_vertex(self, edge: str) -> str:
        return self.half_edge_index[self.edges[edge][0]].vertex

    def head_vertex(self, edge: str) -> str:
        return self.half_edge_index[self.edges[edge][1]].vertex

    def vertex_of(self, half_edge: str) -> str:
        return self.half_edge_index[half_edge].vertex

    def edge_of(self, half_edge: str) -> str:
        return self.half_edge_index[half_edge].edge

    def is_outgoing(self, half_edge: str) -> bool:
        """True when the edge owning ``half_edge`` leaves the vertex there."""
        return self.half_edge_index[half_edge].end == "tail"

    def incident(self, vertex: str) -> Iterator[tuple[str, str, bool]]:
        """Yield ``(half_edge, edge, outgoing)`` around ``vertex`` in stored order."""
        for h in self.vertices[vertex].half_edges:
            info = self.half_edge_index[h]
            yield h, info.edge, info.end == "tail"

    def vertices_of_kind(self, *kinds: str) -> list[str]:
        return sorted_ids(v for v, rec in self.vertices.items() if rec.kind in kinds)

    def require_edge(self, edge: str) -> None:
        if edge not in self.edges and edge not in self.circles:
            raise SkeletonError(f"unknown edge {edge!r}")

    def require_vertex(self, vertex: str, *kinds: str) -> Vertex:
        if vertex not in self.vertices:
            raise SkeletonError(f"unknown vertex {vertex!r}")
        rec = self.vertices[vertex]
        if kinds and rec.kind not in kinds:
            raise SkeletonError(f"vertex {vertex!r} is {rec.kind}, expected {' or '.join(kinds)}")
        return rec

    def all_ids(self) -> set[str]:
        ids = set(self.vertices) | set(self.edges) | set(self.circles)
        for v in self.vertices.values():
            ids.update(v.half_edges)
        return ids

    # --- invariants ----------------------------------------------------------------------

    def validate(self) -> "Skeleton":
        seen_in_vertex: dict[str, str] = {}
        for vid, v in self.vertices.items():
            check_id(vid)
            for h in v.half_edges:
                check_id(h)
                if h in seen_in_vertex:
                    raise SkeletonError(
                        f"half-edge {h!r} appears at vertices {seen_in_vertex[h]!r} and {vid!r}"
                    )
                seen_in_vertex[h] = vid
        seen_in_edge: dict[str, str] = {}
        for eid, (tail, head) in self.edges.items():
            check_id(eid)
            if tail == head:
                raise SkeletonError(f"edge {eid!r} uses half-edge {tail!r} twice")
            for h in (tail, head):
                if h in seen_in_edge:
                    raise SkeletonError(f"half-edge {h!r} appears on edges {seen_in_edge[h]!r} and {eid!r}")
                seen_in_edge[h] = eid
        if set(seen_in_vertex) != set(seen_in_edge):
            dangling = sorted_ids(set(seen_in_vertex) ^ set(seen_in_edge))
            raise SkeletonError(f"half-edges not in exactly one vertex and one edge: {', '.join(dangling)}")
        for c in self.circles:
            check_id(c)
            if c in self.edges:
                raise SkeletonError(f"id {c!r} is both an edge and a circle")
        return self

    # --- strands -------------------------------------------------------------------------

    @property
    def is_strand_skeleton(self) -> bool:
        return not self.circles and all(v.kind == "boundary" for v in self.vertices.values())

    @property
    def strand_count(self) -> int:
        return len(self.edges) if self.is_strand_skeleton else 0


def build_skeleton(
    vertices: dict[str, tuple[str, Iterable[str]]],
    edges: dict[str, tuple[str, str]],
    circles: Iterable[str] = (),
) -> Skeleton:
    """Construct and validate a skeleton from plain records."""
    recs = {vid: Vertex(kind, tuple(hs)) for vid, (kind, hs) in vertices.items()}  # type: ignore[arg-type]
    return Skeleton(recs, dict(edges), frozenset(circles)).validate()


def fresh_id(base: str, taken: set[str]) -> str:
    if base not in taken:
        taken.add(base)
        return base
    k = 1
    while f"{base}.{k}" in taken:
        k += 1
    name = f"{base}.{k}"
    taken.add(name)
    return name
