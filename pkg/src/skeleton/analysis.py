from __future__ import annotations

from dataclasses import dataclass

import networkx as nx

from src.skeleton.models import Skeleton, sorted_ids


def to_graph(s: Skeleton) -> nx.MultiGraph:
    """Underlying multigraph: one node per vertex, one keyed edge per non-circle edge."""
    g = nx.MultiGraph()
    g.add_nodes_from(s.vertices)
    for e in s.edges:
        g.add_edge(s.tail_vertex(e), s.head_vertex(e), key=e)
    return g


def is_connected(s: Skeleton) -> bool:
    if s.circles:
        return not s.vertices and len(s.circles) == 1
    return bool(s.vertices) and nx.is_connected(to_graph(s))


def is_bridge(s: Skeleton, e: str) -> bool:
    s.require_edge(e)
    if e in s.circles:
        return False
    g = to_graph(s)
    before = nx.number_connected_components(g)
    g.remove_edge(s.tail_vertex(e), s.head_vertex(e), key=e)
    return nx.number_connected_components(g) > before


@dataclass(frozen=True)
class SkeletonIsomorphism:
    vertices: dict[str, str]
    edges: dict[str, str]
    half_edges: dict[str, str]


def _partner(s: Skeleton, h: str) -> str:
    tail, head = s.edges[s.edge_of(h)]
    return head if h == tail else tail


def _propagate(
    s1: Skeleton,
    s2: Skeleton,
    seed: tuple[str, str],
    hmap: dict[str, str],
    vmap: dict[str, str],
    oriented: bool,
) -> bool:
    used = set(hmap.values())
    used_v = set(vmap.values())
    stack = [seed]
    while stack:
        a, b = stack.pop()
        if a in hmap:
            if hmap[a] != b:
                return False
            continue
        if b in used:
            return False
        ia, ib = s1.half_edge_index[a], s2.half_edge_index[b]
        va, vb = s1.vertices[ia.vertex], s2.vertices[ib.vertex]
        if va.kind != vb.kind or (oriented and ia.end != ib.end):
            return False
        if ia.vertex in vmap:
            if vmap[ia.vertex] != ib.vertex:
                return False
        elif ib.vertex in used_v:
            return False
        else:
            vmap[ia.vertex] = ib.vertex
            used_v.add(ib.vertex)
        hmap[a] = b
        used.add(b)
        stack.append((_partner(s1, a), _partner(s2, b)))
        if va.kind != "boundary":
            stack.append((va.successor(a), vb.successor(b)))
    return True


def find_isomorphism(s1: Skeleton, s2: Skeleton, *, oriented: bool = True) -> SkeletonIsomorphism | None:
    """Search for a map preserving kinds, cyclic orders and (optionally) orientations.

    Every component is rooted at its smallest half-edge; the whole map is forced
    once that half-edge's image is chosen, so the search only branches there.
    """
    if len(s1.circles) != len(s2.circles) or len(s1.edges) != len(s2.edges):
        return None
    kinds1 = sorted(v.kind for v in s1.vertices.values())
    kinds2 = sorted(v.kind for v in s2.vertices.values())
    if kinds1 != kinds2:
        return None

    roots = []
    for comp in nx.connected_components(to_graph(s1)):
        vid = sorted_ids(comp)[0]
        roots.append(sorted_ids(s1.vertices[vid].half_edges)[0])
    candidates = sorted_ids(s2.half_edge_index)

    def search(k: int, hmap: dict[str, str], vmap: dict[str, str]) -> tuple[dict, dict] | None:
        if k == len(roots):
            return hmap, vmap
        for b in candidates:
            if b in hmap.values():
                continue
            h2, v2 = dict(hmap), dict(vmap)
            if _propagate(s1, s2, (roots[k], b), h2, v2, oriented):
                found = search(k + 1, h2, v2)
                if found is not None:
                    return found
        return None

    found = search(0, {}, {})
    if found is None:
        return None
    hmap, vmap = found
    emap = {s1.edge_of(a): s2.edge_of(b) for a, b in hmap.items()}
    emap.update(zip(sorted_ids(s1.circles), sorted_ids(s2.circles)))
    return SkeletonIsomorphism(vmap, emap, hmap)


def skeletons_isomorphic(s1: Skeleton, s2: Skeleton, *, oriented: bool = True) -> bool:
    return find_isomorphism(s1, s2, oriented=oriented) is not None
