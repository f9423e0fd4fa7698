from __future__ import annotations

import logging
from dataclasses import dataclass, field

from src.errors import SkeletonError
from src.skeleton.models import Skeleton, Vertex, fresh_id, id_key, sorted_ids

logger = logging.getLogger(__name__)

# Pseudo half-edge names for the two ends of a point tree.
POINT_IN = "<in>"
POINT_OUT = "<out>"


@dataclass(frozen=True)
class Rewiring:
    """Result of a skeleton operation together with the chord transport data.

    ``paths`` maps each segment of ``target`` to the ordered source keys whose
    chord endpoints it carries. A source key is a segment id of ``source`` or,
    for unzip copies, ``"<segment>|l"`` / ``"<segment>|r"``. Source segments
    that appear in no path were deleted.
    """

    source: Skeleton
    target: Skeleton
    paths: dict[str, tuple[str, ...]]

    def carried(self) -> set[str]:
        return {k for keys in self.paths.values() for k in keys}


def _other_end(s: Skeleton, half_edge: str) -> str:
    tail, head = s.edges[s.edge_of(half_edge)]
    return head if half_edge == tail else tail


def _rebuild(
    source: Skeleton,
    *,
    vertices: dict[str, Vertex],
    edges: dict[str, tuple[str, str]],
    circles: set[str],
    pieces: dict[str, tuple[str, ...]],
    joins: list[tuple[str, str]],
    synthetic: frozenset[str] | set[str] = frozenset(),
) -> Rewiring:
    """Glue ``(head, tail)`` half-edge pairs, fusing their edges into chains.

    Chains that close up become circles. A fused edge takes the id of its first
    non-synthetic segment; a circle takes the smallest such id in its cycle.
    """
    head_owner = {h: e for e, (_, h) in edges.items()}
    tail_owner = {t: e for e, (t, _) in edges.items()}
    nxt: dict[str, str] = {}
    prv: dict[str, str] = {}
    for h, t in joins:
        if h not in head_owner or t not in tail_owner:
            raise SkeletonError(f"cannot glue {h!r} to {t!r}: orientations do not match")
        a, b = head_owner[h], tail_owner[t]
        nxt[a] = b
        prv[b] = a

    new_edges: dict[str, tuple[str, str]] = {}
    new_circles = set(circles)
    paths: dict[str, tuple[str, ...]] = {c: pieces.get(c, (c,)) for c in circles}
    visited: set[str] = set()

    def name_of(chain: list[str]) -> str:
        real = [e for e in chain if e not in synthetic]
        return real[0] if real else chain[0]

    for start in sorted_ids(edges):
        if start in prv:
            continue
        chain = [start]
        while chain[-1] in nxt:
            chain.append(nxt[chain[-1]])
        visited.update(chain)
        name = name_of(chain)
        new_edges[name] = (edges[chain[0]][0], edges[chain[-1]][1])
        paths[name] = tuple(k for e in chain for k in pieces.get(e, (e,)))

    for start in sorted_ids(edges):
        if start in visited:
            continue
        cycle = [start]
        while nxt[cycle[-1]] != start:
            cycle.append(nxt[cycle[-1]])
        visited.update(cycle)
        real = [e for e in cycle if e not in synthetic] or cycle
        first = min(real, key=id_key)
        i = cycle.index(first)
        cycle = cycle[i:] + cycle[:i]
        new_circles.add(first)
        paths[first] = tuple(k for e in cycle for k in pieces.get(e, (e,)))

    target = Skeleton(vertices, new_edges, frozenset(new_circles)).validate()
    return Rewiring(source=source, target=target, paths=paths)


def _identity_pieces(s: Skeleton) -> dict[str, tuple[str, ...]]:
    return {e: (e,) for e in s.segments}


# --- unary operations --------------------------------------------------------------------


def switch_edge(s: Skeleton, e: str) -> Skeleton:
    s.require_edge(e)
    if e in s.circles:
        return s
    edges = dict(s.edges)
    tail, head = edges[e]
    edges[e] = (head, tail)
    return Skeleton(dict(s.vertices), edges, s.circles).validate()


def _trivalent_ends(s: Skeleton, e: str) -> tuple[str, str]:
    if e in s.circles:
        raise SkeletonError(f"edge {e!r} is a circle and has no endpoints")
    s.require_edge(e)
    u, v = s.tail_vertex(e), s.head_vertex(e)
    if u == v:
        raise SkeletonError(f"edge {e!r} is a loop at {u!r}")
    for w in (u, v):
        if s.vertices[w].kind != "trivalent":
            raise SkeletonError(f"endpoint {w!r} of edge {e!r} is {s.vertices[w].kind}, not trivalent")
    return u, v


def delete_edge_rewiring(s: Skeleton, e: str) -> Rewiring:
    u, v = _trivalent_ends(s, e)
    tail, head = s.edges[e]
    joins: list[tuple[str, str]] = []
    for w, own in ((u, tail), (v, head)):
        others = [h for h in s.vertices[w].half_edges if h != own]
        outgoing = [h for h in others if s.is_outgoing(h)]
        incoming = [h for h in others if not s.is_outgoing(h)]
        if len(outgoing) != 1 or len(incoming) != 1:
            raise SkeletonError(
                f"cannot delete {e!r}: the two other edges at {w!r} must be one incoming and one outgoing"
            )
        joins.append((incoming[0], outgoing[0]))

    vertices = {k: rec for k, rec in s.vertices.items() if k not in (u, v)}
    edges = {k: he for k, he in s.edges.items() if k != e}
    return _rebuild(
        s, vertices=vertices, edges=edges, circles=set(s.circles),
        pieces=_identity_pieces(s), joins=joins,
    )


def delete_edge(s: Skeleton, e: str) -> Skeleton:
    return delete_edge_rewiring(s, e).target


def unzip_corners(s: Skeleton, path: list[str]) -> tuple[str, str, str, str]:
    """Half-edges ``(a, b, c, d)`` around an unzippable path.

    With the path leaving ``u`` and entering ``v``, ``u`` reads (path, a, b) and
    ``v`` reads (path, c, d) in cyclic order. Unzipping joins a to d and b to c.
    """
    first, last = path[0], path[-1]
    u, v = s.tail_vertex(first), s.head_vertex(last)
    if u == v:
        raise SkeletonError(f"cannot unzip {first!r}: both ends are at {u!r}")
    for w in (u, v):
        if s.vertices[w].kind != "trivalent":
            raise SkeletonError(f"cannot unzip: {w!r} is not trivalent")

    u_rec, v_rec = s.vertices[u], s.vertices[v]
    ha = u_rec.successor(s.edges[first][0])
    hb = u_rec.successor(ha)
    hc = v_rec.successor(s.edges[last][1])
    hd = v_rec.successor(hc)
    if s.is_outgoing(ha) or s.is_outgoing(hb):
        raise SkeletonError(f"cannot unzip {first!r}: both other edges at {u!r} must be incoming")
    if not (s.is_outgoing(hc) and s.is_outgoing(hd)):
        raise SkeletonError(f"cannot unzip {last!r}: both other edges at {v!r} must be outgoing")
    return ha, hb, hc, hd


def _unzip_path(s: Skeleton, path: list[str], bivalent: list[str]) -> Rewiring:
    """Unzip the oriented path ``path`` whose interior vertices are ``bivalent``."""
    ha, hb, hc, hd = unzip_corners(s, path)
    u, v = s.tail_vertex(path[0]), s.head_vertex(path[-1])

    removed_vertices = {u, v, *bivalent}
    vertices = {k: rec for k, rec in s.vertices.items() if k not in removed_vertices}
    edges = {k: he for k, he in s.edges.items() if k not in path}
    pieces = _identity_pieces(s)
    taken = s.all_ids()
    synthetic: set[str] = set()
    joins: list[tuple[str, str]] = []

    for side, h_in, h_out in (("l", ha, hd), ("r", hb, hc)):
        copies: list[str] = []
        for seg in path:
            c = fresh_id(f"{seg}.{side}", taken)
            edges[c] = (fresh_id(f"{c}.t", taken), fresh_id(f"{c}.h", taken))
            pieces[c] = (f"{seg}|{side}",)
            synthetic.add(c)
            copies.append(c)
        for k, dot in enumerate(bivalent):
            vid = fresh_id(f"{dot}.{side}", taken)
            vertices[vid] = Vertex(s.vertices[dot].kind, (edges[copies[k]][1], edges[copies[k + 1]][0]))
        joins.append((h_in, edges[copies[0]][0]))
        joins.append((edges[copies[-1]][1], h_out))

    return _rebuild(
        s, vertices=vertices, edges=edges, circles=set(s.circles),
        pieces=pieces, joins=joins, synthetic=synthetic,
    )


def unzip_edge_rewiring(s: Skeleton, e: str) -> Rewiring:
    _trivalent_ends(s, e)
    return _unzip_path(s, [e], [])


def unzip_edge(s: Skeleton, e: str) -> Skeleton:
    return unzip_edge_rewiring(s, e).target


def dotted_path(s: Skeleton, e: str) -> tuple[list[str], str]:
    """The two-segment path through exactly one dot that contains segment ``e``."""
    if e in s.circles:
        raise SkeletonError(f"edge {e!r} is a circle")
    s.require_edge(e)
    u, v = s.tail_vertex(e), s.head_vertex(e)
    kinds = (s.vertices[u].kind, s.vertices[v].kind)
    if kinds == ("dot", "trivalent"):
        dot = u
        other_half = s.vertices[dot].successor(s.edges[e][0])
        before = s.edge_of(other_half)
        if s.edges[before][1] != other_half:
            raise SkeletonError(f"orientation through dot {dot!r} does not continue along {e!r}")
        path = [before, e]
    elif kinds == ("trivalent", "dot"):
        dot = v
        other_half = s.vertices[dot].successor(s.edges[e][1])
        after = s.edge_of(other_half)
        if s.edges[after][0] != other_half:
            raise SkeletonError(f"orientation through dot {dot!r} does not continue along {e!r}")
        path = [e, after]
    else:
        raise SkeletonError(f"edge {e!r} is not one half of a path with exactly one dot")
    if s.vertices[s.tail_vertex(path[0])].kind != "trivalent" or s.vertices[s.head_vertex(path[1])].kind != "trivalent":
        raise SkeletonError(f"the path through {dot!r} must join two trivalent vertices with one dot")
    return path, dot


def dotted_unzip_rewiring(s: Skeleton, e: str) -> Rewiring:
    path, dot = dotted_path(s, e)
    return _unzip_path(s, path, [dot])


def dotted_unzip(s: Skeleton, e: str) -> Skeleton:
    return dotted_unzip_rewiring(s, e).target


def cancel_rewiring(s: Skeleton, d: str, a: str) -> Rewiring:
    s.require_vertex(d, "dot")
    s.require_vertex(a, "antidot")
    d_half = s.vertices[d].half_edges
    a_half = s.vertices[a].half_edges
    link = None
    for h in d_half:
        if s.vertex_of(_other_end(s, h)) == a:
            link = h
            break
    if link is None:
        raise SkeletonError(f"dot {d!r} and anti-dot {a!r} are not adjacent")
    g = s.edge_of(link)
    x1 = next(h for h in d_half if h != link)
    g_at_a = _other_end(s, link)
    x2 = next(h for h in a_half if h != g_at_a)

    if not s.is_outgoing(x1) and s.is_outgoing(link) and s.is_outgoing(x2):
        joins = [(x1, link), (g_at_a, x2)]
    elif s.is_outgoing(x1) and not s.is_outgoing(link) and not s.is_outgoing(x2):
        joins = [(x2, g_at_a), (link, x1)]
    else:
        raise SkeletonError(f"cannot cancel {d!r} and {a!r}: the fused edges disagree in orientation")

    vertices = {k: rec for k, rec in s.vertices.items() if k not in (d, a)}
    return _rebuild(
        s, vertices=vertices, edges=dict(s.edges), circles=set(s.circles),
        pieces=_identity_pieces(s), joins=joins,
    )


def cancel(s: Skeleton, d: str, a: str) -> Skeleton:
    return cancel_rewiring(s, d, a).target


# --- binary operations -------------------------------------------------------------------


def disjoint_union(s1: Skeleton, s2: Skeleton) -> tuple[Skeleton, dict[str, str]]:
    """Union of two skeletons; ids of ``s2`` get primes appended until they are fresh."""
    taken = s1.all_ids()
    theirs = s2.all_ids()
    suffix = ""
    while any(x + suffix in taken for x in theirs):
        suffix += "'"
    rename = {x: x + suffix for x in theirs}

    vertices = dict(s1.vertices)
    for vid, rec in s2.vertices.items():
        vertices[rename[vid]] = Vertex(rec.kind, tuple(rename[h] for h in rec.half_edges))
    edges = dict(s1.edges)
    for eid, (t, h) in s2.edges.items():
        edges[rename[eid]] = (rename[t], rename[h])
    circles = set(s1.circles) | {rename[c] for c in s2.circles}
    return Skeleton(vertices, edges, frozenset(circles)).validate(), rename


@dataclass
class _Draft:
    """Mutable working copy used while assembling a rewiring."""

    source: Skeleton
    vertices: dict[str, Vertex]
    edges: dict[str, tuple[str, str]]
    circles: set[str]
    pieces: dict[str, tuple[str, ...]]
    taken: set[str]
    synthetic: set[str] = field(default_factory=set)

    @classmethod
    def of(cls, s: Skeleton) -> "_Draft":
        return cls(s, dict(s.vertices), dict(s.edges), set(s.circles), _identity_pieces(s), s.all_ids())

    def cut(self, seg: str) -> tuple[str, str]:
        """Cut ``seg`` after its last chord endpoint; return the (incoming, outgoing) new ends."""
        h_in = fresh_id(f"{seg}.in", self.taken)
        h_out = fresh_id(f"{seg}.out", self.taken)
        if seg in self.circles:
            self.circles.discard(seg)
            self.edges[seg] = (h_out, h_in)
            return h_in, h_out
        if seg not in self.edges:
            raise SkeletonError(f"unknown edge {seg!r}")
        tail, head = self.edges[seg]
        rest = fresh_id(f"{seg}.2", self.taken)
        self.edges[seg] = (tail, h_in)
        self.edges[rest] = (h_out, head)
        self.pieces[rest] = ()
        return h_in, h_out

    def finish(self, joins: list[tuple[str, str]] | None = None) -> Rewiring:
        return _rebuild(
            self.source, vertices=self.vertices, edges=self.edges, circles=self.circles,
            pieces=self.pieces, joins=joins or [], synthetic=self.synthetic,
        )


@dataclass(frozen=True)
class ConnectedSum:
    rewiring: Rewiring
    rename: dict[str, str]
    connecting_edge: str

    @property
    def skeleton(self) -> Skeleton:
        return self.rewiring.target


def connected_sum_rewiring(s1: Skeleton, e: str, s2: Skeleton, f: str) -> ConnectedSum:
    s1.require_edge(e)
    s2.require_edge(f)
    union, rename = disjoint_union(s1, s2)
    draft = _Draft.of(union)
    g = fresh_id("g", draft.taken)
    g_tail = fresh_id(f"{g}.t", draft.taken)
    g_head = fresh_id(f"{g}.h", draft.taken)
    draft.edges[g] = (g_tail, g_head)
    draft.pieces[g] = ()
    for seg, end, prefix in ((e, g_tail, "x"), (rename[f], g_head, "y")):
        h_in, h_out = draft.cut(seg)
        vid = fresh_id(prefix, draft.taken)
        # ahead, behind, then the new edge on the right
        draft.vertices[vid] = Vertex("trivalent", (h_out, h_in, end))
    logger.debug("connected sum along %s and %s with new edge %s", e, f, g)
    return ConnectedSum(draft.finish(), rename, g)


def connected_sum(s1: Skeleton, e: str, s2: Skeleton, f: str) -> Skeleton:
    return connected_sum_rewiring(s1, e, s2, f).skeleton


# --- trees -------------------------------------------------------------------------------


@dataclass(frozen=True)
class TreeSpec:
    """A distinguished tree: a connected acyclic set of vertices and segments, or a point."""

    vertices: frozenset[str] = frozenset()
    edges: frozenset[str] = frozenset()
    point: str | None = None

    @classmethod
    def of(cls, vertices=(), edges=()) -> "TreeSpec":
        return cls(frozenset(vertices), frozenset(edges))

    @classmethod
    def at_point(cls, seg: str) -> "TreeSpec":
        return cls(point=seg)

    def renamed(self, rename: dict[str, str]) -> "TreeSpec":
        return TreeSpec(
            frozenset(rename[v] for v in self.vertices),
            frozenset(rename[e] for e in self.edges),
            rename[self.point] if self.point is not None else None,
        )


def check_tree(s: Skeleton, tree: TreeSpec) -> None:
    import networkx as nx

    if tree.point is not None:
        s.require_edge(tree.point)
        return
    if not tree.vertices:
        raise SkeletonError("a tree needs at least one vertex")
    for v in tree.vertices:
        rec = s.require_vertex(v)
        if rec.kind == "boundary":
            raise SkeletonError(f"tree vertex {v!r} is a boundary vertex")
    g = nx.MultiGraph()
    g.add_nodes_from(tree.vertices)
    for e in tree.edges:
        if e not in s.edges:
            raise SkeletonError(f"tree edge {e!r} is not an edge")
        a, b = s.tail_vertex(e), s.head_vertex(e)
        if a not in tree.vertices or b not in tree.vertices:
            raise SkeletonError(f"tree edge {e!r} has an endpoint outside the tree")
        g.add_edge(a, b, key=e)
    if not nx.is_tree(g):
        raise SkeletonError("the distinguished subgraph is not a tree")


def tree_ends(s: Skeleton, tree: TreeSpec) -> list[str]:
    """Half-edges where the tree meets the rest of the skeleton."""
    check_tree(s, tree)
    if tree.point is not None:
        return [POINT_IN, POINT_OUT]
    ends = []
    for v in sorted_ids(tree.vertices):
        for h in s.vertices[v].half_edges:
            if s.edge_of(h) not in tree.edges:
                ends.append(h)
    return ends


@dataclass(frozen=True)
class TreeSum:
    rewiring: Rewiring
    rename: dict[str, str]
    junctions: tuple[str, ...]  # the new dots, in the order of the pairing

    @property
    def skeleton(self) -> Skeleton:
        return self.rewiring.target


_MIRROR_KIND = {"dot": "antidot", "antidot": "dot"}


def _labelled_tree(s: Skeleton, tree: TreeSpec, ends: dict[str, int], mirror: bool):
    """The tree with a pendant node per end, labelled by its place in the pairing."""
    import networkx as nx

    g = nx.MultiGraph()
    for v in tree.vertices:
        kind = s.vertices[v].kind
        g.add_node(v, label=_MIRROR_KIND.get(kind, kind) if mirror else kind)
    for e in tree.edges:
        g.add_edge(s.tail_vertex(e), s.head_vertex(e))
    for h, k in ends.items():
        g.add_node(("end", k), label=f"end {k}")
        g.add_edge(s.vertex_of(h), ("end", k))
    return g


def _check_trees_match(s1: Skeleton, t1: TreeSpec, s2: Skeleton, t2: TreeSpec, pairing: list[tuple[str, str]]) -> None:
    import networkx as nx

    if (t1.point is None) != (t2.point is None):
        raise SkeletonError("a point can only be summed with a point")
    if t1.point is not None:
        return
    g1 = _labelled_tree(s1, t1, {a: k for k, (a, _) in enumerate(pairing)}, mirror=False)
    g2 = _labelled_tree(s2, t2, {b: k for k, (_, b) in enumerate(pairing)}, mirror=True)
    if not nx.is_isomorphic(g1, g2, node_match=lambda x, y: x["label"] == y["label"]):
        raise SkeletonError("trees do not match: the pairing must extend to a tree isomorphism taking dots to anti-dots")


def _end_is_head(s: Skeleton, tree: TreeSpec, end: str) -> bool:
    if tree.point is not None:
        return end == POINT_IN
    return not s.is_outgoing(end)


def tree_connected_sum_rewiring(
    s1: Skeleton,
    t1: TreeSpec,
    s2: Skeleton,
    t2: TreeSpec,
    pairing: list[tuple[str, str]],
) -> TreeSum:
    """Delete both trees and join paired ends through new dots.

    ``pairing`` lists ``(end of t1, end of t2)``; ends are half-edge ids, or
    ``POINT_IN`` / ``POINT_OUT`` for point trees.
    """
    ends1 = tree_ends(s1, t1)
    ends2 = tree_ends(s2, t2)
    if sorted(a for a, _ in pairing) != sorted(ends1) or sorted(b for _, b in pairing) != sorted(ends2):
        raise SkeletonError("the pairing must match every end of both trees exactly once")

    _check_trees_match(s1, t1, s2, t2, pairing)
    for a, b in pairing:
        head = _end_is_head(s1, t1, a)
        if head == _end_is_head(s2, t2, b):
            raise SkeletonError(f"junction {a!r}-{b!r} would join two {'heads' if head else 'tails'}")

    union, rename = disjoint_union(s1, s2)
    draft = _Draft.of(union)
    t2r = t2.renamed(rename)
    point_ends: dict[tuple[int, str], str] = {}
    for side, tree in ((1, t1), (2, t2r)):
        if tree.point is not None:
            h_in, h_out = draft.cut(tree.point)
            point_ends[(side, POINT_IN)] = h_in
            point_ends[(side, POINT_OUT)] = h_out
        else:
            for v in tree.vertices:
                del draft.vertices[v]
            for e in tree.edges:
                del draft.edges[e]

    junctions: list[str] = []
    for a, b in pairing:
        ha = point_ends.get((1, a), a)
        hb = point_ends.get((2, b), rename.get(b, b))
        vid = fresh_id("j", draft.taken)
        draft.vertices[vid] = Vertex("dot", (ha, hb))
        junctions.append(vid)
    logger.debug("tree connected sum created junction dots %s", ", ".join(junctions))
    return TreeSum(draft.finish(), rename, tuple(junctions))


def tree_connected_sum(
    s1: Skeleton, t1: TreeSpec, s2: Skeleton, t2: TreeSpec, pairing: list[tuple[str, str]]
) -> Skeleton:
    return tree_connected_sum_rewiring(s1, t1, s2, t2, pairing).skeleton
