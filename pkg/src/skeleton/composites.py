"""Operations assembled from tree connected sums and cancellations.

Each of these reproduces a basic operation (or a dotted variant) through the
generators of dotted graphs; their outputs are compared with the direct
operations up to isomorphism.
"""
from __future__ import annotations

import logging

from src.errors import SkeletonError
from src.skeleton import catalog
from src.skeleton.models import Skeleton
from src.skeleton.operations import (
    POINT_IN,
    POINT_OUT,
    TreeSpec,
    cancel,
    connected_sum_rewiring,
    dotted_path,
    switch_edge,
    tree_connected_sum_rewiring,
    unzip_corners,
    unzip_edge,
)

logger = logging.getLogger(__name__)


def kill_dot(s: Skeleton, dot: str) -> Skeleton:
    """Remove a dot by summing in a circle with three anti-dots next to it and cancelling."""
    rec = s.require_vertex(dot, "dot")
    outgoing = [h for h in rec.half_edges if s.is_outgoing(h)]
    if len(outgoing) != 1:
        raise SkeletonError(f"dot {dot!r} must have one incoming and one outgoing edge")
    after = s.edge_of(outgoing[0])
    summed = tree_connected_sum_rewiring(
        s,
        TreeSpec.at_point(after),
        catalog.triple_antidot_circle(),
        TreeSpec.at_point("a1"),
        [(POINT_IN, POINT_OUT), (POINT_OUT, POINT_IN)],
    )
    j_in, j_out = summed.junctions
    x1, x2, x3 = (summed.rename[x] for x in ("x1", "x2", "x3"))
    out = cancel(summed.skeleton, j_in, x2)
    out = cancel(out, dot, x3)
    return cancel(out, j_out, x1)


def kill_dots(s: Skeleton, dots) -> Skeleton:
    for d in dots:
        s = kill_dot(s, d)
    return s


def _edge_tree(s: Skeleton, e: str) -> TreeSpec:
    return TreeSpec.of([s.tail_vertex(e), s.head_vertex(e)], [e])


def unzip_via_tree_sum(s: Skeleton, e: str) -> Skeleton:
    """Unzip as a tree connected sum with a theta, followed by killing the four new dots."""
    ha, hb, hc, hd = unzip_corners(s, [e])
    summed = tree_connected_sum_rewiring(
        s,
        _edge_tree(s, e),
        catalog.theta(),
        TreeSpec.of(["u", "v"], ["1"]),
        [(ha, "2.t"), (hd, "2.h"), (hb, "3.t"), (hc, "3.h")],
    )
    return kill_dots(summed.skeleton, summed.junctions)


def _delete_corners(s: Skeleton, e: str) -> tuple[str, str, str, str]:
    corners = []
    for w, own in ((s.tail_vertex(e), s.edges[e][0]), (s.head_vertex(e), s.edges[e][1])):
        others = [h for h in s.vertices[w].half_edges if h != own]
        incoming = [h for h in others if not s.is_outgoing(h)]
        outgoing = [h for h in others if s.is_outgoing(h)]
        if len(incoming) != 1 or len(outgoing) != 1:
            raise SkeletonError(f"cannot delete {e!r}: orientations at {w!r} do not allow it")
        corners += [incoming[0], outgoing[0]]
    return tuple(corners)  # type: ignore[return-value]


def delete_via_tree_sum(s: Skeleton, e: str) -> Skeleton:
    """Delete as a tree connected sum with a dumbbell along its bridge."""
    u_in, u_out, v_in, v_out = _delete_corners(s, e)
    summed = tree_connected_sum_rewiring(
        s,
        _edge_tree(s, e),
        catalog.dumbbell(),
        TreeSpec.of(["p", "q"], ["b"]),
        [(u_in, "l1.t"), (u_out, "l1.h"), (v_in, "l2.t"), (v_out, "l2.h")],
    )
    return kill_dots(summed.skeleton, summed.junctions)


def delete_via_antidots(s: Skeleton, e: str) -> Skeleton:
    """Delete with an anti-dotted dumbbell, cancelling each new dot against an anti-dot."""
    u_in, u_out, v_in, v_out = _delete_corners(s, e)
    summed = tree_connected_sum_rewiring(
        s,
        _edge_tree(s, e),
        catalog.antidot_dumbbell(),
        TreeSpec.of(["p", "q"], ["b"]),
        [(u_in, "l1a.t"), (u_out, "l1c.h"), (v_in, "l2a.t"), (v_out, "l2c.h")],
    )
    out = summed.skeleton
    for j, a in zip(summed.junctions, ("y1", "y2", "z1", "z2")):
        out = cancel(out, j, summed.rename[a])
    return out


def dotted_unzip_via_tree_sum(s: Skeleton, e: str) -> Skeleton:
    """Dotted unzip as a tree sum with the crossed theta and two cancellations."""
    path, dot = dotted_path(s, e)
    ha, hb, hc, hd = unzip_corners(s, path)
    u, v = s.tail_vertex(path[0]), s.head_vertex(path[1])
    summed = tree_connected_sum_rewiring(
        s,
        TreeSpec.of([u, dot, v], path),
        catalog.crossed_theta(),
        TreeSpec.of(["u", "x1", "v"], ["1a", "1b"]),
        [(ha, "2a.t"), (hd, "2b.h"), (hb, "3a.t"), (hc, "3b.h")],
    )
    j1, _, j3, _ = summed.junctions
    out = cancel(summed.skeleton, j1, summed.rename["x2"])
    return cancel(out, j3, summed.rename["x3"])


def edge_connected_sum(s1: Skeleton, e: str, s2: Skeleton, f: str) -> Skeleton:
    """Connected sum along edges: connect, re-orient the four corners, unzip the new edge."""
    if e in s1.circles or f in s2.circles:
        raise SkeletonError("edge connected sum needs edges with two distinct ends, not circles")
    summed = connected_sum_rewiring(s1, e, s2, f)
    s = summed.skeleton
    g = summed.connecting_edge
    tail_side, head_side = s.tail_vertex(g), s.head_vertex(g)
    for h, edge, outgoing in list(s.incident(tail_side)):
        if edge != g and outgoing:
            s = switch_edge(s, edge)
    for h, edge, outgoing in list(s.incident(head_side)):
        if edge != g and not outgoing:
            s = switch_edge(s, edge)
    return unzip_edge(s, g)


def dotted_edge_connected_sum(s1: Skeleton, e: str, s2: Skeleton, f: str) -> Skeleton:
    summed = tree_connected_sum_rewiring(
        s1, TreeSpec.at_point(e), s2, TreeSpec.at_point(f),
        [(POINT_IN, POINT_OUT), (POINT_OUT, POINT_IN)],
    )
    return summed.skeleton


def vertex_connected_sum(
    s1: Skeleton, v1: str, s2: Skeleton, v2: str, pairing: list[tuple[str, str]]
) -> Skeleton:
    """Tree connected sum along single vertices (the tree is the vertex itself)."""
    return tree_connected_sum_rewiring(
        s1, TreeSpec.of([v1]), s2, TreeSpec.of([v2]), pairing
    ).skeleton


def theta_vertex_sum(crossed: bool = False) -> Skeleton:
    """Sum two thetas at a vertex; for crossed thetas cancel back down to one anti-dot per edge."""
    base = catalog.crossed_theta() if crossed else catalog.theta()
    if crossed:
        pairing = [("1b.h", "1a.t"), ("3b.h", "3a.t"), ("2b.h", "2a.t")]
    else:
        pairing = [("1.h", "1.t"), ("3.h", "3.t"), ("2.h", "2.t")]
    summed = tree_connected_sum_rewiring(base, TreeSpec.of(["v"]), base, TreeSpec.of(["u"]), pairing)
    out = summed.skeleton
    if crossed:
        for j, edge in zip(summed.junctions, ("1", "3", "2")):
            out = cancel(out, j, f"x{edge}")
    logger.debug("theta vertex sum (crossed=%s) has %d vertices", crossed, len(out.vertices))
    return out
