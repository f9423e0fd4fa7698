"""Sweeping chords off a spanning tree with vertex invariance.

Once a tree carries no chord endpoints, the remaining segments form paths
between tree vertices and the skeleton's algebra is presented on strands,
one strand per path.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable

import networkx as nx

from src.diagram.models import ChordDiagram, LinComb, from_words
from src.errors import SkeletonError
from src.skeleton.analysis import is_connected
from src.skeleton.catalog import strands
from src.skeleton.models import Skeleton, id_key, sorted_ids
from src.skeleton.operations import TreeSpec, check_tree

logger = logging.getLogger(__name__)


def _tree_vertices(s: Skeleton, tree: TreeSpec) -> set[str]:
    verts = set(tree.vertices)
    for e in tree.edges:
        verts.add(s.tail_vertex(e))
        verts.add(s.head_vertex(e))
    return verts


def _push_once(s: Skeleton, d: ChordDiagram, t: str, w: str) -> list[tuple[int, ChordDiagram]]:
    """Move the endpoint of ``t`` nearest ``w`` onto the other edges at ``w``.

    From the relation sum_i eps_i D_i = 0 (eps = -1 outgoing, +1 incoming):
    D_t = -eps_t * sum_{i != t} eps_i D_i.
    """
    words = d.words()
    tail, head = s.edges[t]
    h_t = tail if s.vertex_of(tail) == w else head
    eps_t = -1 if h_t == tail else 1
    word = list(words[t])
    label = word.pop(0) if h_t == tail else word.pop()
    base = {k: list(v) for k, v in words.items()}
    base[t] = word
    out = []
    for h, edge, outgoing in s.incident(w):
        if h == h_t:
            continue
        trial = {k: list(v) for k, v in base.items()}
        if outgoing:
            trial.setdefault(edge, []).insert(0, label)
        else:
            trial.setdefault(edge, []).append(label)
        eps = -1 if outgoing else 1
        out.append((-eps_t * eps, from_words(trial, s)))
    return out


def push_off_tree(v: LinComb, tree: TreeSpec, *, root: str | None = None) -> LinComb:
    """Rewrite ``v`` so no endpoint lies on a tree edge.

    Tree edges are cleared shallowest first (depth measured from ``root``), each
    endpoint pushed across the edge's deeper vertex, nearest endpoint first.
    Pushing root to leaf this way lands in the same quotient class as contracting
    the tree leaf to root; every push is one vertex invariance relation.
    """
    s = v.skeleton
    if tree.point is not None or not tree.edges:
        return v
    check_tree(s, tree)
    g = nx.Graph()
    for e in tree.edges:
        g.add_edge(s.tail_vertex(e), s.head_vertex(e))
    root = root if root is not None else sorted_ids(g.nodes)[0]
    if root not in g:
        raise SkeletonError(f"root {root!r} is not a vertex of the tree")
    depth = nx.single_source_shortest_path_length(g, root)

    def child(e: str) -> str:
        a, b = s.tail_vertex(e), s.head_vertex(e)
        return a if depth[a] > depth[b] else b

    order = sorted(tree.edges, key=lambda e: (depth[child(e)], id_key(e)))
    for t in order:
        w = child(t)
        done = LinComb.zero(s, v.domain)
        pending = v
        while not pending.is_zero():
            nxt = LinComb.zero(s, v.domain)
            for d, c in pending.items():
                if d.count_on(t) == 0:
                    done.add_term(d, c)
                    continue
                for k, image in _push_once(s, d, t, w):
                    nxt.add_term(image, c * v.domain.convert(k))
            pending = nxt
        v = done
    return v


@dataclass(frozen=True)
class StrandLayout:
    """Non-tree paths, each as ``(segment, forward)`` steps; strand k is ``paths[k - 1]``."""

    skeleton: Skeleton
    tree: TreeSpec
    paths: tuple[tuple[tuple[str, bool], ...], ...]

    @property
    def n(self) -> int:
        return len(self.paths)


def strand_layout(s: Skeleton, tree_edges: Iterable[str]) -> StrandLayout:
    tree = TreeSpec.of((), tree_edges)
    if s.circles:
        raise SkeletonError("cannot sweep a skeleton with free circles")
    for e in tree.edges:
        if e not in s.edges:
            raise SkeletonError(f"tree edge {e!r} is not an edge")
    trivalent = set(s.vertices_of_kind("trivalent"))
    if tree.edges:
        verts = _tree_vertices(s, tree)
        tree = TreeSpec.of(verts, tree.edges)
        check_tree(s, tree)
        if not is_connected(s):
            raise SkeletonError("sweeping needs a connected skeleton")
    else:
        if len(trivalent) > 1:
            raise SkeletonError("the spanning tree is empty but the skeleton has several vertices")
        verts = set(trivalent)
    missing = trivalent - verts
    if missing:
        raise SkeletonError(f"tree does not span vertices {', '.join(sorted_ids(missing))}")

    def terminal(w: str) -> bool:
        return w in verts or not s.vertices[w].bivalent

    visited: set[str] = set()
    paths = []
    for start in sorted_ids(e for e in s.edges if e not in tree.edges):
        if start in visited:
            continue
        steps: list[tuple[str, bool]] = [(start, True)]
        visited.add(start)
        # forward from the head
        h = s.edges[start][1]
        while not terminal(s.vertex_of(h)):
            nh = s.vertices[s.vertex_of(h)].successor(h)
            seg = s.edge_of(nh)
            if seg == start:
                raise SkeletonError(f"segment {start!r} lies on a closed path that meets no tree vertex")
            fwd = s.edges[seg][0] == nh
            steps.append((seg, fwd))
            visited.add(seg)
            h = s.edges[seg][1] if fwd else s.edges[seg][0]
        # backward from the tail
        h = s.edges[start][0]
        while not terminal(s.vertex_of(h)):
            nh = s.vertices[s.vertex_of(h)].successor(h)
            seg = s.edge_of(nh)
            fwd = s.edges[seg][1] == nh
            steps.insert(0, (seg, fwd))
            visited.add(seg)
            h = s.edges[seg][0] if fwd else s.edges[seg][1]
        lead = min(steps, key=lambda st: id_key(st[0]))
        if not lead[1]:
            steps = [(seg, not fwd) for seg, fwd in reversed(steps)]
        paths.append(tuple(steps))
    paths.sort(key=lambda p: id_key(min((seg for seg, _ in p), key=id_key)))
    return StrandLayout(s, tree, tuple(paths))


def _lead(path: tuple[tuple[str, bool], ...]) -> str:
    return min((seg for seg, _ in path), key=id_key)


def sweep_lincomb(v: LinComb, tree_edges: Iterable[str], *, root: str | None = None) -> LinComb:
    """Push chords off the tree and read each path as a strand (unreduced)."""
    layout = strand_layout(v.skeleton, tree_edges)
    pushed = push_off_tree(v, layout.tree, root=root)
    target = strands(layout.n)

    def image(d: ChordDiagram):
        words = d.words()
        sign = 1
        out: dict[str, list] = {}
        for k, path in enumerate(layout.paths, start=1):
            word: list = []
            for seg, fwd in path:
                piece = words.get(seg, [])
                if not fwd:
                    piece = list(reversed(piece))
                    sign *= (-1) ** len(piece)
                word.extend(piece)
            if word:
                out[str(k)] = word
        return [(sign, from_words(out, target))]

    return pushed.map_terms(image, target)


def sweep(v: LinComb, tree_edges: Iterable[str], *, max_degree: int | None = None, root: str | None = None):
    """Series on ``strands(n)``, one strand per non-tree path, in reduced form."""
    from src.strand_algebra.series import Series

    swept = sweep_lincomb(v, tree_edges, root=root)
    degs = v.degrees()
    top = max_degree if max_degree is not None else (degs[-1] if degs else 0)
    logger.info("swept %d terms onto %d strands", len(v), swept.skeleton.strand_count)
    return Series(swept.skeleton.strand_count, top, {k: swept.degree_part(k) for k in swept.degrees()}, domain=v.domain)


def include(w: LinComb, s: Skeleton, tree_edges: Iterable[str]) -> LinComb:
    """Place strand k's word on the lead segment of path k."""
    layout = strand_layout(s, tree_edges)
    if w.skeleton != strands(layout.n):
        raise SkeletonError(f"expected a combination on {layout.n} strands")
    leads = [_lead(p) for p in layout.paths]

    def image(d: ChordDiagram):
        words = {leads[int(k) - 1]: labels for k, labels in d.words().items()}
        return [(1, from_words(words, s))]

    return w.map_terms(image, s)
