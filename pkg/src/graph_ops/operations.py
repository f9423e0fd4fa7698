"""Operations on chord diagrams induced by the skeleton operations.

Each function works on raw combinations; reduction is left to the caller so
that descent (operate then reduce equals reduce then operate) can be tested.
"""
from __future__ import annotations

import itertools
import logging

from src.diagram.models import ChordDiagram, LinComb, from_words
from src.skeleton import operations as sk
from src.skeleton.operations import Rewiring, TreeSpec

logger = logging.getLogger(__name__)


def transport(rw: Rewiring, key_words: dict[str, list]) -> ChordDiagram | None:
    """Lay the labels of each source key along the target segments; None if a key was deleted."""
    carried = rw.carried()
    if any(labels and key not in carried for key, labels in key_words.items()):
        return None
    words = {seg: [x for k in keys for x in key_words.get(k, [])] for seg, keys in rw.paths.items()}
    return from_words(words, rw.target)


def _transport_all(rw: Rewiring, v: LinComb) -> LinComb:
    def image(d: ChordDiagram):
        out = transport(rw, d.words())
        return [] if out is None else [(1, out)]

    return v.map_terms(image, rw.target)


def switch(e: str, v: LinComb) -> LinComb:
    """Reverse the endpoint order on ``e``; sign (-1)^k for k endpoints on it."""
    target = sk.switch_edge(v.skeleton, e)

    def image(d: ChordDiagram):
        words = d.words()
        k = len(words.get(e, []))
        if k:
            words[e] = list(reversed(words[e]))
        return [((-1) ** k, from_words(words, target))]

    return v.map_terms(image, target)


def delete(e: str, v: LinComb) -> LinComb:
    rw = sk.delete_edge_rewiring(v.skeleton, e)
    return _transport_all(rw, v)


def _unzip_with(rw: Rewiring, path: list[str], v: LinComb) -> LinComb:
    def image(d: ChordDiagram):
        words = d.words()
        on_path = [(seg, lab) for seg in path for lab in words.get(seg, [])]
        out = []
        for pick in itertools.product("lr", repeat=len(on_path)):
            keyed = {k: list(w) for k, w in words.items() if k not in path}
            for (seg, lab), side in zip(on_path, pick):
                keyed.setdefault(f"{seg}|{side}", []).append(lab)
            lifted = transport(rw, keyed)
            if lifted is not None:
                out.append((1, lifted))
        return out

    return v.map_terms(image, rw.target)


def unzip(e: str, v: LinComb) -> LinComb:
    """Each endpoint on ``e`` moves to one of the two daughter edges: 2^k terms."""
    return _unzip_with(sk.unzip_edge_rewiring(v.skeleton, e), [e], v)


def dotted_unzip(e: str, v: LinComb) -> LinComb:
    path, _ = sk.dotted_path(v.skeleton, e)
    return _unzip_with(sk.dotted_unzip_rewiring(v.skeleton, e), path, v)


def cancel(d: str, a: str, v: LinComb) -> LinComb:
    return _transport_all(sk.cancel_rewiring(v.skeleton, d, a), v)


def _juxtapose(rw: Rewiring, rename: dict[str, str], v1: LinComb, v2: LinComb) -> LinComb:
    a, b = v1 + LinComb.zero(v1.skeleton, v2.domain), v2 + LinComb.zero(v2.skeleton, v1.domain)
    out = LinComb.zero(rw.target, a.domain)
    for d1, c1 in a.items():
        w1 = d1.words()
        for d2, c2 in b.items():
            words = {k: list(w) for k, w in w1.items()}
            for seg, labels in d2.words().items():
                words.setdefault(rename[seg], []).extend(x + d1.degree for x in labels)
            lifted = transport(rw, words)
            if lifted is not None:
                out.add_term(lifted, c1 * c2)
    return out


def connect(e: str, f: str, v1: LinComb, v2: LinComb) -> LinComb:
    """Connected sum along ``e`` and ``f``; chords are carried over unchanged."""
    summed = sk.connected_sum_rewiring(v1.skeleton, e, v2.skeleton, f)
    return _juxtapose(summed.rewiring, summed.rename, v1, v2)


def tree_connect(
    t1: TreeSpec, t2: TreeSpec, pairing: list[tuple[str, str]], v1: LinComb, v2: LinComb
) -> LinComb:
    """Push chords off both trees with vertex invariance, then join through new dots."""
    from src.graph_ops.sweep import push_off_tree

    v1 = push_off_tree(v1, t1)
    v2 = push_off_tree(v2, t2)
    summed = sk.tree_connected_sum_rewiring(v1.skeleton, t1, v2.skeleton, t2, pairing)
    return _juxtapose(summed.rewiring, summed.rename, v1, v2)
