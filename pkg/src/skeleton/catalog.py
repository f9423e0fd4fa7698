"""Built-in skeletons.

Half-edge ids follow ``<edge>.t`` / ``<edge>.h`` for the tail and head of each
edge. Planar constants store their cyclic orders counterclockwise in the
standard picture.
"""
from __future__ import annotations

import re
from functools import lru_cache

from src.skeleton.models import Skeleton, build_skeleton


def _t(e: str) -> str:
    return f"{e}.t"


def _h(e: str) -> str:
    return f"{e}.h"


def _edges(*names: str) -> dict[str, tuple[str, str]]:
    return {e: (_t(e), _h(e)) for e in names}


@lru_cache(maxsize=None)
def circle() -> Skeleton:
    return build_skeleton({}, {}, circles=["c"])


@lru_cache(maxsize=None)
def theta() -> Skeleton:
    """Planar theta: edges 1, 2, 3 all run from ``u`` to ``v``."""
    return build_skeleton(
        {
            "u": ("trivalent", [_t("1"), _t("2"), _t("3")]),
            "v": ("trivalent", [_h("1"), _h("3"), _h("2")]),
        },
        _edges("1", "2", "3"),
    )


@lru_cache(maxsize=None)
def dumbbell() -> Skeleton:
    """Two loops ``l1`` at ``p`` and ``l2`` at ``q`` joined by the bridge ``b`` (p to q)."""
    return build_skeleton(
        {
            "p": ("trivalent", [_t("b"), _h("l1"), _t("l1")]),
            "q": ("trivalent", [_h("b"), _t("l2"), _h("l2")]),
        },
        _edges("b", "l1", "l2"),
    )


@lru_cache(maxsize=None)
def tetrahedron() -> Skeleton:
    """Planar tetrahedron: outer triangle A, B, C around the centre D.

    Edge ``AD`` runs A to D with both other edges at A incoming and both other
    edges at D outgoing, so it can be unzipped (the result is a dumbbell).
    """
    return build_skeleton(
        {
            "A": ("trivalent", [_t("AD"), _h("CA"), _h("BA")]),
            "B": ("trivalent", [_t("BA"), _h("DB"), _t("BC")]),
            "C": ("trivalent", [_t("CA"), _h("BC"), _h("DC")]),
            "D": ("trivalent", [_h("AD"), _t("DB"), _t("DC")]),
        },
        _edges("AD", "BA", "BC", "CA", "DB", "DC"),
    )


def twisted_tetrahedron() -> Skeleton:
    # twisting is an embedding datum; the skeleton is the plain tetrahedron
    return tetrahedron()


@lru_cache(maxsize=None)
def associator_tetrahedron() -> Skeleton:
    """The tetrahedron carrying the associator.

    Strands ``1, 2, 3`` run upward from the bottom tree (``p`` joins 1 and 2,
    ``q`` joins that with 3) to the top tree (``r`` joins 2 and 3, ``s`` joins
    that with 1). Tree edges: ``m_bot`` (p to q), ``root`` (s to q),
    ``m_top`` (r to s). Switching strand 1 makes ``m_top`` unzippable and the
    unzip lands on a dumbbell with loops ``2`` (through 1) and ``3`` (through root).
    """
    return build_skeleton(
        {
            "p": ("trivalent", [_t("1"), _t("2"), _t("m_bot")]),
            "q": ("trivalent", [_h("m_bot"), _t("3"), _h("root")]),
            "r": ("trivalent", [_t("m_top"), _h("2"), _h("3")]),
            "s": ("trivalent", [_h("m_top"), _t("root"), _h("1")]),
        },
        _edges("1", "2", "3", "m_bot", "m_top", "root"),
    )


ASSOCIATOR_TREE = ("m_bot", "root", "m_top")


@lru_cache(maxsize=None)
def strands(n: int) -> Skeleton:
    """``n`` upward strands ``1..n``, each from boundary ``b<i>`` to boundary ``t<i>``."""
    if n < 0:
        raise ValueError("strand count must be non-negative")
    names = [str(i) for i in range(1, n + 1)]
    vertices = {}
    for e in names:
        vertices[f"b{e}"] = ("boundary", [_t(e)])
        vertices[f"t{e}"] = ("boundary", [_h(e)])
    return build_skeleton(vertices, _edges(*names))


def _bivalent_circle(kinds: list[str]) -> Skeleton:
    k = len(kinds)
    names = [f"a{i}" for i in range(1, k + 1)]
    vertices = {}
    for i, kind in enumerate(kinds):
        incoming = names[i - 1]
        outgoing = names[i]
        vertices[f"x{i + 1}"] = (kind, [_h(incoming), _t(outgoing)])
    return build_skeleton(vertices, _edges(*names))


@lru_cache(maxsize=None)
def antidot_circle() -> Skeleton:
    return _bivalent_circle(["antidot"])


@lru_cache(maxsize=None)
def triple_antidot_circle() -> Skeleton:
    return _bivalent_circle(["antidot", "antidot", "antidot"])


def _decorated_theta(kind: str) -> Skeleton:
    """Planar theta with one bivalent vertex of ``kind`` in the middle of each edge."""
    vertices: dict[str, tuple[str, list[str]]] = {
        "u": ("trivalent", [_t("1a"), _t("2a"), _t("3a")]),
        "v": ("trivalent", [_h("1b"), _h("3b"), _h("2b")]),
    }
    for e in ("1", "2", "3"):
        vertices[f"x{e}"] = (kind, [_h(f"{e}a"), _t(f"{e}b")])
    return build_skeleton(vertices, _edges("1a", "1b", "2a", "2b", "3a", "3b"))


@lru_cache(maxsize=None)
def crossed_theta() -> Skeleton:
    return _decorated_theta("antidot")


@lru_cache(maxsize=None)
def dotted_theta() -> Skeleton:
    return _decorated_theta("dot")


@lru_cache(maxsize=None)
def antidot_dumbbell() -> Skeleton:
    """Dumbbell with two anti-dots on each loop (four in all)."""
    return build_skeleton(
        {
            "p": ("trivalent", [_t("b"), _h("l1c"), _t("l1a")]),
            "q": ("trivalent", [_h("b"), _t("l2a"), _h("l2c")]),
            "y1": ("antidot", [_h("l1a"), _t("l1b")]),
            "y2": ("antidot", [_h("l1b"), _t("l1c")]),
            "z1": ("antidot", [_h("l2a"), _t("l2b")]),
            "z2": ("antidot", [_h("l2b"), _t("l2c")]),
        },
        _edges("b", "l1a", "l1b", "l1c", "l2a", "l2b", "l2c"),
    )


def dktg_generators() -> dict[str, Skeleton]:
    """Skeletons of the four generators of dotted KTGs."""
    return {
        "tetrahedron": tetrahedron(),
        "twisted_tetrahedron": twisted_tetrahedron(),
        "antidot_circle": antidot_circle(),
        "triple_antidot_circle": triple_antidot_circle(),
    }


_NAMED = {
    "circle": circle,
    "theta": theta,
    "dumbbell": dumbbell,
    "tetrahedron": tetrahedron,
    "twisted_tetrahedron": twisted_tetrahedron,
    "associator_tetrahedron": associator_tetrahedron,
    "antidot_circle": antidot_circle,
    "triple_antidot_circle": triple_antidot_circle,
    "crossed_theta": crossed_theta,
    "dotted_theta": dotted_theta,
    "antidot_dumbbell": antidot_dumbbell,
}

_STRANDS_RE = re.compile(r"^strands\((\d+)\)$")


def named_skeleton(name: str) -> Skeleton | None:
    m = _STRANDS_RE.match(name.strip())
    if m:
        return strands(int(m.group(1)))
    factory = _NAMED.get(name.strip())
    return factory() if factory else None


def catalog_names() -> list[str]:
    return [*_NAMED, "strands(n)"]
