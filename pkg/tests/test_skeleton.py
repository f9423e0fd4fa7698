from __future__ import annotations

import pytest

from src.errors import ParseError, SkeletonError
from src.skeleton import catalog
from src.skeleton.analysis import is_bridge, is_connected, skeletons_isomorphic
from src.skeleton.composites import delete_via_tree_sum, kill_dots, theta_vertex_sum, unzip_via_tree_sum
from src.skeleton.operations import (
    POINT_IN,
    POINT_OUT,
    TreeSpec,
    check_tree,
    connected_sum,
    delete_edge,
    switch_edge,
    tree_connected_sum,
    unzip_corners,
    unzip_edge,
)
from src.skeleton.text_format import dump_skeleton, load_skeleton, parse_skeleton


def test_every_catalog_name_resolves():
    for name in catalog.catalog_names():
        if name == "strands(n)":
            continue
        assert catalog.named_skeleton(name) is not None, name
    assert catalog.named_skeleton("strands(3)").strand_count == 3
    assert catalog.named_skeleton("no_such_graph") is None


def test_theta_survives_dump_and_parse():
    theta = catalog.theta()
    assert parse_skeleton(dump_skeleton(theta)) == theta


def test_parse_reports_line_of_unknown_kind():
    with pytest.raises(ParseError) as exc:
        parse_skeleton("# comment\nvertex u quadrivalent a b c d\n", source="bad.skel")
    assert exc.value.line == 2
    assert exc.value.source == "bad.skel"


def test_parse_rejects_dangling_half_edge():
    with pytest.raises(ParseError):
        parse_skeleton("vertex u trivalent a b c\n")


def test_load_skeleton_missing_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_skeleton(str(tmp_path / "missing.skel"))


def test_switch_reverses_one_edge():
    theta = catalog.theta()
    switched = switch_edge(theta, "1")
    assert switched.edges["1"] == ("1.h", "1.t")
    assert switched.edges["2"] == theta.edges["2"]
    assert switch_edge(switched, "1") == theta


def test_delete_bridge_leaves_two_circles():
    out = delete_edge(catalog.dumbbell(), "b")
    assert out.circles == frozenset({"l1", "l2"})
    assert not out.vertices
    assert not out.edges


def test_delete_needs_one_incoming_and_one_outgoing():
    with pytest.raises(SkeletonError):
        delete_edge(catalog.theta(), "1")


def test_unzip_tetrahedron_gives_dumbbell():
    out = unzip_edge(catalog.tetrahedron(), "AD")
    assert len(out.vertices) == 2
    assert skeletons_isomorphic(out, catalog.dumbbell(), oriented=False)
    assert is_bridge(out, "BC")


def test_unzip_rejects_wrong_orientation():
    with pytest.raises(SkeletonError):
        unzip_edge(catalog.theta(), "1")


def test_associator_tetrahedron_unzips_after_switch():
    s = switch_edge(catalog.associator_tetrahedron(), "1")
    out = unzip_edge(s, "m_top")
    assert is_bridge(out, "m_bot")
    assert skeletons_isomorphic(out, catalog.dumbbell(), oriented=False)


def test_bridges_and_connectivity():
    assert is_bridge(catalog.dumbbell(), "b")
    assert not is_bridge(catalog.theta(), "1")
    assert is_connected(catalog.theta())
    assert not is_connected(delete_edge(catalog.dumbbell(), "b"))


def test_check_tree_rejects_cycle_and_boundary():
    with pytest.raises(SkeletonError):
        check_tree(catalog.theta(), TreeSpec.of(["u", "v"], ["1", "2"]))
    with pytest.raises(SkeletonError):
        check_tree(catalog.strands(1), TreeSpec.of(["b1"]))
    check_tree(catalog.theta(), TreeSpec.of(["u", "v"], ["1"]))


def test_connected_sum_of_thetas():
    out = connected_sum(catalog.theta(), "1", catalog.theta(), "1")
    assert len(out.vertices_of_kind("trivalent")) == 6
    assert len(out.edges) == 9
    assert is_connected(out)


def test_unzip_matches_tree_sum_realisation():
    tet = catalog.tetrahedron()
    assert skeletons_isomorphic(unzip_via_tree_sum(tet, "AD"), unzip_edge(tet, "AD"))


def test_delete_matches_tree_sum_realisation():
    db = catalog.dumbbell()
    assert skeletons_isomorphic(delete_via_tree_sum(db, "b"), delete_edge(db, "b"))


def test_theta_vertex_sum_is_theta():
    summed = theta_vertex_sum()
    assert len(summed.vertices_of_kind("dot")) == 3
    out = kill_dots(summed, summed.vertices_of_kind("dot"))
    assert skeletons_isomorphic(out, catalog.theta())


_PATH = TreeSpec.of(["u", "x1", "v"], ["1a", "1b"])
_PATH_PAIRING = [("2a.t", "2b.h"), ("3a.t", "3b.h"), ("3b.h", "3a.t"), ("2b.h", "2a.t")]


def test_tree_sum_matches_dots_with_antidots():
    out = tree_connected_sum(catalog.crossed_theta(), _PATH, catalog.dotted_theta(), _PATH, _PATH_PAIRING)
    assert len(out.vertices_of_kind("dot")) == 6


def test_tree_sum_rejects_antidot_against_antidot():
    with pytest.raises(SkeletonError, match="trees do not match"):
        tree_connected_sum(catalog.crossed_theta(), _PATH, catalog.crossed_theta(), _PATH, _PATH_PAIRING)


def test_tree_sum_rejects_pairings_that_break_the_tree():
    tet = catalog.tetrahedron()
    ha, hb, hc, hd = unzip_corners(tet, ["AD"])
    # both ends at A go to different theta vertices
    pairing = [(ha, "2.t"), (hb, "3.h"), (hc, "3.t"), (hd, "2.h")]
    with pytest.raises(SkeletonError, match="trees do not match"):
        tree_connected_sum(tet, TreeSpec.of(["A", "D"], ["AD"]), catalog.theta(), TreeSpec.of(["u", "v"], ["1"]), pairing)


@pytest.mark.parametrize("vertex, kind", [("v", "heads"), ("u", "tails")])
def test_tree_sum_rejects_junctions_of_like_ends(vertex, kind):
    theta = catalog.theta()
    ends = list(theta.vertices[vertex].half_edges)
    pairing = list(zip(ends, ends))
    with pytest.raises(SkeletonError, match=f"two {kind}"):
        tree_connected_sum(theta, TreeSpec.of([vertex]), theta, TreeSpec.of([vertex]), pairing)


def test_tree_sum_needs_two_points_or_two_trees():
    with pytest.raises(SkeletonError, match="point can only"):
        tree_connected_sum(
            catalog.circle(),
            TreeSpec.at_point("c"),
            catalog.dotted_theta(),
            TreeSpec.of(["x1"]),
            [(POINT_IN, "1b.t"), (POINT_OUT, "1a.h")],
        )
