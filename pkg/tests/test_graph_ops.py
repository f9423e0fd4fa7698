from __future__ import annotations

import pytest
from sympy.polys.domains import QQ

from src.associator.equations import phi_star
from src.diagram.enumerate import enumerate_diagrams
from src.diagram.models import LinComb
from src.diagram.text_format import parse_inline
from src.errors import ParseError, SkeletonError
from src.graph_ops import operations as ops
from src.graph_ops.element import GradedElement
from src.graph_ops.pipeline import Stage, parse_pipeline, run_pipeline
from src.graph_ops.sweep import include, push_off_tree, strand_layout, sweep
from src.skeleton import catalog
from src.skeleton.operations import TreeSpec, switch_edge, unzip_corners
from src.strand_algebra.series import Series


def single(s, text: str, coeff=1) -> LinComb:
    return LinComb.single(s, parse_inline(text, s), coeff)


def test_switch_sign_counts_endpoints():
    theta = catalog.theta()
    v = single(theta, "1:0-2:0")
    out = ops.switch("1", v)
    assert out.skeleton == switch_edge(theta, "1")
    assert list(out.items())[0][1] == QQ(-1)
    assert ops.switch("1", out) == v

    both = single(theta, "1:0-1:1")
    assert list(ops.switch("1", both).items())[0][1] == QQ(1)


def test_unzip_splits_each_endpoint():
    tet = catalog.tetrahedron()
    out = ops.unzip("AD", single(tet, "AD:0-BC:0"))
    assert len(out) == 2
    assert out.degrees() == [1]
    assert ops.unzip("AD", single(tet, "AD:0-AD:1")).degrees() == [1]


def test_delete_drops_diagrams_on_the_edge():
    db = catalog.dumbbell()
    assert ops.delete("b", single(db, "b:0-l1:0")).is_zero()
    kept = ops.delete("b", single(db, "l1:0-l2:0"))
    assert kept.skeleton.circles == frozenset({"l1", "l2"})
    assert len(kept) == 1


def test_connect_carries_both_sides():
    theta = catalog.theta()
    out = ops.connect("2", "3", single(theta, "1:0-2:0"), single(theta, "1:0-3:0"))
    assert out.degrees() == [2]
    assert len(out) == 1


def test_push_off_tree_keeps_the_class(reduce):
    theta = catalog.theta()
    v = single(theta, "1:0-2:0") + single(theta, "1:0-1:1", QQ(1, 2))
    pushed = push_off_tree(v, TreeSpec.of(["u", "v"], ["1"]))
    assert all(d.count_on("1") == 0 for d in pushed)
    assert reduce(pushed) == reduce(v)


def _unzip_as_tree_sum():
    tet = catalog.tetrahedron()
    ha, hb, hc, hd = unzip_corners(tet, ["AD"])
    pairing = [(ha, "2.t"), (hd, "2.h"), (hb, "3.t"), (hc, "3.h")]
    return tet, TreeSpec.of(["A", "D"], ["AD"]), catalog.theta(), TreeSpec.of(["u", "v"], ["1"]), pairing


@pytest.mark.parametrize("other", ["empty", pytest.param("1:0-2:0", marks=pytest.mark.slow)])
def test_tree_connect_does_not_depend_on_the_push_order(other, reduce):
    tet, t1, theta, t2, pairing = _unzip_as_tree_sum()
    v1 = single(tet, "AD:0-CA:0")
    v2 = single(theta, other)
    expected = reduce(ops.tree_connect(t1, t2, pairing, v1, v2))
    assert not expected.is_zero()
    for r1 in ("A", "D"):
        for r2 in ("u", "v"):
            out = ops.tree_connect(t1, t2, pairing, push_off_tree(v1, t1, root=r1), push_off_tree(v2, t2, root=r2))
            assert reduce(out) == expected, (r1, r2)


@pytest.mark.parametrize("degree", [1, pytest.param(2, marks=pytest.mark.slow)])
def test_push_off_a_path_tree_from_either_end(degree, reduce):
    tet = catalog.tetrahedron()
    tree = TreeSpec.of(["A", "D", "B"], ["AD", "DB"])
    for d in enumerate_diagrams(tet, degree):
        if not (d.count_on("AD") or d.count_on("DB")):
            continue
        v = LinComb.single(tet, d)
        for root in ("A", "D", "B"):
            assert reduce(push_off_tree(v, tree, root=root)) == reduce(v), (str(d), root)


def test_associator_layout():
    layout = strand_layout(catalog.associator_tetrahedron(), catalog.ASSOCIATOR_TREE)
    assert layout.n == 3
    assert [[seg for seg, _ in path] for path in layout.paths] == [["1"], ["2"], ["3"]]
    assert all(fwd for path in layout.paths for _, fwd in path)


def test_layout_rejects_bad_trees():
    with pytest.raises(SkeletonError):
        strand_layout(catalog.associator_tetrahedron(), ["m_bot"])
    with pytest.raises(SkeletonError):
        strand_layout(catalog.theta(), ["1", "2"])
    with pytest.raises(SkeletonError):
        strand_layout(catalog.circle(), [])
    with pytest.raises(SkeletonError):
        strand_layout(catalog.theta(), ["nope"])


def test_sweep_theta_onto_two_strands():
    theta = catalog.theta()
    swept = sweep(single(theta, "2:0-3:0"), ["1"])
    assert swept == Series.t(2, 1, 2, 1)


def test_sweep_pushes_chords_off_the_tree():
    theta = catalog.theta()
    v = single(theta, "1:0-2:0")
    direct = sweep(v, ["1"])
    pushed = sweep(push_off_tree(v, TreeSpec.of(["u", "v"], ["1"])), ["1"])
    assert direct == pushed
    assert direct.n == 2


def test_include_then_sweep_is_identity(reduce):
    w = phi_star(2).part(2)
    tet = catalog.associator_tetrahedron()
    placed = include(w, tet, catalog.ASSOCIATOR_TREE)
    assert placed.skeleton == tet
    assert sweep(placed, catalog.ASSOCIATOR_TREE).part(2) == reduce(w)


def test_include_checks_strand_count():
    with pytest.raises(SkeletonError):
        include(phi_star(2).part(2), catalog.theta(), ["1"])


@pytest.mark.slow
@pytest.mark.parametrize(
    "name, apply",
    [
        ("theta", lambda v: ops.switch("2", v)),
        ("dumbbell", lambda v: ops.switch("l1", v)),
        ("dumbbell", lambda v: ops.delete("b", v)),
        ("tetrahedron", lambda v: ops.unzip("AD", v)),
        ("tetrahedron", lambda v: ops.switch("AD", v)),
    ],
)
@pytest.mark.parametrize("degree", [1, 2])
def test_operations_descend_to_the_quotient(name, apply, degree, reduce):
    s = catalog.named_skeleton(name)
    for d in enumerate_diagrams(s, degree):
        v = LinComb.single(s, d)
        assert reduce(apply(reduce(v))) == reduce(apply(v)), str(d)


@pytest.mark.parametrize(
    "degree, other",
    [
        (1, "empty"),
        pytest.param(2, "empty", marks=pytest.mark.slow),
        pytest.param(1, "1:0-2:0", marks=pytest.mark.slow),
        pytest.param(2, "1:0-2:0", marks=pytest.mark.slow),
    ],
)
def test_connect_descends_to_the_quotient(degree, other, reduce):
    theta = catalog.theta()
    other = single(theta, other)
    for d in enumerate_diagrams(theta, degree):
        v = LinComb.single(theta, d)
        assert reduce(ops.connect("3", "3", reduce(v), other)) == reduce(ops.connect("3", "3", v, other))


def test_parse_pipeline():
    stages = parse_pipeline("op switch e=1 | op unzip e=m_top\nreduce")
    assert stages == [Stage("switch", {"e": "1"}), Stage("unzip", {"e": "m_top"}), Stage("reduce")]
    assert str(stages[0]) == "op switch e=1"


@pytest.mark.parametrize(
    "text",
    [
        "op twist e=1",
        "op switch",
        "op switch e",
        "switch e=1",
        "op sweep tree=1 | op switch e=2",
    ],
)
def test_parse_pipeline_errors(text):
    with pytest.raises(ParseError):
        parse_pipeline(text, source="--ops")


def test_run_pipeline(reduce):
    theta = catalog.theta()
    element = GradedElement(single(theta, "1:0-2:0"))
    out = run_pipeline(element=element, stages=parse_pipeline("op switch e=1 | reduce"))
    assert isinstance(out, GradedElement)
    assert out.value == reduce(ops.switch("1", element.value))


def test_run_pipeline_ending_in_sweep():
    theta = catalog.theta()
    element = GradedElement(single(theta, "2:0-3:0"))
    out = run_pipeline(element=element, stages=parse_pipeline("op sweep tree=1 | reduce"))
    assert out == Series.t(2, 1, 2, 1)


def test_empty_pipeline_returns_input():
    element = GradedElement(single(catalog.theta(), "2:0-3:0"))
    out = run_pipeline(element=element, stages=[])
    assert out.value == element.value
