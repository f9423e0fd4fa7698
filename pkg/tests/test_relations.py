from __future__ import annotations

import json

import pytest

from src.associator.linear import rank
from src.diagram.enumerate import enumerate_diagrams
from src.diagram.models import LinComb
from src.diagram.text_format import parse_inline
from src.relations.cache import QuotientStore, default_store
from src.relations.generators import RELATION_VERSION, all_relations, four_t_relations, vi_relations
from src.relations.quotient import dim, quotient_basis, randomized_dim
from src.skeleton import catalog


def test_no_relations_below_their_degree():
    assert four_t_relations(catalog.strands(3), 1) == []
    assert vi_relations(catalog.theta(), 0) == []
    assert vi_relations(catalog.strands(2), 2) == []


@pytest.mark.parametrize("degree, expected", [(0, 1), (1, 1), (2, 2)])
def test_circle_dimensions(degree, expected):
    assert dim(catalog.circle(), degree) == expected


def test_one_strand_degree_two():
    assert dim(catalog.strands(1), 2) == 2


@pytest.mark.parametrize("n", [1, 2, 3])
def test_strand_algebra_degree_one_is_free(n):
    assert dim(catalog.strands(n), 1) == n * (n + 1) // 2


@pytest.mark.parametrize("s, degree", [(catalog.theta(), 1), (catalog.theta(), 2), (catalog.dumbbell(), 2)])
def test_every_relation_reduces_to_zero(s, degree):
    q = quotient_basis(s, degree)
    for rel in all_relations(s, degree):
        assert q.is_zero(rel)


def test_basis_diagrams_are_fixed_by_reduction():
    q = default_store().get(catalog.theta(), 2)
    for b in q.basis:
        v = LinComb.single(catalog.theta(), b)
        assert q.reduce(v) == v


def test_ending_on_a_bridge_is_zero_in_degree_one():
    s = catalog.dumbbell()
    store = default_store()
    on_bridge = [d for d in enumerate_diagrams(s, 1) if d.count_on("b")]
    assert on_bridge
    for d in on_bridge:
        assert store.is_zero(LinComb.single(s, d)), str(d)


@pytest.mark.slow
def test_bridge_diagrams_in_degree_two_span_one_line():
    # 4T+VI alone leave a commutator of the two loops behind on the bridge
    s = catalog.dumbbell()
    store = default_store()
    basis = store.get(s, 2).basis
    on_bridge = [d for d in enumerate_diagrams(s, 2) if d.count_on("b")]
    assert len(on_bridge) == 30

    reduced = [store.reduce(LinComb.single(s, d)) for d in on_bridge]
    nonzero = [v for v in reduced if not v.is_zero()]
    assert len(nonzero) == 6

    w = LinComb.zero(s)
    w.add_term(parse_inline("l1:0-l2:1 l2:0-l2:2", s), -2)
    w.add_term(parse_inline("l1:0-l2:2 l2:0-l2:1", s), 2)
    w = store.reduce(w)
    assert not w.is_zero()
    vectors = [[v.coeff(b) for b in basis] for v in nonzero]
    assert rank(vectors + [[w.coeff(b) for b in basis]]) == 1

    assert dim(s, 2) == dim(catalog.strands(2), 2) == 9


@pytest.mark.slow
@pytest.mark.parametrize(
    "name",
    ["circle", "theta", "dumbbell", "tetrahedron", "strands(1)", "strands(2)", "strands(3)", "strands(4)"],
)
@pytest.mark.parametrize("degree", [0, 1, 2])
def test_randomized_rank_agrees(name, degree):
    s = catalog.named_skeleton(name)
    assert randomized_dim(s, degree) == dim(s, degree)


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_modular_rank_on_small_cells(seed):
    assert randomized_dim(catalog.circle(), 2, seed=seed) == 2
    assert randomized_dim(catalog.strands(2), 2, seed=seed) == dim(catalog.strands(2), 2)


def test_disk_cache_round_trip(tmp_path):
    first = QuotientStore(tmp_path)
    q1 = first.get(catalog.theta(), 2)
    files = list(tmp_path.glob("*.json"))
    assert len(files) == 1

    q2 = QuotientStore(tmp_path).get(catalog.theta(), 2)
    assert q2.basis == q1.basis
    assert q2.table == q1.table


def test_stale_cache_is_recomputed(tmp_path):
    QuotientStore(tmp_path).get(catalog.circle(), 2)
    path = next(tmp_path.glob("*.json"))
    payload = json.loads(path.read_text(encoding="utf-8"))
    payload["version"] = "old"
    payload["basis"] = []
    path.write_text(json.dumps(payload), encoding="utf-8")

    q = QuotientStore(tmp_path).get(catalog.circle(), 2)
    assert q.dim == 2
    assert json.loads(path.read_text(encoding="utf-8"))["version"] == RELATION_VERSION


def test_corrupt_cache_is_ignored(tmp_path):
    QuotientStore(tmp_path).get(catalog.circle(), 1)
    path = next(tmp_path.glob("*.json"))
    path.write_text("{not json", encoding="utf-8")
    assert QuotientStore(tmp_path).get(catalog.circle(), 1).dim == 1


@pytest.mark.slow
def test_precompute_in_worker_processes(tmp_path):
    store = QuotientStore(tmp_path)
    cells = store.precompute(catalog.theta(), [0, 1, 2], workers=2)
    assert [q.degree for q in cells] == [0, 1, 2]
    assert [q.dim for q in cells] == [dim(catalog.theta(), k) for k in (0, 1, 2)]
