from __future__ import annotations

from itertools import permutations

import pytest
from sympy.polys.domains import QQ

from src.diagram.enumerate import enumerate_diagrams
from src.diagram.models import LinComb
from src.errors import AlgebraError, CellMismatchError, ParseError
from src.skeleton.catalog import strands
from src.strand_algebra.free_group import (
    BETA_3,
    BETA_5,
    FreeGroupMap,
    deletion_map,
    doubling_map,
    free_reduce,
    parse_map,
    parse_word,
    permutation_map,
    reversal_map,
)
from src.strand_algebra.maps import d, delta, parse_permutation, permute, switch_all
from src.strand_algebra.pullback import pullback
from src.strand_algebra.series import Series, chord, dump_series, parse_series


def _diagrams(n: int, top: int = 2):
    s = strands(n)
    for k in range(top + 1):
        for diagram in enumerate_diagrams(s, k):
            yield LinComb.single(s, diagram)


def t(n: int, i: int, j: int, max_degree: int = 2) -> Series:
    return Series.t(n, i, j, max_degree)


def test_words_and_maps():
    assert parse_word("x2x1'") == ((2, 1), (1, -1))
    assert free_reduce(parse_word("x1x2x2'x1'x3")) == ((3, 1),)
    assert parse_map("(x2, x3)", target_rank=3) == FreeGroupMap.of(["x2", "x3"], 3)
    with pytest.raises(ValueError):
        FreeGroupMap.of(["x4"], 3)
    with pytest.raises(ParseError):
        parse_word("y1")


def test_beta5_cubed_reduces_to_identity():
    cube = BETA_5.compose(BETA_5).compose(BETA_5)
    assert cube.is_identity()


def test_doubling_spreads_endpoints():
    v = LinComb.single(strands(2), chord(2, 1, 2))
    expected = LinComb.single(strands(3), chord(3, 1, 3)) + LinComb.single(strands(3), chord(3, 2, 3))
    assert delta(1, v) == expected
    assert delta(0, v) == LinComb.single(strands(3), chord(3, 2, 3))
    assert delta(3, v) == LinComb.single(strands(3), chord(3, 1, 2))


def test_deletion_kills_diagrams_on_the_strand():
    v = LinComb.single(strands(3), chord(3, 1, 2)) + LinComb.single(strands(3), chord(3, 3, 3))
    assert d(3, v) == LinComb.single(strands(2), chord(2, 1, 2))
    assert d(1, v) == LinComb.single(strands(2), chord(2, 2, 2))


def test_permute_moves_chords_forward():
    v = LinComb.single(strands(3), chord(3, 1, 2))
    assert permute((2, 3, 1), v) == LinComb.single(strands(3), chord(3, 2, 3))
    assert parse_permutation("231") == (2, 3, 1)
    assert parse_permutation("(2,3,1)") == (2, 3, 1)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_doubling_is_a_pullback(n):
    for v in _diagrams(n):
        for i in range(n + 2):
            assert delta(i, v) == pullback(doubling_map(i, n), v)


@pytest.mark.parametrize("n", [2, 3])
def test_deletion_is_a_pullback(n):
    for v in _diagrams(n):
        for i in range(1, n + 1):
            assert d(i, v) == pullback(deletion_map(i, n), v)


def test_permutation_is_a_pullback():
    for v in _diagrams(3):
        for sigma in permutations((1, 2, 3)):
            assert permute(sigma, v) == pullback(permutation_map(sigma), v)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_switch_all_is_a_pullback(n):
    for v in _diagrams(n):
        assert switch_all(v) == pullback(reversal_map(n), v)


@pytest.mark.slow
def test_strand_maps_on_four_strands():
    for v in _diagrams(4):
        assert delta(2, v) == pullback(doubling_map(2, 4), v)
        assert d(4, v) == pullback(deletion_map(4, 4), v)
        assert permute((4, 1, 3, 2), v) == pullback(permutation_map((4, 1, 3, 2)), v)
        assert switch_all(v) == pullback(reversal_map(4), v)


@pytest.mark.parametrize(
    "outer, inner",
    [
        (doubling_map(1, 2), BETA_3),
        (BETA_5, BETA_5),
        (permutation_map((2, 3, 1)), deletion_map(2, 3)),
        (reversal_map(3), BETA_3),
    ],
)
def test_pullback_is_functorial(outer, inner, reduce):
    composite = outer.compose(inner)
    for v in _diagrams(outer.target_rank):
        assert reduce(pullback(composite, v)) == reduce(pullback(inner, pullback(outer, v)))


def test_rotation_pullback_has_order_three():
    s = Series.one(3, 2) + t(3, 1, 2) + t(3, 1, 3) * t(3, 2, 3) - t(3, 2, 2) * t(3, 1, 2)
    assert s.pullback(BETA_5).pullback(BETA_5).pullback(BETA_5) == s


def test_short_chord_is_central():
    assert t(2, 1, 1) * t(2, 1, 2) == t(2, 1, 2) * t(2, 1, 1)
    assert t(3, 2, 2) * t(3, 1, 3) == t(3, 1, 3) * t(3, 2, 2)


def test_infinitesimal_braid_relation():
    lhs = t(3, 1, 2) * (t(3, 1, 3) + t(3, 2, 3))
    rhs = (t(3, 1, 3) + t(3, 2, 3)) * t(3, 1, 2)
    assert lhs == rhs


def test_inverse():
    a = Series.one(2, 3) + Series.t(2, 1, 2, 3) + Series.t(2, 1, 1, 3, QQ(1, 2)) * Series.t(2, 2, 2, 3)
    assert a * a.inverse() == Series.one(2, 3)
    assert a.inverse() * a == Series.one(2, 3)


def test_inverse_needs_unit_constant():
    with pytest.raises(AlgebraError):
        Series.t(2, 1, 2, 2).inverse()


def test_exp_of_a_chord():
    e = Series.exp(chord_lincomb(2, 1, 2), 3)
    assert e.part(0) == Series.one(2, 3).part(0)
    assert e.part(2) == (t(2, 1, 2, 3) * t(2, 1, 2, 3)).part(2).scale(QQ(1, 2))
    assert e.part(3) == (t(2, 1, 2, 3) * t(2, 1, 2, 3) * t(2, 1, 2, 3)).part(3).scale(QQ(1, 6))


def chord_lincomb(n: int, i: int, j: int) -> LinComb:
    return LinComb.single(strands(n), chord(n, i, j))


def test_series_shape_mismatch():
    with pytest.raises(CellMismatchError):
        Series.one(2, 2) + Series.one(3, 2)
    with pytest.raises(CellMismatchError):
        Series.one(2, 2) * Series.one(2, 3)


def test_series_text_format():
    s = Series.one(3, 2) - (t(3, 1, 2) * t(3, 2, 3) - t(3, 2, 3) * t(3, 1, 2)).scale(QQ(1, 24))
    text = dump_series(s)
    assert text.startswith("strands 3 maxdeg 2\ndegree 0\n1 | empty\n")
    assert parse_series(text) == s


def test_series_parse_errors():
    with pytest.raises(ParseError):
        parse_series("strands 2\n")
    with pytest.raises(ParseError) as exc:
        parse_series("strands 2 maxdeg 1\ndegree 1\n1 | 1:0-1:1 2:0-2:1\n")
    assert exc.value.line == 3
