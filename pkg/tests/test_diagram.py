from __future__ import annotations

import pytest
from sympy.polys.domains import QQ

from src.diagram.enumerate import count_naive, enumerate_diagrams
from src.diagram.models import EMPTY, LinComb, from_words
from src.diagram.text_format import format_inline, parse_inline, parse_lincomb
from src.errors import DiagramError, ParseError
from src.skeleton import catalog


@pytest.mark.parametrize("degree, expected", [(0, 1), (1, 1), (2, 2)])
def test_circle_diagram_counts(degree, expected):
    assert len(enumerate_diagrams(catalog.circle(), degree)) == expected


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_single_chords_on_strands(n):
    assert len(enumerate_diagrams(catalog.strands(n), 1)) == n * (n + 1) // 2


def test_two_chords_on_one_strand():
    # nested, disjoint and crossing
    assert len(enumerate_diagrams(catalog.strands(1), 2)) == 3


def test_enumeration_agrees_with_naive_count():
    for s in (catalog.theta(), catalog.strands(2)):
        for n in (1, 2):
            assert len(enumerate_diagrams(s, n)) == count_naive(s, n)


def test_circle_rotation_is_canonical():
    c = catalog.circle()
    assert from_words({"c": [0, 0, 1, 1]}, c) == from_words({"c": [0, 1, 1, 0]}, c)
    assert from_words({"c": [0, 1, 0, 1]}, c) != from_words({"c": [0, 0, 1, 1]}, c)


def test_inline_format_is_canonical():
    s = catalog.strands(2)
    d = parse_inline("2:0-1:0", s)
    assert format_inline(d) == "1:0-2:0"
    assert parse_inline("empty", s) == EMPTY


def test_from_words_checks_chords_and_segments():
    with pytest.raises(DiagramError):
        from_words({"1": [0]}, catalog.strands(1))
    with pytest.raises(DiagramError):
        from_words({"9": [0, 0]}, catalog.strands(1))


def test_lincomb_arithmetic():
    s = catalog.strands(2)
    d = parse_inline("1:0-2:0", s)
    v = LinComb.single(s, d, QQ(1, 2))
    w = v + v
    assert w.coeff(d) == QQ(1)
    assert (w - v - v).is_zero()
    assert len(v.scale(0)) == 0
    assert (v * 4).coeff(d) == QQ(2)


def test_parse_lincomb_file():
    text = "skeleton theta\n1/2 | 1:0-2:0\n-1 | empty   # unit\n"
    v, name = parse_lincomb(text, source="x.lc")
    assert name == "theta"
    assert v.skeleton == catalog.theta()
    assert v.coeff(EMPTY) == QQ(-1)
    assert v.degrees() == [0, 1]


def test_parse_lincomb_reports_line():
    with pytest.raises(ParseError) as exc:
        parse_lincomb("skeleton theta\n1 | empty\n2 1:0-2:0\n", source="x.lc")
    assert exc.value.line == 3


def test_parse_lincomb_inline_skeleton():
    text = "skeleton inline\ncircle c\n1 | c:0-c:1\n"
    v, name = parse_lincomb(text)
    assert name == "inline"
    assert v.skeleton == catalog.circle()
    assert v.degrees() == [1]
