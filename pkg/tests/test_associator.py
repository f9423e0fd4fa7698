from __future__ import annotations

import pytest
from sympy.polys.domains import QQ

from src.associator.certificate import nonexistence_certificate
from src.associator.equations import P21, hexagon_residuals, pentagon_residual, phi_star, standard_r
from src.associator.linear import LinearSystem, collect_system, parameter_ring, solve
from src.associator.properties import check_properties, idempotent_is_one, symbolic_idempotent
from src.associator.solver import (
    SolutionFamily,
    chart_change,
    expected_display_family,
    residual_system,
    solve_degree2,
    unknown_series,
)
from src.diagram.models import LinComb
from src.errors import AlgebraError, CellMismatchError, CertificateError
from src.skeleton.catalog import strands
from src.strand_algebra.series import Series, chord


def _status(report, name: str) -> str:
    return next(r.status for r in report.results if r.name == name)


def test_solve_reads_an_affine_plane():
    names = ("a", "b", "c")
    system = LinearSystem(names, ("e1", "e2"), ((QQ(0), QQ(1), QQ(1)), (QQ(0), QQ(2), QQ(2))), (QQ(1), QQ(2)))
    solution = solve(system)
    assert solution.consistent
    assert solution.dimension == 2
    assert solution.contains([5, 1, 0])
    assert not solution.contains([0, 0, 0])


def test_solve_detects_inconsistency():
    system = LinearSystem(("a",), ("e1", "e2"), ((QQ(1),), (QQ(1),)), (QQ(1), QQ(2)))
    solution = solve(system)
    assert not solution.consistent
    assert solution.dimension == -1


def test_collect_system_rejects_nonlinear_coefficients():
    ring = parameter_ring(("a",))
    (a,) = ring.gens
    v = LinComb.single(strands(2), chord(2, 1, 2), a * a, domain=ring)
    with pytest.raises(AlgebraError):
        collect_system({"r": v}, ("a",))


def test_r_is_symmetric_through_degree_two():
    r = standard_r(2)
    assert r.permute(P21) == r


@pytest.mark.slow
def test_r_is_symmetric_through_degree_four():
    r = standard_r(4)
    assert r.permute(P21) == r


def test_degree_one_hexagon_with_symmetric_r():
    r = Series.one(2, 1) + Series.t(2, 1, 2, 1, QQ(1, 3))
    h1, h2 = hexagon_residuals(Series.one(3, 1), r)
    assert h1.is_zero() and h2.is_zero()


def test_degree_one_hexagon_with_short_chord():
    r = Series.one(2, 1) + Series.t(2, 1, 1, 1)
    h1, h2 = hexagon_residuals(Series.one(3, 1), r)
    assert not (h1.is_zero() and h2.is_zero())


def test_hexagon_needs_matching_truncations():
    with pytest.raises(CellMismatchError):
        hexagon_residuals(phi_star(2), standard_r(3))


@pytest.mark.slow
def test_phi_star_solves_pentagon_and_hexagon():
    phi = phi_star(2)
    assert pentagon_residual(phi).is_zero()
    h1, h2 = hexagon_residuals(phi, standard_r(2))
    assert h1.is_zero()
    assert h2.is_zero()


@pytest.mark.slow
def test_trivial_phi_fails_the_hexagon():
    h1, h2 = hexagon_residuals(Series.one(3, 2), standard_r(2))
    assert not (h1.is_zero() and h2.is_zero())


def test_phi_star_is_non_degenerate_and_mirrored():
    phi = phi_star(2)
    for i in (1, 2, 3):
        assert phi.delete(i) == Series.one(2, 2)
    assert phi.permute((3, 2, 1)) == phi.inverse()

    report = check_properties(phi)
    assert _status(report, "non_degenerate") == "holds"
    assert _status(report, "mirror") == "holds"
    assert report.max_degree == 2


def test_trivial_phi_has_every_property():
    report = check_properties(Series.one(3, 2))
    assert report.status == "PASS"
    assert len(report.results) == 5


def test_properties_need_three_strands():
    with pytest.raises(AlgebraError):
        check_properties(Series.one(2, 2))


def test_properties_on_the_family():
    report = check_properties(expected_display_family())
    assert report.parameters == ["alpha", "beta"]
    assert _status(report, "non_degenerate") == "holds"
    assert {r.name for r in report.results} == {"non_degenerate", "mirror", "horizontal", "unitary", "rotational"}


def test_family_members():
    family = expected_display_family()
    assert family.member({}) == phi_star(2)
    assert family.generic().domain.ngens == 2


def test_idempotent_lemma():
    assert idempotent_is_one(Series.one(2, 2)).is_one

    not_idempotent = idempotent_is_one(Series.one(2, 2) + Series.t(2, 1, 2, 2))
    assert not not_idempotent.hypothesis_holds
    assert not_idempotent.failure_degree == 1

    report = symbolic_idempotent(2, 2)
    assert report.is_one
    assert [step.degree for step in report.steps] == [1, 2]


@pytest.mark.slow
def test_symbolic_idempotent_through_degree_four():
    report = symbolic_idempotent(1, 4)
    assert report.is_one
    assert all(step.forced_zero for step in report.steps)


def test_idempotent_needs_unit_constant():
    with pytest.raises(AlgebraError):
        idempotent_is_one(Series.t(2, 1, 2, 2))


@pytest.mark.slow
def test_solve_degree2():
    result = solve_degree2()
    report = result.report
    assert report.degree1_admits_zero
    assert report.degree2.consistent
    assert report.degree2.dimension == 2
    assert report.displayed_constraints == ["beta + gamma = -1/24"]
    assert report.matches_displayed_constraint
    assert report.directions_in_kernel
    assert report.phi_star_in_family
    assert report.family_residual_vanishes
    assert report.status == "PASS"
    assert result.family is not None


@pytest.mark.slow
def test_solved_family_is_the_display_plane():
    result = solve_degree2()
    family = result.family
    assert family.names == ("s1", "s2")
    assert len(family.directions) == 2
    assert result.report.family_parameters == ["s1", "s2"]
    change = chart_change(family, expected_display_family())
    assert change is not None
    offset, _ = change
    assert family.member(dict(zip(family.names, offset))) == phi_star(2)


@pytest.mark.slow
def test_non_degeneracy_pins_degree_one():
    assert solve_degree2().report.degree1.dimension == 0

    phi, names, _ = unknown_series(3, 2, 2)
    system = residual_system(phi, standard_r(2), names, 2)
    assert any(label.startswith("non_degenerate2: ") for label in system.labels)


def test_chart_change_rejects_another_plane():
    shown = expected_display_family()
    shifted = SolutionFamily(
        names=shown.names,
        base=shown.base + Series.t(3, 1, 2, 2) * Series.t(3, 1, 2, 2),
        directions=shown.directions,
    )
    assert chart_change(shown, shifted) is None
    offset, rows = chart_change(shown, shown)
    assert list(offset) == [0, 0]
    assert [list(r) for r in rows] == [[1, 0], [0, 1]]


def test_chart_change_needs_matching_dimensions():
    shown = expected_display_family()
    line = SolutionFamily(names=("alpha",), base=shown.base, directions=shown.directions[:1])
    assert chart_change(shown, line) is None


@pytest.fixture(scope="module")
def certificate():
    return nonexistence_certificate(strict=True)


@pytest.mark.slow
def test_nonexistence_certificate(certificate):
    report = certificate
    assert report.status == "PASS"
    assert report.parameters == ["s1", "s2"]
    assert report.constant_nonzero
    assert not report.meets_zero
    assert not report.system.consistent
    assert report.dumbbell_dim == 9
    assert report.dumbbell_meets_zero is False
    assert report.steps[0].startswith("placed degree-2 family")


@pytest.mark.slow
def test_certificate_records_the_basis_change(certificate):
    assert certificate.matches_display == {"alpha": True, "beta": False}
    assert set(certificate.basis_change) == {"t12^2"}
    assert certificate.basis_change["t12^2"].startswith("strand 2 reversed: ")
    assert "1:0-2:1 1:1-2:0" in certificate.basis_change["t12^2"]
    assert set(certificate.display_images) == {"alpha", "beta"}


@pytest.mark.slow
def test_certificate_status_needs_the_display_chart():
    shown = expected_display_family()
    # same plane, other chart
    swapped = SolutionFamily(names=("alpha", "beta"), base=shown.base, directions=shown.directions[::-1])
    report = nonexistence_certificate(family=shown, chart=swapped)
    assert not report.meets_zero
    assert not report.matches_display["alpha"]
    assert report.status == "FAIL"


@pytest.mark.slow
def test_certificate_on_the_display_chart_itself():
    shown = expected_display_family()
    report = nonexistence_certificate(family=shown)
    assert report.parameters == ["alpha", "beta"]
    assert report.status == "PASS"


@pytest.mark.slow
def test_strict_certificate_raises_on_a_foreign_chart():
    shown = expected_display_family()
    line = SolutionFamily(names=("alpha",), base=shown.base, directions=shown.directions[:1])
    with pytest.raises(CertificateError):
        nonexistence_certificate(family=shown, chart=line, strict=True)
