"""Degree-by-degree solution of the pentagon and hexagon equations.

The unknown associator is written with one formal parameter per basis diagram
of A(up_3) in the degree being solved; every coefficient of every residual is a
linear equation in those parameters.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence, TypedDict

from langgraph.graph import END, StateGraph
from sympy.polys.domains import QQ

from src.associator.equations import hexagon_residuals, pentagon_residual, phi_star, standard_r
from src.associator.linear import (
    AffineSolution,
    LinearSystem,
    collect_system,
    generators,
    in_span,
    parameter_ring,
    rank,
    solve,
)
from src.associator.models import Degree2Report
from src.associator.records import lincomb_lines, space_record
from src.diagram.models import LinComb
from src.diagram.text_format import format_inline
from src.relations.cache import default_store
from src.skeleton.catalog import strands
from src.strand_algebra.series import Series

logger = logging.getLogger(__name__)


def lift(s: Series, ring) -> Series:
    """The same series with coefficients in ``ring``."""
    return Series(s.n, s.max_degree, {k: s.part(k).with_domain(ring) for k in s.degrees()}, domain=ring, reduce=False)


@dataclass(frozen=True)
class SolutionFamily:
    """``base + sum(p_i * directions[i])`` for free parameters ``names``."""

    names: tuple[str, ...]
    base: Series
    directions: tuple[Series, ...]
    constraints: tuple[str, ...] = ()

    def generic(self) -> Series:
        if not self.names:
            return self.base
        ring = parameter_ring(self.names)
        out = lift(self.base, ring)
        for g, direction in zip(generators(ring), self.directions):
            out = out + lift(direction, ring).scale(g)
        return out

    def member(self, values: dict[str, object]) -> Series:
        out = self.base
        for name, direction in zip(self.names, self.directions):
            c = values.get(name, 0)
            if c:
                out = out + direction.scale(c)
        return out


def basis_of(n: int, degree: int) -> tuple:
    return default_store().get(strands(n), degree).basis


def unknown_series(n: int, degree: int, max_degree: int, prefix: str = "c") -> tuple[Series, tuple[str, ...], tuple]:
    """``1 + sum c_k b_k`` over the degree-``degree`` basis of A(up_n)."""
    basis = basis_of(n, degree)
    names = tuple(f"{prefix}{k}" for k in range(1, len(basis) + 1))
    ring = parameter_ring(names) if names else QQ
    part = LinComb.zero(strands(n), ring)
    for g, b in zip(generators(ring) if names else (), basis):
        part.add_term(b, g)
    one = Series.one(n, max_degree, domain=ring)
    return one + Series(n, max_degree, {degree: part}, domain=ring), names, basis


def residual_system(phi: Series, r: Series, names: Sequence[str], degree: int) -> LinearSystem:
    """Equations saying the degree-``degree`` parts of the pentagon, both hexagons and d_i(Phi) - 1 vanish."""
    h1, h2 = hexagon_residuals(phi, r)
    residuals = {
        "pentagon": pentagon_residual(phi).part(degree),
        "hexagon1": h1.part(degree),
        "hexagon2": h2.part(degree),
    }
    if degree > 0:
        for i in range(1, phi.n + 1):
            residuals[f"non_degenerate{i}"] = phi.delete(i).part(degree)
    return collect_system(residuals, names)


def coordinates(v: LinComb, basis: Sequence) -> list:
    reduced = default_store().reduce(v)
    return [reduced.coeff(b) for b in basis]


def from_coordinates(vector: Sequence, basis: Sequence, max_degree: int = 2, degree: int = 2) -> Series:
    """The homogeneous series ``sum vector[k] * basis[k]`` on 3 strands."""
    part = LinComb.zero(strands(3))
    for c, b in zip(vector, basis):
        if c:
            part.add_term(b, c)
    return Series(3, max_degree, {degree: part}, reduce=False)


def solved_family(solution: AffineSolution, basis: Sequence, max_degree: int = 2) -> SolutionFamily:
    """``1 + particular + span(kernel)`` read back from the degree-2 solve."""
    names = tuple(f"s{k}" for k in range(1, len(solution.kernel) + 1))
    base = Series.one(3, max_degree) + from_coordinates(solution.particular, basis, max_degree)
    directions = tuple(from_coordinates(v, basis, max_degree) for v in solution.kernel)
    return SolutionFamily(names=names, base=base, directions=directions)


def expected_display_basis(max_degree: int = 2) -> dict[str, LinComb]:
    """The three degree-2 combinations the solution family is displayed in."""

    def t(i: int, j: int) -> Series:
        return Series.t(3, i, j, max_degree)

    return {
        "alpha": (t(1, 1) * t(2, 3) - t(3, 3) * t(1, 2)).part(2),
        "beta": (t(1, 3) * t(1, 2) - t(1, 3) * t(2, 3)).part(2),
        "gamma": (t(1, 2) * t(2, 3) - t(2, 3) * t(1, 2)).part(2),
    }


def expected_display_family(max_degree: int = 2) -> SolutionFamily:
    """Phi* + alpha * A + beta * (B - C): the plane beta + gamma = -1/24 with gamma eliminated.

    A comparison target for the solved family; the solver checks that both describe
    the same affine plane.
    """
    shown = expected_display_basis(max_degree)

    def as_series(v: LinComb) -> Series:
        return Series(3, max_degree, {2: v})

    return SolutionFamily(
        names=("alpha", "beta"),
        base=phi_star(max_degree),
        directions=(as_series(shown["alpha"]), as_series(shown["beta"] - shown["gamma"])),
        constraints=("gamma = -1/24 - beta",),
    )


def family_residual_vanishes(family: SolutionFamily) -> bool:
    generic = family.generic()
    h1, h2 = hexagon_residuals(generic, standard_r(generic.max_degree, domain=generic.domain))
    one = Series.one(2, generic.max_degree, domain=generic.domain)
    return (
        pentagon_residual(generic).is_zero()
        and h1.is_zero()
        and h2.is_zero()
        and all(generic.delete(i) == one for i in (1, 2, 3))
    )


def family_coordinates(family: SolutionFamily, v: LinComb) -> tuple | None:
    """The unique ``x`` with ``sum x_k * directions[k] == v`` in A(up_3) degree 2, or None."""
    basis = basis_of(3, 2)
    columns = [coordinates(d.part(2), basis) for d in family.directions]
    target = coordinates(v, basis)
    rows = tuple(tuple(col[i] for col in columns) for i in range(len(basis)))
    system = LinearSystem(family.names, tuple(format_inline(b) for b in basis), rows, tuple(target))
    solution = solve(system)
    if not solution.consistent or solution.dimension != 0:
        return None
    return solution.particular


def chart_change(family: SolutionFamily, chart: SolutionFamily) -> tuple[tuple, list[tuple]] | None:
    """Write ``chart`` in the parameters of ``family``.

    Returns the offset of ``chart.base`` and one coefficient row per direction of
    ``chart``, or None when the two do not describe the same affine plane.
    """
    if len(chart.directions) != len(family.directions):
        return None
    offset = family_coordinates(family, (chart.base - family.base).part(2))
    rows = [family_coordinates(family, d.part(2)) for d in chart.directions]
    if offset is None or any(r is None for r in rows):
        return None
    if rank(rows) != len(rows):
        return None
    return offset, rows


class SolverState(TypedDict, total=False):
    report: Degree2Report
    solution2: AffineSolution
    basis2: tuple
    family: SolutionFamily


def build_solver_graph() -> StateGraph:
    g = StateGraph(SolverState)

    def degree1_node(state: SolverState) -> SolverState:
        report = state["report"]
        phi, names, _ = unknown_series(3, 1, 1)
        system = residual_system(phi, standard_r(1), names, 1)
        solution = solve(system)
        report.degree1 = space_record(system, solution)
        report.degree1_admits_zero = solution.contains([0] * len(names))
        logger.info("degree 1: %d unknowns, solution dimension %d", len(names), solution.dimension)
        return {"report": report}

    def degree2_node(state: SolverState) -> SolverState:
        report = state["report"]
        phi, names, basis = unknown_series(3, 2, 2)
        system = residual_system(phi, standard_r(2), names, 2)
        solution = solve(system)
        report.basis_labels = [format_inline(b) for b in basis]
        report.degree2 = space_record(system, solution)
        logger.info("degree 2: %d unknowns, %d equations, affine dimension %d", len(names), len(system.rows), solution.dimension)
        family = solved_family(solution, basis) if solution.consistent else None
        if family is not None:
            report.family_parameters = list(family.names)
            report.family_base = lincomb_lines(family.base.as_lincomb())
            report.family_directions = {n: lincomb_lines(d.as_lincomb()) for n, d in zip(family.names, family.directions)}
        return {"report": report, "solution2": solution, "basis2": basis, "family": family}

    def displayed_node(state: SolverState) -> SolverState:
        report = state["report"]
        shown = expected_display_basis()
        names = tuple(shown)
        ring = parameter_ring(names)
        part = LinComb.zero(strands(3), ring)
        for g_, key in zip(generators(ring), names):
            part = part + shown[key].with_domain(ring).scale(g_)
        phi = Series.one(3, 2, domain=ring) + Series(3, 2, {2: part}, domain=ring)
        system = residual_system(phi, standard_r(2), names, 2)
        solution = solve(system)
        record = space_record(system, solution)
        report.displayed_basis = {k: " + ".join(lincomb_lines(v)) for k, v in shown.items()}
        report.displayed_constraints = record.constraints
        expected = ((QQ.zero, QQ.one, QQ.one), QQ(-1, 24))
        report.matches_displayed_constraint = solution.consistent and solution.constraints == (expected,)
        return {"report": report}

    def verify_node(state: SolverState) -> SolverState:
        report = state["report"]
        solution, basis, family = state["solution2"], state["basis2"], state["family"]
        shown = expected_display_family()
        kernel = list(solution.kernel)
        coords = [coordinates(d.part(2), basis) for d in shown.directions]
        report.directions_in_kernel = (
            all(in_span(c, kernel) for c in coords)
            and rank(coords) == len(coords) == len(kernel)
        )
        report.phi_star_in_family = solution.contains(coordinates(shown.base.part(2), basis))
        report.family_residual_vanishes = family is not None and family_residual_vanishes(family)
        ok = (
            report.degree1_admits_zero
            and report.degree2.dimension == 2
            and report.matches_displayed_constraint
            and report.directions_in_kernel
            and report.phi_star_in_family
            and report.family_residual_vanishes
        )
        report.status = "PASS" if ok else "FAIL"
        return {"report": report}

    g.add_node("degree1", degree1_node)
    g.add_node("degree2", degree2_node)
    g.add_node("displayed", displayed_node)
    g.add_node("verify", verify_node)

    g.set_entry_point("degree1")

    def _route_after_degree1(state: SolverState) -> str:
        # without Phi_1 = 0 the degree-2 system below is not the right one
        if state["report"].degree1_admits_zero:
            return "degree2"
        return END

    def _route_after_degree2(state: SolverState) -> str:
        if state.get("family") is None:
            return END
        return "displayed"

    g.add_conditional_edges("degree1", _route_after_degree1)
    g.add_conditional_edges("degree2", _route_after_degree2)
    g.add_edge("displayed", "verify")
    g.add_edge("verify", END)
    return g


@dataclass(frozen=True)
class SolverResult:
    report: Degree2Report
    family: SolutionFamily | None


def solve_degree2() -> SolverResult:
    graph = build_solver_graph().compile()
    final = graph.invoke({"report": Degree2Report()})
    return SolverResult(report=final["report"], family=final.get("family"))
