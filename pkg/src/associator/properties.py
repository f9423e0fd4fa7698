"""Symmetry properties of an associator and the unital-idempotent lemma."""
from __future__ import annotations

import logging
from typing import Callable

from sympy.polys.domains import QQ

from src.associator.linear import collect_system, generators, parameter_ring, solve
from src.associator.models import IdempotentReport, IdempotentStep, PropertiesReport, PropertyResult
from src.associator.records import lincomb_lines, series_lines, space_record
from src.associator.solver import SolutionFamily, basis_of, unknown_series
from src.diagram.models import EMPTY, LinComb
from src.errors import AlgebraError
from src.skeleton.catalog import strands
from src.strand_algebra.free_group import BETA_2, BETA_3, BETA_4, BETA_5
from src.strand_algebra.series import Series

logger = logging.getLogger(__name__)


def _non_degenerate(phi: Series) -> dict[str, Series]:
    one = Series.one(2, phi.max_degree, domain=phi.domain)
    return {f"d{i}": phi.delete(i) - one for i in (1, 2, 3)}


def _mirror(phi: Series) -> dict[str, Series]:
    return {"beta2": phi.pullback(BETA_2) - phi.inverse()}


def _horizontal(phi: Series) -> dict[str, Series]:
    return {"beta3": phi.pullback(BETA_3) - Series.one(2, phi.max_degree, domain=phi.domain)}


def _unitary(phi: Series) -> dict[str, Series]:
    return {"beta4": phi.pullback(BETA_4) - phi.inverse()}


def _rotational(phi: Series) -> dict[str, Series]:
    return {"beta5": phi.pullback(BETA_5) - phi}


PROPERTIES: list[tuple[str, str, Callable[[Series], dict[str, Series]]]] = [
    ("non_degenerate", "d_i(Phi) = 1 for i = 1, 2, 3", _non_degenerate),
    ("mirror", "beta2*(Phi) = Phi^-1, beta2 = (x3, x2, x1)", _mirror),
    ("horizontal", "beta3*(Phi) = 1, beta3 = (x2 x1^-1, x3 x1^-1)", _horizontal),
    ("unitary", "beta4*(Phi) = Phi^-1, beta4 = (x1^-1, x2^-1, x3^-1)", _unitary),
    ("rotational", "beta5*(Phi) = Phi, beta5 = (x3^-1, x3^-1 x1, x2^-1 x1)", _rotational),
]


def _evaluate(phi: Series, names: tuple[str, ...]) -> list[PropertyResult]:
    results = []
    for name, statement, residuals_of in PROPERTIES:
        residuals = residuals_of(phi)
        if all(r.is_zero() for r in residuals.values()):
            results.append(PropertyResult(name=name, statement=statement, status="holds"))
            continue
        lines = [f"{key} {line}" for key, r in sorted(residuals.items()) for line in series_lines(r)]
        if not names:
            results.append(PropertyResult(name=name, statement=statement, status="fails", residual=lines))
            continue
        system = collect_system({k: r.as_lincomb() for k, r in residuals.items()}, names)
        solution = solve(system)
        record = space_record(system, solution)
        status = "holds_on_subfamily" if solution.consistent else "fails"
        results.append(
            PropertyResult(name=name, statement=statement, status=status, constraints=record.constraints, residual=lines)
        )
        logger.info("property %s: %s (%d constraints)", name, status, len(record.constraints))
    return results


def check_properties(phi: Series | SolutionFamily) -> PropertiesReport:
    """Evaluate the five properties through ``phi``'s truncation degree.

    For a family the residuals are polynomial in its parameters and each property
    reports the affine conditions under which it holds.
    """
    if isinstance(phi, SolutionFamily):
        names, series = phi.names, phi.generic()
    else:
        names, series = (), phi
    if series.n != 3:
        raise AlgebraError(f"an associator lives on 3 strands, got {series.n}")
    results = _evaluate(series, names)
    return PropertiesReport(
        max_degree=series.max_degree,
        parameters=list(names),
        results=results,
        status="PASS" if all(r.status == "holds" for r in results) else "FAIL",
    )


# --- the idempotent lemma ----------------------------------------------------------------


def _force_degree(lower: Series, d: int) -> tuple[Series, IdempotentStep]:
    """Solve the degree-``d`` part of s*s = s for s_d, given the parts below ``d``."""
    n = lower.n
    trial, names, basis = unknown_series(n, d, d, prefix="s")
    ring = trial.domain
    s = Series(n, d, {k: lower.part(k).with_domain(ring) for k in lower.degrees()}, domain=ring, reduce=False)
    s = s + Series(n, d, {d: trial.part(d)}, domain=ring, reduce=False)
    equation = (s * s - s).part(d)
    system = collect_system({"idempotent": equation}, names)
    solution = solve(system)
    if not solution.consistent:
        raise AlgebraError(f"s*s = s has no solution in degree {d}")
    if solution.kernel:
        raise AlgebraError(f"s*s = s does not determine the degree-{d} part")
    forced = LinComb.zero(strands(n), QQ)
    for b, c in zip(basis, solution.particular):
        forced.add_term(b, c)
    step = IdempotentStep(degree=d, unknowns=len(names), forced=lincomb_lines(forced), forced_zero=forced.is_zero())
    parts = {k: lower.part(k) for k in lower.degrees()}
    parts[d] = forced
    return Series(n, lower.max_degree, parts), step


def _unit_check(s: Series) -> None:
    if s.part(0) != LinComb.single(strands(s.n), EMPTY, 1, s.domain):
        raise AlgebraError("the degree-0 part must be 1")


def idempotent_is_one(s: Series) -> IdempotentReport:
    """If s*s = s, rebuild s degree by degree from that equation and compare with 1."""
    _unit_check(s)
    report = IdempotentReport(strands=s.n, max_degree=s.max_degree)
    square = s * s
    for k in range(1, s.max_degree + 1):
        if square.part(k) != s.part(k):
            report.hypothesis_holds = False
            report.failure_degree = k
            return report
    forced = Series.one(s.n, s.max_degree)
    for d in range(1, s.max_degree + 1):
        forced, step = _force_degree(forced, d)
        report.steps.append(step)
    report.is_one = forced == Series.one(s.n, s.max_degree) and (s - forced).is_zero()
    return report


def symbolic_idempotent(n: int, max_degree: int) -> IdempotentReport:
    """Run the induction for a generic unital s on ``n`` strands."""
    report = IdempotentReport(strands=n, max_degree=max_degree)
    forced = Series.one(n, max_degree)
    for d in range(1, max_degree + 1):
        if not basis_of(n, d):
            report.steps.append(IdempotentStep(degree=d, unknowns=0))
            continue
        forced, step = _force_degree(forced, d)
        report.steps.append(step)
    report.is_one = all(st.forced_zero for st in report.steps)
    return report
