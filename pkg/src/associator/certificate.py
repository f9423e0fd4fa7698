"""The degree-2 obstruction on the dumbbell.

The solved family is placed on the tetrahedron, edge ``1`` is switched and
``m_top`` unzipped, which lands on a dumbbell. A homomorphic expansion would
send the dumbbell to 1, so its degree-2 part would have to vanish for some
member of the family; the certificate shows that it never does, both after
sweeping onto two strands and in the dumbbell quotient itself.
"""
from __future__ import annotations

import logging
from typing import TypedDict

from langgraph.graph import END, StateGraph
from sympy.polys.domains import QQ

from src.associator.linear import coefficient_part, collect_system, solve
from src.associator.models import CertificateReport
from src.associator.records import lincomb_lines, space_record
from src.associator.solver import SolutionFamily, chart_change, expected_display_family, solve_degree2
from src.diagram.models import LinComb
from src.errors import CertificateError
from src.graph_ops import operations as ops
from src.graph_ops.sweep import include, sweep
from src.relations.cache import default_store
from src.skeleton.catalog import ASSOCIATOR_TREE, associator_tetrahedron
from src.strand_algebra.maps import switch_strand
from src.strand_algebra.series import Series

logger = logging.getLogger(__name__)

SWITCHED_EDGE = "1"
UNZIPPED_EDGE = "m_top"
BRIDGE = "m_bot"


def expected_display_value() -> dict[str, LinComb]:
    """The combinations the obstruction is compared against, on two strands."""

    def t(i: int, j: int) -> Series:
        return Series.t(2, i, j, 2)

    return {
        "t12t11": (t(1, 2) * t(1, 1)).part(2),
        "alpha": (t(1, 2) * t(1, 1) + t(1, 1) * t(2, 2)).part(2),
        "t12^2": (t(1, 2) * t(1, 2)).part(2),
    }


def _combine(images: dict[str, LinComb], names: tuple[str, ...], coeffs, start: LinComb) -> LinComb:
    out = start
    for name, c in zip(names, coeffs):
        if c:
            out = out + images[name].scale(QQ.convert(c))
    return default_store().reduce(out)


class CertificateState(TypedDict, total=False):
    family: SolutionFamily
    chart: SolutionFamily
    value: LinComb
    swept: LinComb
    constant: LinComb
    images: dict[str, LinComb]
    report: CertificateReport


def build_certificate_graph() -> StateGraph:
    g = StateGraph(CertificateState)

    def place_node(state: CertificateState) -> CertificateState:
        report = state["report"]
        family = state["family"]
        phi = family.generic().part(2)
        value = include(phi, associator_tetrahedron(), ASSOCIATOR_TREE)
        report.parameters = list(family.names)
        report.steps.append(f"placed degree-2 family on associator_tetrahedron ({len(value)} diagrams)")
        return {"value": value}

    def switch_node(state: CertificateState) -> CertificateState:
        value = ops.switch(SWITCHED_EDGE, state["value"])
        state["report"].steps.append(f"switched edge {SWITCHED_EDGE}")
        return {"value": value}

    def unzip_node(state: CertificateState) -> CertificateState:
        value = ops.unzip(UNZIPPED_EDGE, state["value"])
        state["report"].steps.append(f"unzipped edge {UNZIPPED_EDGE} ({len(value)} diagrams)")
        return {"value": value}

    def sweep_node(state: CertificateState) -> CertificateState:
        swept = sweep(state["value"], [BRIDGE], max_degree=2).part(2)
        state["report"].steps.append(f"swept the bridge {BRIDGE}; reduced in A(up_2)")
        return {"swept": swept}

    def certify_node(state: CertificateState) -> CertificateState:
        report = state["report"]
        names = state["family"].names
        v = state["swept"]
        constant = coefficient_part(v, None)
        images = {name: coefficient_part(v, i) for i, name in enumerate(names)}
        report.constant = lincomb_lines(constant)
        report.images = {name: lincomb_lines(img) for name, img in images.items()}
        report.constant_nonzero = not constant.is_zero()

        system = collect_system({"dumbbell": v}, names)
        solution = solve(system)
        report.system = space_record(system, solution)
        report.meets_zero = solution.consistent
        logger.info("swept value: %d equations, rank %d", len(system.rows), solution.rank)
        return {"constant": constant, "images": images}

    def display_node(state: CertificateState) -> CertificateState:
        report = state["report"]
        family, chart = state["family"], state["chart"]
        change = chart_change(family, chart)
        if change is None:
            report.steps.append("the display chart is not a chart of the solved family")
            report.matches_display = {name: False for name in chart.names}
            return {}
        offset, rows = change
        images = state["images"]
        constant = _combine(images, family.names, offset, state["constant"])
        shown_images = {
            name: _combine(images, family.names, row, LinComb.zero(constant.skeleton)) for name, row in zip(chart.names, rows)
        }
        report.display_constant = lincomb_lines(constant)
        report.display_images = {name: lincomb_lines(img) for name, img in shown_images.items()}

        store = default_store()
        shown = expected_display_value()
        x = store.reduce(constant.scale(-24) - shown["t12t11"])
        report.x = lincomb_lines(x)
        beta = shown_images.get("beta", LinComb.zero(constant.skeleton))
        report.matches_display = {
            "alpha": shown_images.get("alpha") == store.reduce(shown["alpha"]),
            "beta": beta == store.reduce(shown["t12^2"] - x),
        }
        if not report.matches_display["beta"]:
            # the beta image meets t12^2 once strand 2 of the displayed square is read backwards
            y = store.reduce(beta + x)
            reversed_square = store.reduce(switch_strand(2, shown["t12^2"]))
            if y == reversed_square:
                report.basis_change = {"t12^2": "strand 2 reversed: " + " + ".join(lincomb_lines(y))}
        return {}

    def dumbbell_node(state: CertificateState) -> CertificateState:
        report = state["report"]
        value = state["value"]
        store = default_store()
        reduced = store.reduce(value)
        report.dumbbell_dim = store.get(value.skeleton, 2).dim
        solution = solve(collect_system({"dumbbell": reduced}, state["family"].names))
        report.dumbbell_meets_zero = solution.consistent
        report.steps.append(f"reduced in A(dumbbell) degree 2 (dimension {report.dumbbell_dim})")
        return {}

    def verdict_node(state: CertificateState) -> CertificateState:
        report = state["report"]
        shown = report.matches_display
        display_ok = shown.get("alpha", False) and (shown.get("beta", False) or "t12^2" in report.basis_change)
        ok = report.constant_nonzero and not report.meets_zero and not report.dumbbell_meets_zero and display_ok
        report.status = "PASS" if ok else "FAIL"
        logger.info("certificate %s", report.status)
        return {"report": report}

    g.add_node("place", place_node)
    g.add_node("switch", switch_node)
    g.add_node("unzip", unzip_node)
    g.add_node("sweep", sweep_node)
    g.add_node("certify", certify_node)
    g.add_node("display", display_node)
    g.add_node("dumbbell", dumbbell_node)
    g.add_node("verdict", verdict_node)

    g.set_entry_point("place")
    g.add_edge("place", "switch")
    g.add_edge("switch", "unzip")
    g.add_edge("unzip", "sweep")
    g.add_edge("sweep", "certify")
    g.add_edge("certify", "display")
    g.add_edge("display", "dumbbell")
    g.add_edge("dumbbell", "verdict")
    g.add_edge("verdict", END)
    return g


def nonexistence_certificate(
    *, family: SolutionFamily | None = None, chart: SolutionFamily | None = None, strict: bool = False
) -> CertificateReport:
    """Run the obstruction on ``family`` (by default the solved degree-2 family).

    ``chart`` is the parametrization the value is compared against. With
    ``strict`` a failing certificate raises CertificateError.
    """
    if family is None:
        family = solve_degree2().family
        if family is None:
            raise CertificateError("the degree-2 equations have no solution to certify")
    graph = build_certificate_graph().compile()
    final = graph.invoke(
        {"family": family, "chart": chart or expected_display_family(), "report": CertificateReport()}
    )
    report = final["report"]
    if strict and report.status != "PASS":
        raise CertificateError("the dumbbell value vanishes for some member of the family")
    return report
