"""Conversions from runtime values to report records."""
from __future__ import annotations

from sympy.polys.domains import QQ

from src.associator.linear import AffineSolution, LinearSystem, format_constraint
from src.associator.models import LinearSpaceRecord
from src.diagram.models import LinComb, format_scalar
from src.diagram.text_format import format_inline
from src.strand_algebra.series import Series


def lincomb_lines(v: LinComb) -> list[str]:
    return [f"{format_scalar(v.domain, c)} | {format_inline(d)}" for d, c in v.items()]


def series_lines(s: Series) -> list[str]:
    out = []
    for k in s.degrees():
        out += [f"deg {k}: {line}" for line in lincomb_lines(s.part(k))]
    return out


def _q(c) -> str:
    return str(QQ.to_sympy(c))


def space_record(system: LinearSystem, solution: AffineSolution) -> LinearSpaceRecord:
    return LinearSpaceRecord(
        unknowns=list(system.names),
        equations=len(system.rows),
        rank=solution.rank,
        consistent=solution.consistent,
        dimension=solution.dimension,
        particular=[_q(c) for c in solution.particular] if solution.particular is not None else [],
        kernel=[[_q(c) for c in vec] for vec in solution.kernel],
        constraints=[format_constraint(system.names, coeffs, b) for coeffs, b in solution.constraints],
    )
