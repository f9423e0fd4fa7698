"""Affine solution sets of linear equations read off polynomial coefficients.

Unknowns are generators of a ``QQ.poly_ring``; every equation is one diagram
coefficient of a residual that must vanish.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import sympy
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from src.diagram.models import LinComb
from src.diagram.text_format import format_inline
from src.errors import AlgebraError


def parameter_ring(names: Sequence[str]):
    """``QQ[names]`` as a sympy domain."""
    return QQ.poly_ring(*sympy.symbols(list(names)))


def generators(ring) -> list:
    return list(ring.gens)


def _linear_parts(p, n: int) -> tuple[list, object]:
    """Coefficients of each generator and the constant term of a degree <= 1 polynomial."""
    row = [QQ.zero] * n
    const = QQ.zero
    for monom, c in p.terms():
        total = sum(monom)
        if total == 0:
            const = QQ.convert(c)
        elif total == 1:
            row[monom.index(1)] = QQ.convert(c)
        else:
            raise AlgebraError(f"equation is not linear in the unknowns: {p}")
    return row, const


def coefficient_part(v: LinComb, index: int | None) -> LinComb:
    """The rational combination multiplying generator ``index`` (``None``: the constant part)."""
    n = v.domain.ngens
    out = LinComb.zero(v.skeleton, QQ)
    for d, c in v.items():
        row, const = _linear_parts(c, n)
        out.add_term(d, const if index is None else row[index])
    return out


@dataclass(frozen=True)
class LinearSystem:
    names: tuple[str, ...]
    labels: tuple[str, ...]
    rows: tuple[tuple, ...]
    rhs: tuple

    @property
    def size(self) -> tuple[int, int]:
        return len(self.rows), len(self.names)


def collect_system(residuals: Mapping[str, LinComb], names: Sequence[str]) -> LinearSystem:
    """One equation per (residual, diagram): the coefficient must vanish."""
    n = len(names)
    labels, rows, rhs = [], [], []
    for key in sorted(residuals):
        v = residuals[key]
        for d, c in v.items():
            if n == 0:
                row, const = [], QQ.convert(c)
            else:
                row, const = _linear_parts(c, n)
            labels.append(f"{key}: {format_inline(d)}")
            rows.append(tuple(row))
            rhs.append(-const)
    return LinearSystem(tuple(names), tuple(labels), tuple(rows), tuple(rhs))


@dataclass(frozen=True)
class AffineSolution:
    """``particular + span(kernel)``, or an empty set when ``consistent`` is false.

    ``constraints`` are the nonzero rows of the reduced augmented matrix, each
    ``(coefficients, rhs)``.
    """

    names: tuple[str, ...]
    consistent: bool
    rank: int
    particular: tuple | None
    kernel: tuple[tuple, ...]
    constraints: tuple[tuple[tuple, object], ...]

    @property
    def dimension(self) -> int:
        return len(self.kernel) if self.consistent else -1

    def contains(self, point: Sequence) -> bool:
        if not self.consistent:
            return False
        return all(
            sum((a * QQ.convert(x) for a, x in zip(coeffs, point)), QQ.zero) == b
            for coeffs, b in self.constraints
        )


def solve(system: LinearSystem) -> AffineSolution:
    n = len(system.names)
    if not system.rows:
        kernel = tuple(tuple(QQ.one if i == j else QQ.zero for i in range(n)) for j in range(n))
        return AffineSolution(system.names, True, 0, tuple([QQ.zero] * n), kernel, ())

    entries = {}
    for i, (row, b) in enumerate(zip(system.rows, system.rhs)):
        r = {j: c for j, c in enumerate(row) if c}
        if b:
            r[n] = b
        if r:
            entries[i] = r
    if not entries:
        kernel = tuple(tuple(QQ.one if i == j else QQ.zero for i in range(n)) for j in range(n))
        return AffineSolution(system.names, True, 0, tuple([QQ.zero] * n), kernel, ())

    m = DomainMatrix(entries, (len(system.rows), n + 1), QQ)
    reduced, pivots = m.rref()
    rows = reduced.to_sparse().rep
    constraints = []
    for k in range(len(pivots)):
        r = rows.get(k, {})
        constraints.append((tuple(r.get(j, QQ.zero) for j in range(n)), r.get(n, QQ.zero)))
    if n in pivots:
        return AffineSolution(system.names, False, len(pivots), None, (), tuple(constraints))

    particular = [QQ.zero] * n
    for k, p in enumerate(pivots):
        particular[p] = rows.get(k, {}).get(n, QQ.zero)
    pivot_set = set(pivots)
    kernel = []
    for f in range(n):
        if f in pivot_set:
            continue
        vec = [QQ.zero] * n
        vec[f] = QQ.one
        for k, p in enumerate(pivots):
            c = rows.get(k, {}).get(f, QQ.zero)
            if c:
                vec[p] = -c
        kernel.append(tuple(vec))
    return AffineSolution(system.names, True, len(pivots), tuple(particular), tuple(kernel), tuple(constraints))


def rank(vectors: Sequence[Sequence]) -> int:
    vectors = [v for v in vectors if any(v)]
    if not vectors:
        return 0
    width = len(vectors[0])
    entries = {i: {j: QQ.convert(c) for j, c in enumerate(v) if c} for i, v in enumerate(vectors)}
    return DomainMatrix(entries, (len(vectors), width), QQ).rank()


def in_span(vector: Sequence, span: Sequence[Sequence]) -> bool:
    return rank(list(span) + [vector]) == rank(span)


def format_constraint(names: Sequence[str], coeffs: Sequence, rhs) -> str:
    expr = sum((QQ.to_sympy(c) * sympy.Symbol(x) for x, c in zip(names, coeffs) if c), sympy.Integer(0))
    return f"{expr} = {QQ.to_sympy(rhs)}"
