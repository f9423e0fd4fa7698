from __future__ import annotations

import logging
import random
import time
from dataclasses import dataclass, field
from functools import cached_property

from sympy import nextprime
from sympy.polys.domains import GF, QQ
from sympy.polys.matrices import DomainMatrix

from src.diagram.enumerate import enumerate_diagrams
from src.diagram.models import ChordDiagram, LinComb
from src.errors import CellMismatchError, DiagramError
from src.relations.generators import RELATION_VERSION, all_relations
from src.skeleton.models import Skeleton

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class QuotientBasis:
    """Basis of one (skeleton, degree) cell and the normal form of every other diagram.

    ``table`` sends each eliminated diagram to its normal form, a map from basis
    diagrams to rational coefficients.
    """

    skeleton: Skeleton
    degree: int
    basis: tuple[ChordDiagram, ...]
    table: dict[ChordDiagram, dict[ChordDiagram, object]] = field(default_factory=dict)
    version: str = RELATION_VERSION

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def basis_set(self) -> frozenset[ChordDiagram]:
        return frozenset(self.basis)

    def reduce(self, v: LinComb) -> LinComb:
        if v.skeleton != self.skeleton:
            raise CellMismatchError("vector lives on a different skeleton than this quotient")
        if any(d != self.degree for d in v.degrees()):
            raise CellMismatchError(f"vector has degrees {v.degrees()}, quotient is degree {self.degree}")
        basis = self.basis_set
        out = LinComb.zero(v.skeleton, v.domain)
        for d, c in v.items():
            if d in basis:
                out.add_term(d, c)
                continue
            nf = self.table.get(d)
            if nf is None:
                raise DiagramError(f"diagram {d} is not a canonical diagram of this cell")
            for b, k in nf.items():
                out.add_term(b, c * v.domain.convert_from(k, QQ))
        return out

    def is_zero(self, v: LinComb) -> bool:
        return self.reduce(v).is_zero()


def _relation_rows(s: Skeleton, n: int) -> tuple[list[ChordDiagram], dict[int, dict[int, object]]]:
    columns = enumerate_diagrams(s, n)
    index = {d: j for j, d in enumerate(columns)}
    rels = all_relations(s, n)
    return columns, {i: {index[d]: c for d, c in r.items()} for i, r in enumerate(rels)}


def _relation_matrix(s: Skeleton, n: int) -> tuple[list[ChordDiagram], DomainMatrix | None, int]:
    columns, rows = _relation_rows(s, n)
    if not rows:
        return columns, None, 0
    return columns, DomainMatrix(rows, (len(rows), len(columns)), QQ), len(rows)


def quotient_basis(s: Skeleton, n: int) -> QuotientBasis:
    """Reduced row echelon form of the relation matrix; columns in canonical diagram order."""
    started = time.perf_counter()
    columns, matrix, n_rels = _relation_matrix(s, n)
    if matrix is None:
        logger.info("cell degree %d: %d diagrams, no relations", n, len(columns))
        return QuotientBasis(s, n, tuple(columns))

    reduced, pivots = matrix.rref()
    rows = reduced.to_sparse().rep
    table: dict[ChordDiagram, dict[ChordDiagram, object]] = {}
    for k, p in enumerate(pivots):
        row = rows.get(k, {})
        table[columns[p]] = {columns[j]: -c for j, c in row.items() if j != p}
    pivot_set = set(pivots)
    basis = tuple(d for j, d in enumerate(columns) if j not in pivot_set)
    logger.info(
        "cell degree %d: %d diagrams, %d relations, dim %d (%.2fs)",
        n, len(columns), n_rels, len(basis), time.perf_counter() - started,
    )
    return QuotientBasis(s, n, basis, table)


def dim(s: Skeleton, n: int) -> int:
    from src.relations.cache import default_store

    return default_store().get(s, n).dim


def randomized_dim(s: Skeleton, n: int, *, seed: int = 0) -> int:
    """Independent dimension count: rank of the relation matrix modulo a random large prime.

    Relation coefficients are integers, so the rank mod p never exceeds the rational
    rank and equals it unless p divides one of finitely many minors.
    """
    columns, rows = _relation_rows(s, n)
    if not rows:
        return len(columns)
    rng = random.Random(seed)
    field_ = GF(nextprime(rng.randint(2**24, 2**26)))

    def mod_p(c):
        return field_.quo(field_(int(c.numerator)), field_(int(c.denominator)))

    entries = {i: {j: mod_p(c) for j, c in r.items() if c} for i, r in rows.items()}
    entries = {i: r for i, r in entries.items() if r}
    matrix = DomainMatrix(entries, (len(rows), len(columns)), field_)
    return len(columns) - matrix.rank()
