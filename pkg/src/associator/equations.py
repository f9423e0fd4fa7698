from __future__ import annotations

import logging

from src.diagram.models import LinComb
from src.errors import CellMismatchError
from src.skeleton.catalog import strands
from src.strand_algebra.series import Series, chord

logger = logging.getLogger(__name__)

# permutation superscripts: a chord between i and j goes to sigma(i), sigma(j)
P231 = (2, 3, 1)
P213 = (2, 1, 3)
P21 = (2, 1)


def standard_r(max_degree: int, *, domain=None) -> Series:
    """R = exp(t12 / 2)."""
    from sympy.polys.domains import QQ

    dom = domain or QQ
    half = LinComb.single(strands(2), chord(2, 1, 2), "1/2", dom)
    return Series.exp(half, max_degree)


def phi_star(max_degree: int = 2) -> Series:
    """1 - (1/24)(t12 t23 - t23 t12)."""
    t12 = Series.t(3, 1, 2, max_degree)
    t23 = Series.t(3, 2, 3, max_degree)
    comm = t12 * t23 - t23 * t12
    return Series.one(3, max_degree) + comm.scale("-1/24")


def _require(series: Series, n: int, what: str) -> None:
    if series.n != n:
        raise CellMismatchError(f"{what} must live on {n} strands, got {series.n}")


def pentagon_residual(phi: Series) -> Series:
    """Delta_4(Phi) Delta_2(Phi) Delta_0(Phi) - Delta_1(Phi) Delta_3(Phi) on four strands."""
    _require(phi, 3, "Phi")
    lhs = phi.delta(4) * phi.delta(2) * phi.delta(0)
    rhs = phi.delta(1) * phi.delta(3)
    out = lhs - rhs
    logger.debug("pentagon residual degrees %s", out.degrees())
    return out


def _hexagon(phi: Series, r: Series) -> Series:
    lhs = phi * r.delta(2) * phi.permute(P231)
    rhs = r.delta(3) * phi.permute(P213) * r.delta(0).permute(P213)
    return lhs - rhs


def hexagon_residuals(phi: Series, r: Series) -> tuple[Series, Series]:
    """Residuals of the hexagon for R and for (R^21)^-1."""
    _require(phi, 3, "Phi")
    _require(r, 2, "R")
    if phi.max_degree != r.max_degree:
        raise CellMismatchError(f"Phi is truncated at {phi.max_degree}, R at {r.max_degree}")
    flipped = r.permute(P21).inverse()
    return _hexagon(phi, r), _hexagon(phi, flipped)
