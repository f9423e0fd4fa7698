from __future__ import annotations

import logging
from math import factorial
from pathlib import Path
from typing import Callable, Sequence

from sympy.polys.domains import QQ
from sympy.polys.polyerrors import ExactQuotientFailed

from src.diagram.models import EMPTY, ChordDiagram, LinComb, from_words, to_scalar
from src.diagram.text_format import format_inline, parse_inline
from src.errors import AlgebraError, CellMismatchError, ParseError
from src.skeleton.catalog import strands

logger = logging.getLogger(__name__)


def chord(n: int, i: int, j: int) -> ChordDiagram:
    """The single chord t_ij on ``n`` strands (a self chord when ``i == j``)."""
    if not (1 <= i <= n and 1 <= j <= n):
        raise ValueError(f"t{i}{j} needs strands 1..{n}")
    if i == j:
        return from_words({str(i): [0, 0]}, strands(n))
    return from_words({str(i): [0], str(j): [0]}, strands(n))


def stack(a: LinComb, b: LinComb) -> LinComb:
    """Product in A(up_n): ``a`` below ``b``."""
    if a.skeleton != b.skeleton:
        raise CellMismatchError("stacking needs two combinations on the same strands")
    s = a.skeleton
    a, b = (a + LinComb.zero(s, b.domain)), (b + LinComb.zero(s, a.domain))
    out = LinComb.zero(s, a.domain)
    for d1, c1 in a.items():
        w1 = d1.words()
        for d2, c2 in b.items():
            shift = d1.degree
            words = {k: list(v) for k, v in w1.items()}
            for k, v in d2.words().items():
                words.setdefault(k, []).extend(x + shift for x in v)
            out.add_term(from_words(words, s), c1 * c2)
    return out


class Series:
    """Truncated element of A(up_n): homogeneous parts up to ``max_degree``, kept reduced."""

    __slots__ = ("n", "max_degree", "domain", "_parts")

    def __init__(self, n: int, max_degree: int, parts: dict[int, LinComb] | None = None, *, domain=QQ, reduce: bool = True):
        self.n = n
        self.max_degree = max_degree
        skel = strands(n)
        self.domain = domain
        for p in (parts or {}).values():
            self.domain = self.domain.unify(p.domain)
        self._parts: dict[int, LinComb] = {}
        for deg, part in (parts or {}).items():
            if deg > max_degree or part.is_zero():
                continue
            if part.skeleton != skel:
                raise CellMismatchError(f"series part of degree {deg} is not on {n} strands")
            part = part.with_domain(self.domain)
            if reduce:
                from src.relations.cache import default_store

                part = default_store().reduce(part)
            if not part.is_zero():
                self._parts[deg] = part

    # --- constructors --------------------------------------------------------------------

    @classmethod
    def one(cls, n: int, max_degree: int, *, domain=QQ) -> "Series":
        return cls(n, max_degree, {0: LinComb.single(strands(n), EMPTY, 1, domain)}, domain=domain, reduce=False)

    @classmethod
    def from_lincomb(cls, v: LinComb, max_degree: int) -> "Series":
        n = v.skeleton.strand_count
        return cls(n, max_degree, {k: v.degree_part(k) for k in v.degrees()}, domain=v.domain)

    @classmethod
    def t(cls, n: int, i: int, j: int, max_degree: int, coeff=1, *, domain=QQ) -> "Series":
        return cls(n, max_degree, {1: LinComb.single(strands(n), chord(n, i, j), coeff, domain)}, domain=domain)

    @classmethod
    def exp(cls, c: LinComb, max_degree: int) -> "Series":
        """``sum c^m / m!`` for a homogeneous ``c`` of positive degree."""
        degs = c.degrees()
        if not degs:
            return cls.one(c.skeleton.strand_count, max_degree, domain=c.domain)
        if len(degs) != 1 or degs[0] == 0:
            raise AlgebraError("exp needs a homogeneous combination of positive degree")
        k = degs[0]
        n = c.skeleton.strand_count
        parts = {0: LinComb.single(c.skeleton, EMPTY, 1, c.domain)}
        power = LinComb.single(c.skeleton, EMPTY, 1, c.domain)
        m = 1
        while m * k <= max_degree:
            power = stack(power, c)
            parts[m * k] = power.scale(to_scalar(c.domain, f"1/{factorial(m)}"))
            m += 1
        return cls(n, max_degree, parts, domain=c.domain)

    # --- access --------------------------------------------------------------------------

    @property
    def skeleton(self):
        return strands(self.n)

    def part(self, deg: int) -> LinComb:
        return self._parts.get(deg, LinComb.zero(self.skeleton, self.domain))

    def degrees(self) -> list[int]:
        return sorted(self._parts)

    def as_lincomb(self) -> LinComb:
        out = LinComb.zero(self.skeleton, self.domain)
        for p in self._parts.values():
            out = out + p
        return out

    def is_zero(self) -> bool:
        return not self._parts

    def truncate(self, max_degree: int) -> "Series":
        return Series(self.n, max_degree, {k: v for k, v in self._parts.items() if k <= max_degree}, domain=self.domain, reduce=False)

    def _check(self, other: "Series") -> None:
        if self.n != other.n or self.max_degree != other.max_degree:
            raise CellMismatchError(
                f"series on {self.n} strands to degree {self.max_degree} vs {other.n} strands to degree {other.max_degree}"
            )

    # --- arithmetic ----------------------------------------------------------------------

    def __add__(self, other: "Series") -> "Series":
        self._check(other)
        parts = {k: self.part(k) + other.part(k) for k in set(self._parts) | set(other._parts)}
        return Series(self.n, self.max_degree, parts, domain=self.domain.unify(other.domain), reduce=False)

    def __neg__(self) -> "Series":
        return self.scale(-1)

    def __sub__(self, other: "Series") -> "Series":
        return self + (-other)

    def scale(self, factor) -> "Series":
        return Series(self.n, self.max_degree, {k: v.scale(factor) for k, v in self._parts.items()}, domain=self.domain, reduce=False)

    def product(self, other: "Series") -> "Series":
        self._check(other)
        parts: dict[int, LinComb] = {}
        for i, a in self._parts.items():
            for j, b in other._parts.items():
                if i + j > self.max_degree:
                    continue
                term = stack(a, b)
                parts[i + j] = parts[i + j] + term if i + j in parts else term
        return Series(self.n, self.max_degree, parts, domain=self.domain.unify(other.domain))

    def __mul__(self, other: "Series") -> "Series":
        return self.product(other)

    def inverse(self) -> "Series":
        a0 = self.part(0).coeff(EMPTY)
        if not a0:
            raise AlgebraError("series with zero constant term is not invertible")
        try:
            inv0 = self.domain.exquo(self.domain.one, a0)
        except ExactQuotientFailed as exc:
            raise AlgebraError("constant term is not a unit of the coefficient ring") from exc
        unit = self.scale(inv0)
        x = unit - Series.one(self.n, self.max_degree, domain=self.domain)
        # 1 / (1 + x) = 1 - x + x^2 - ...
        total = Series.one(self.n, self.max_degree, domain=self.domain)
        power = Series.one(self.n, self.max_degree, domain=self.domain)
        for k in range(1, self.max_degree + 1):
            power = power.product(x)
            if power.is_zero():
                break
            total = total + (power if k % 2 == 0 else -power)
        return total.scale(inv0)

    def apply(self, fn: Callable[[LinComb], LinComb], n_out: int) -> "Series":
        """Apply a graded linear map to every part and reduce on the target strands."""
        parts = {k: fn(v) for k, v in self._parts.items()}
        return Series(n_out, self.max_degree, parts, domain=self.domain)

    def delta(self, i: int) -> "Series":
        from src.strand_algebra.maps import delta

        return self.apply(lambda v: delta(i, v), self.n + 1)

    def delete(self, i: int) -> "Series":
        from src.strand_algebra.maps import d

        return self.apply(lambda v: d(i, v), self.n - 1)

    def permute(self, sigma: Sequence[int]) -> "Series":
        from src.strand_algebra.maps import permute

        return self.apply(lambda v: permute(sigma, v), self.n)

    def switch_all(self) -> "Series":
        from src.strand_algebra.maps import switch_all

        return self.apply(switch_all, self.n)

    def pullback(self, beta) -> "Series":
        from src.strand_algebra.pullback import pullback

        return self.apply(lambda v: pullback(beta, v), beta.source_rank)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        return self.n == other.n and self.max_degree == other.max_degree and (self - other).is_zero()

    def __repr__(self) -> str:
        return f"Series(n={self.n}, max_degree={self.max_degree}, degrees={self.degrees()})"


# --- text format -------------------------------------------------------------------------


def dump_series(a: Series) -> str:
    from src.diagram.models import format_scalar

    lines = [f"strands {a.n} maxdeg {a.max_degree}"]
    for k in range(a.max_degree + 1):
        part = a.part(k)
        if part.is_zero():
            continue
        lines.append(f"degree {k}")
        lines += [f"{format_scalar(a.domain, c)} | {format_inline(d)}" for d, c in part.items()]
    return "\n".join(lines) + "\n"


def parse_series(text: str, *, source: str | None = None, domain=QQ) -> Series:
    rows = [(i, raw.split("#", 1)[0].strip()) for i, raw in enumerate(text.splitlines(), start=1)]
    rows = [(i, line) for i, line in rows if line]
    if not rows:
        raise ParseError("empty series file", source=source)
    head = rows[0][1].split()
    if len(head) != 4 or head[0] != "strands" or head[2] != "maxdeg":
        raise ParseError("expected header: strands <n> maxdeg <D>", line=rows[0][0], source=source)
    n, max_degree = int(head[1]), int(head[3])
    skel = strands(n)
    parts: dict[int, LinComb] = {}
    current: int | None = None
    for lineno, line in rows[1:]:
        if line.startswith("degree "):
            current = int(line.split()[1])
            parts.setdefault(current, LinComb.zero(skel, domain))
            continue
        if current is None:
            raise ParseError("coefficient line before any 'degree <k>' line", line=lineno, source=source)
        coeff, sep, diagram = line.partition("|")
        if not sep:
            raise ParseError("expected: <coefficient> | <diagram>", line=lineno, source=source)
        try:
            d = parse_inline(diagram, skel)
            parts[current].add_term(d, to_scalar(domain, coeff.strip()))
        except ValueError as exc:
            raise ParseError(str(exc), line=lineno, source=source) from exc
        if d.degree != current:
            raise ParseError(f"diagram of degree {d.degree} listed under degree {current}", line=lineno, source=source)
    return Series(n, max_degree, parts, domain=domain)


def load_series(path: str | Path, *, domain=QQ) -> Series:
    p = Path(path)
    if not p.exists():
        raise FileNotFoundError(f"Series file not found: {p}")
    return parse_series(p.read_text(encoding="utf-8"), source=str(p), domain=domain)
