from __future__ import annotations

import hashlib
import logging
import os
import threading
from concurrent.futures import ProcessPoolExecutor, as_completed
from functools import lru_cache
from pathlib import Path

from pydantic import BaseModel, Field
from sympy.polys.domains import QQ

from src.diagram.models import LinComb, format_scalar, to_scalar
from src.diagram.text_format import format_inline, parse_inline
from src.errors import ParseError
from src.relations.generators import RELATION_VERSION
from src.relations.quotient import QuotientBasis, quotient_basis
from src.skeleton.models import Skeleton
from src.skeleton.text_format import dump_skeleton, parse_skeleton

logger = logging.getLogger(__name__)


class CachedBasis(BaseModel):
    """On-disk form of a quotient cell; table entries are LinComb lines ``<coef> | <diagram>``."""

    version: str
    degree: int
    skeleton: str
    basis: list[str] = Field(default_factory=list)
    table: dict[str, list[str]] = Field(default_factory=dict)

    @classmethod
    def from_quotient(cls, q: QuotientBasis) -> "CachedBasis":
        return cls(
            version=q.version,
            degree=q.degree,
            skeleton=dump_skeleton(q.skeleton),
            basis=[format_inline(d) for d in q.basis],
            table={
                format_inline(d): [f"{format_scalar(QQ, c)} | {format_inline(b)}" for b, c in sorted(nf.items(), key=lambda kv: kv[0].sort_key())]
                for d, nf in sorted(q.table.items(), key=lambda kv: kv[0].sort_key())
            },
        )

    def to_quotient(self) -> QuotientBasis:
        s = parse_skeleton(self.skeleton, source="basis cache")
        table = {}
        for key, lines in self.table.items():
            nf = {}
            for line in lines:
                coeff, _, diagram = line.partition("|")
                nf[parse_inline(diagram, s)] = to_scalar(QQ, coeff.strip())
            table[parse_inline(key, s)] = nf
        return QuotientBasis(s, self.degree, tuple(parse_inline(b, s) for b in self.basis), table, self.version)


@lru_cache(maxsize=4096)
def cell_key(s: Skeleton, n: int) -> str:
    payload = f"{RELATION_VERSION}\n{n}\n{dump_skeleton(s)}"
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


def _compute_cell(skeleton_text: str, degree: int) -> tuple[int, str]:
    """Compute one cell in a worker process.

    Module level so ProcessPoolExecutor can pickle it; the result travels as JSON.
    """
    s = parse_skeleton(skeleton_text, source="worker")
    q = quotient_basis(s, degree)
    return degree, CachedBasis.from_quotient(q).model_dump_json()


class QuotientStore:
    """Memory and optional disk cache of quotient cells, keyed by content hash."""

    def __init__(self, cache_dir: Path | None = None) -> None:
        self.cache_dir = Path(cache_dir) if cache_dir else None
        self._memory: dict[str, QuotientBasis] = {}
        self._lock = threading.Lock()

    def _path(self, key: str) -> Path | None:
        return self.cache_dir / f"{key}.json" if self.cache_dir else None

    def _load(self, key: str) -> QuotientBasis | None:
        path = self._path(key)
        if path is None or not path.exists():
            return None
        try:
            cached = CachedBasis.model_validate_json(path.read_text(encoding="utf-8"))
        except ValueError as exc:
            logger.warning("ignoring unreadable basis cache %s: %s", path, exc)
            return None
        if cached.version != RELATION_VERSION:
            logger.info("stale basis cache %s (version %s)", path.name, cached.version)
            return None
        try:
            return cached.to_quotient()
        except ParseError as exc:
            logger.warning("ignoring corrupt basis cache %s: %s", path, exc)
            return None

    def _save(self, key: str, q: QuotientBasis) -> None:
        path = self._path(key)
        if path is None:
            return
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(f".{os.getpid()}.tmp")
        tmp.write_text(CachedBasis.from_quotient(q).model_dump_json(indent=2), encoding="utf-8")
        os.replace(tmp, path)

    def _remember(self, key: str, q: QuotientBasis) -> QuotientBasis:
        with self._lock:
            return self._memory.setdefault(key, q)

    def get(self, s: Skeleton, n: int) -> QuotientBasis:
        key = cell_key(s, n)
        with self._lock:
            hit = self._memory.get(key)
        if hit is not None:
            return hit
        loaded = self._load(key)
        if loaded is not None:
            logger.info("basis cache hit for degree %d", n)
            return self._remember(key, loaded)
        logger.info("basis cache miss for degree %d", n)
        q = quotient_basis(s, n)
        self._save(key, q)
        return self._remember(key, q)

    def precompute(self, s: Skeleton, degrees: list[int], *, workers: int = 1) -> list[QuotientBasis]:
        """Fill several degree cells, in a process pool when ``workers > 1``."""
        missing = [n for n in degrees if cell_key(s, n) not in self._memory and self._load(cell_key(s, n)) is None]
        if workers > 1 and len(missing) > 1:
            text = dump_skeleton(s)
            with ProcessPoolExecutor(max_workers=min(workers, len(missing))) as executor:
                futures = {executor.submit(_compute_cell, text, n): n for n in missing}
                for future in as_completed(futures):
                    n, payload = future.result()
                    q = CachedBasis.model_validate_json(payload).to_quotient()
                    key = cell_key(s, n)
                    self._save(key, q)
                    self._remember(key, q)
        return [self.get(s, n) for n in degrees]

    # --- reduction over mixed degrees ----------------------------------------------------

    def reduce(self, v: LinComb) -> LinComb:
        out = LinComb.zero(v.skeleton, v.domain)
        for n in v.degrees():
            out = out + self.get(v.skeleton, n).reduce(v.degree_part(n))
        return out

    def is_zero(self, v: LinComb) -> bool:
        return self.reduce(v).is_zero()


_default: QuotientStore | None = None


def default_store() -> QuotientStore:
    global _default
    if _default is None:
        from src.config import KtgConfig

        _default = QuotientStore(KtgConfig.from_env().cache_dir)
    return _default


def configure_default_store(cache_dir: Path | None) -> QuotientStore:
    global _default
    _default = QuotientStore(cache_dir)
    return _default
