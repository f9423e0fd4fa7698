from __future__ import annotations

from pathlib import Path

from src.diagram.models import LinComb
from src.diagram.text_format import INLINE, dump_lincomb, load_lincomb
from src.skeleton.models import Skeleton


class GradedElement:
    """An element of A(skeleton) truncated at ``max_degree``; parts are reduced on request."""

    __slots__ = ("value", "max_degree", "skeleton_name")

    def __init__(self, value: LinComb, max_degree: int | None = None, *, skeleton_name: str | None = None) -> None:
        degs = value.degrees()
        self.max_degree = max_degree if max_degree is not None else (degs[-1] if degs else 0)
        self.value = LinComb.zero(value.skeleton, value.domain)
        for k in degs:
            if k <= self.max_degree:
                self.value = self.value + value.degree_part(k)
        self.skeleton_name = skeleton_name

    @property
    def skeleton(self) -> Skeleton:
        return self.value.skeleton

    def part(self, k: int) -> LinComb:
        return self.value.degree_part(k)

    def with_value(self, value: LinComb, *, skeleton_name: str | None = None) -> "GradedElement":
        return GradedElement(value, self.max_degree, skeleton_name=skeleton_name)

    def reduced(self) -> "GradedElement":
        from src.relations.cache import default_store

        return self.with_value(default_store().reduce(self.value), skeleton_name=self.skeleton_name)

    def is_zero(self) -> bool:
        from src.relations.cache import default_store

        return default_store().is_zero(self.value)

    def dump(self) -> str:
        return dump_lincomb(self.value, self.skeleton_name or INLINE)

    @classmethod
    def load(cls, path: str | Path) -> "GradedElement":
        value, name = load_lincomb(path)
        return cls(value, skeleton_name=None if name == INLINE else name)
