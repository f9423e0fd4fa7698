"""A(up_n): stacking product, truncated series, strand maps and free-group pullbacks."""

from .free_group import FreeGroupMap, parse_map
from .series import Series, chord, stack

__all__ = ["FreeGroupMap", "parse_map", "Series", "chord", "stack"]
