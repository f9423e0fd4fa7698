"""Chord diagrams in canonical form and their exact linear combinations."""

from .enumerate import enumerate_diagrams
from .models import EMPTY, ChordDiagram, LinComb, canonicalize, from_words

__all__ = ["ChordDiagram", "LinComb", "EMPTY", "canonicalize", "from_words", "enumerate_diagrams"]
