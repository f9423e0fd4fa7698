"""4T and VI relations, quotient bases per (skeleton, degree) cell, and their cache.

Bases are deterministic: columns follow the canonical diagram order, so a cached
cell and a recomputed one agree entry for entry.
"""
