"""Induced operations on chord diagrams, sweeping to strands, and operation pipelines."""
