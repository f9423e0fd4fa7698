from __future__ import annotations

import pytest

from src.diagram.models import LinComb
from src.relations.cache import configure_default_store, default_store


@pytest.fixture(scope="session", autouse=True)
def quotient_store():
    """One in-memory store for the whole run so cells are computed once."""
    return configure_default_store(None)


@pytest.fixture
def reduce():
    def _reduce(v: LinComb) -> LinComb:
        return default_store().reduce(v)

    return _reduce
