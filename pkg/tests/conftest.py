"""Shared fixtures: cached family sequences and a hypothesis profile."""

from __future__ import annotations

from functools import lru_cache

import pytest
from hypothesis import HealthCheck, settings

from momentdet import MomentSequence, generate_from_label

settings.register_profile(
    "suite",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


@lru_cache(maxsize=None)
def _sequence(label: str, n_max: int) -> MomentSequence:
    return generate_from_label(label, n_max)


@pytest.fixture(scope="session")
def seqs():
    """Memoized family generator: seqs(label, n_max) -> MomentSequence."""
    return _sequence
