from __future__ import annotations

import pytest

from src.automata import Dfa, Nfa, prefix_nfa, universal_nfa
from src.rng import RngStream

SEED = 20260618


@pytest.fixture
def rng() -> RngStream:
    return RngStream(SEED)


@pytest.fixture
def sigma_star() -> Dfa:
    return universal_nfa(2)


@pytest.fixture
def not_starting_with_zero() -> Dfa:
    """Σ₂* \\ 0Σ₂* = {ε} ∪ 1Σ₂*."""
    return Dfa(2, 2, {0}, {0, 1}, {(0, 1, 1), (1, 0, 1), (1, 1, 1)})


@pytest.fixture
def starts_with_zero() -> Dfa:
    return prefix_nfa(2, (0,))


def seeded_streams(n: int, base: int = SEED) -> list[RngStream]:
    return RngStream(base).spawn(n)


@pytest.fixture
def streams():
    return seeded_streams


@pytest.fixture
def unary_star() -> Nfa:
    return universal_nfa(1)
