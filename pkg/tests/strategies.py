"""Генераторы автоматов для hypothesis и общие статистические допуски."""

from __future__ import annotations

import math
from itertools import product

from hypothesis import strategies as st

from src.automata import Dfa, Nfa, complement_dfa, union_nfa, word_set_nfa


def three_sigma(p: float, n: int) -> float:
    """3σ для доли успехов в n испытаниях Бернулли(p)."""
    return 3 * math.sqrt(p * (1 - p) / n)


@st.composite
def adfas(draw, max_states: int = 6, alphabet_size: int = 2) -> Dfa:
    """Ациклический ДКА: переходы только вперёд, p → r > p."""
    n = draw(st.integers(1, max_states))
    transitions = set()
    for p in range(n - 1):
        for sym in range(alphabet_size):
            if draw(st.booleans()):
                transitions.add((p, sym, draw(st.integers(p + 1, n - 1))))
    finals = draw(st.sets(st.integers(0, n - 1)))
    return Dfa(alphabet_size, n, {0}, finals, transitions)


@st.composite
def dfas(draw, max_states: int = 5, alphabet_size: int = 2) -> Dfa:
    """Произвольный (возможно неполный, с циклами) ДКА."""
    n = draw(st.integers(1, max_states))
    transitions = set()
    for p in range(n):
        for sym in range(alphabet_size):
            if draw(st.integers(0, 4)):
                transitions.add((p, sym, draw(st.integers(0, n - 1))))
    finals = draw(st.sets(st.integers(0, n - 1)))
    return Dfa(alphabet_size, n, {0}, finals, transitions)


@st.composite
def block_nfas(draw, max_length: int = 4, width: int = 2, alphabet_size: int = 2) -> Nfa:
    """Послойный НКА: состояния уровня i ведут только на уровень i+1."""
    length = draw(st.integers(1, max_length))

    def state(level: int, j: int) -> int:
        return level * width + j

    transitions = set()
    for level in range(length):
        for j in range(width):
            for sym in range(alphabet_size):
                for r in range(width):
                    if draw(st.booleans()):
                        transitions.add((state(level, j), sym, state(level + 1, r)))
    starts = draw(st.sets(st.integers(0, width - 1), min_size=1))
    finals = draw(st.sets(st.integers(0, width - 1), min_size=1))
    return Nfa(
        alphabet_size,
        (length + 1) * width,
        {state(0, j) for j in starts},
        {state(length, j) for j in finals},
        transitions,
    )


@st.composite
def unary_nfas(draw, max_states: int = 4) -> Nfa:
    n = draw(st.integers(1, max_states))
    pairs = [(p, r) for p in range(n) for r in range(n)]
    chosen = draw(st.sets(st.sampled_from(pairs)))
    starts = draw(st.sets(st.integers(0, n - 1)))
    finals = draw(st.sets(st.integers(0, n - 1)))
    return Nfa(1, n, starts, finals, {(p, 0, r) for p, r in chosen})


@st.composite
def universal_nfas(draw, max_states: int = 5) -> Nfa:
    """L(d) ∪ (Σ* \\ L(d)) для случайного ДКА d — всегда Σ*."""
    d = draw(dfas(max_states))
    return union_nfa([d, complement_dfa(d)])


@st.composite
def universal_blocks(draw, max_length: int = 3) -> Nfa:
    """Σ₂^ℓ, разрезанный на два префиксных дерева."""
    length = draw(st.integers(1, max_length))
    words = list(product(range(2), repeat=length))
    part = draw(st.sets(st.sampled_from(words)))
    rest = [w for w in words if w not in part]
    return union_nfa([word_set_nfa(2, part), word_set_nfa(2, rest)])
