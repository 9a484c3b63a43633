"""PRAX-NFA — точные сэмплеры слов.

  toss_coin        — монета с P(0) = p
  uselect          — равномерное слово из Σ^ℓ
  select_fin       — выбор из конечного распределения цепочкой монет
  count_paths      — число путей start → q в ациклическом ДКА
  adfa_uselect     — равномерное слово из L(B) через ранжирование
  sample_augmented — слово из усечённого распределения или None
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from typing import TypeVar

from src.automata import AdfaCertificate, Word
from src.distributions import AugmentedTable, LengthBased, augment
from src.errors import EmptyLanguage, InputError
from src.rng import RngStream

logger = logging.getLogger("prax.sampling")

T = TypeVar("T")

SUM_TOLERANCE = 1e-9
DENOMINATOR_FLOOR = 1e-15


# ─────────────────────────────────────────────────────────────────────────────
# Coins and finite selection
# ─────────────────────────────────────────────────────────────────────────────

def toss_coin(p: float, rng: RngStream) -> int:
    """0 с вероятностью p, иначе 1."""
    if not 0.0 <= p <= 1.0:
        raise InputError(f"coin probability must lie in [0, 1], got {p}")
    return 0 if rng.random() < p else 1


def uselect(alphabet_size: int, length: int, rng: RngStream) -> Word:
    if alphabet_size < 1 or length < 0:
        raise InputError(f"uselect needs s >= 1 and length >= 0, got s={alphabet_size} length={length}")
    return rng.symbols(alphabet_size, length)


def coin_parameters(probs: Sequence[float]) -> tuple[float, ...]:
    """p₁ = D(x₁), p_{i+1} = D(x_{i+1}) / ((1-p₁)···(1-p_i)); последний равен 1."""
    if not probs:
        raise InputError("finite distribution has no outcomes")
    for i, p in enumerate(probs):
        if p < 0:
            raise InputError(f"negative probability {p} at outcome {i}")
    total = sum(probs)
    if abs(total - 1.0) > SUM_TOLERANCE:
        raise InputError(f"probabilities sum to {total!r}, not 1")

    params: list[float] = []
    remaining = 1.0
    for p in probs[:-1]:
        c = min(1.0, p / max(remaining, DENOMINATOR_FLOOR))
        params.append(c)
        remaining *= 1.0 - c
    # остаток массы целиком уходит последнему исходу
    params.append(1.0)
    return tuple(params)


def select_by_coins(values: Sequence[T], params: Sequence[float], rng: RngStream) -> T:
    for value, p in zip(values, params):
        if toss_coin(p, rng) == 0:
            return value
    return values[-1]


def select_fin(values: Sequence[T], probs: Sequence[float], rng: RngStream) -> T:
    if len(values) != len(probs):
        raise InputError(f"{len(values)} outcomes but {len(probs)} probabilities")
    return select_by_coins(values, coin_parameters(probs), rng)


# ─────────────────────────────────────────────────────────────────────────────
# Uniform sampling from an acyclic DFA
# ─────────────────────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class PathCountTable:
    """N(q) для достижимых q; total = Σ_{f∈F} N(f) = |L(B)|."""
    counts: dict[int, int]
    # q → [(p, σ), ...] по возрастанию, только достижимые p
    incoming: dict[int, tuple[tuple[int, int], ...]]
    finals: tuple[int, ...]
    total: int


def count_paths(b: AdfaCertificate) -> PathCountTable:
    d = b.dfa
    counts = {q: 0 for q in b.topo_order}
    counts[d.start_state] = 1
    incoming: dict[int, list[tuple[int, int]]] = {q: [] for q in b.topo_order}
    for p in b.topo_order:
        for sym, r in d.out_edges(p):
            counts[r] += counts[p]
            incoming[r].append((p, sym))

    finals = tuple(sorted(f for f in d.finals if counts.get(f, 0) > 0))
    total = sum(counts[f] for f in finals)
    logger.debug("Path counts: %d reachable states, |L| = %d", len(counts), total)
    return PathCountTable(
        counts=counts,
        incoming={q: tuple(sorted(edges)) for q, edges in incoming.items()},
        finals=finals,
        total=total,
    )


def unrank(b: AdfaCertificate, table: PathCountTable, rank: int) -> Word:
    """Биекция {0..N_F-1} → L(B): выбрать финальное состояние, затем идти назад."""
    if not 0 <= rank < table.total:
        raise InputError(f"rank {rank} outside 0..{table.total - 1}")

    r = rank
    state = table.finals[-1]
    for f in table.finals:
        if r < table.counts[f]:
            state = f
            break
        r -= table.counts[f]

    symbols: list[int] = []
    start = b.dfa.start_state
    while state != start:
        for p, sym in table.incoming[state]:
            n = table.counts[p]
            if r < n:
                symbols.append(sym)
                state = p
                break
            r -= n
    symbols.reverse()
    return tuple(symbols)


def adfa_uselect(b: AdfaCertificate, table: PathCountTable, rng: RngStream) -> Word:
    if table.total == 0:
        raise EmptyLanguage("acyclic DFA accepts no word")
    return unrank(b, table, rng.randbelow(table.total))


# ─────────────────────────────────────────────────────────────────────────────
# Augmented distributions
# ─────────────────────────────────────────────────────────────────────────────

def sample_augmented(
    dist: LengthBased,
    cutoff: int,
    rng: RngStream,
    *,
    table: AugmentedTable | None = None,
) -> Word | None:
    """Длина ℓ ≤ cutoff или None по таблице augment(dist, cutoff); затем uselect."""
    if table is None:
        table = augment(dist, cutoff)
    length = select_fin(table.outcomes, table.probs, rng)
    if length is None:
        return None
    return uselect(dist.alphabet_size, length, rng)
