"""PRAX-NFA — точные вычисления на малых экземплярах.

Эталон для тестов: число принятых слов по длинам, точные индексы,
точная проверка включения и перечисление конечных языков.
Счётчики — большие целые; в float переводится только итоговое отношение.
"""

from __future__ import annotations

import logging
import math
from collections import defaultdict
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from fractions import Fraction

from src.automata import AdfaCertificate, Dfa, Nfa, Word, certify_block
from src.distributions import LengthDistribution
from src.errors import InputError, ResourceLimit

logger = logging.getLogger("prax.oracle")

DEFAULT_MAX_SUBSETS = 2 ** 20
DEFAULT_MAX_WORDS = 1_000_000


@dataclass(frozen=True)
class IndexInterval:
    """lower ≤ W(a) ≤ upper, upper - lower = tail."""
    lower: float
    upper: float
    cutoff: int
    tail: float

    def __contains__(self, value: float) -> bool:
        return self.lower <= value <= self.upper


@dataclass(frozen=True)
class SubsetResult:
    holds: bool
    counterexample: Word | None
    checked: int


# ─────────────────────────────────────────────────────────────────────────────
# Per-length counts (layered subset construction with multiplicities)
# ─────────────────────────────────────────────────────────────────────────────

def counts_up_to(a: Nfa, length: int, *, max_subsets: int = DEFAULT_MAX_SUBSETS) -> list[int]:
    """[|L(a) ∩ Σⁿ| for n in 0..length]."""
    if length < 0:
        raise InputError(f"length must be >= 0, got {length}")
    layer: dict[frozenset[int], int] = {a.start: 1} if a.start else {}
    seen: set[frozenset[int]] = set(layer)
    counts: list[int] = []
    for n in range(length + 1):
        counts.append(sum(c for subset, c in layer.items() if not subset.isdisjoint(a.finals)))
        if n == length:
            break
        nxt: dict[frozenset[int], int] = defaultdict(int)
        for subset, c in layer.items():
            for sym in range(a.alphabet_size):
                target = a.step(subset, sym)
                if target:
                    nxt[target] += c
        seen.update(nxt)
        if len(seen) > max_subsets:
            raise ResourceLimit(f"subset construction exceeded {max_subsets} states at length {n + 1}")
        layer = nxt
    logger.debug("counts_up_to(%d): %d distinct subsets", length, len(seen))
    return counts


def count_per_length(a: Nfa, length: int, *, max_subsets: int = DEFAULT_MAX_SUBSETS) -> int:
    return counts_up_to(a, length, max_subsets=max_subsets)[-1]


# ─────────────────────────────────────────────────────────────────────────────
# Exact indices
# ─────────────────────────────────────────────────────────────────────────────

def exact_index_block(a: Nfa, *, max_subsets: int = DEFAULT_MAX_SUBSETS) -> Fraction:
    """|L(a)| / s^ℓ для блочного a."""
    cert = certify_block(a)
    ell = cert.word_length
    return Fraction(count_per_length(a, ell, max_subsets=max_subsets), a.alphabet_size ** ell)


def exact_index_upto(a: Nfa, length: int, *, max_subsets: int = DEFAULT_MAX_SUBSETS) -> Fraction:
    """Индекс относительно равномерного распределения на Σ^{≤ℓ}."""
    counts = counts_up_to(a, length, max_subsets=max_subsets)
    total = sum(a.alphabet_size ** n for n in range(length + 1))
    return Fraction(sum(counts), total)


def exact_index_truncated(
    a: Nfa,
    dist: LengthDistribution,
    cutoff: int,
    *,
    max_subsets: int = DEFAULT_MAX_SUBSETS,
) -> IndexInterval:
    s = a.alphabet_size
    counts = counts_up_to(a, cutoff, max_subsets=max_subsets)
    lower = math.fsum(dist.mass(n) * (c / s ** n) for n, c in enumerate(counts))
    tail = dist.tail(cutoff)
    return IndexInterval(lower=lower, upper=lower + tail, cutoff=cutoff, tail=tail)


# ─────────────────────────────────────────────────────────────────────────────
# Enumeration
# ─────────────────────────────────────────────────────────────────────────────

def enumerate_adfa(b: AdfaCertificate, *, limit: int = DEFAULT_MAX_WORDS) -> Iterator[Word]:
    """Слова L(b) обходом в глубину от старта; ResourceLimit после limit слов."""
    d = b.dfa
    emitted = 0
    stack: list[tuple[int, Word]] = [(d.start_state, ())]
    while stack:
        state, prefix = stack.pop()
        if state in d.finals:
            emitted += 1
            if emitted > limit:
                raise ResourceLimit(f"language has more than {limit} words")
            yield prefix
        # обратный порядок, чтобы меньшие символы снимались со стека первыми
        for sym, r in reversed(list(d.out_edges(state))):
            stack.append((r, prefix + (sym,)))


def accepted_words(a: Nfa, length: int, *, limit: int = DEFAULT_MAX_WORDS) -> list[Word]:
    """Все w ∈ L(a) ∩ Σ^ℓ в лексикографическом порядке."""
    out: list[Word] = []
    stack: list[tuple[frozenset[int], Word]] = [(a.start, ())]
    while stack:
        frontier, prefix = stack.pop()
        if len(prefix) == length:
            if not frontier.isdisjoint(a.finals):
                out.append(prefix)
                if len(out) > limit:
                    raise ResourceLimit(f"more than {limit} accepted words of length {length}")
            continue
        for sym in reversed(range(a.alphabet_size)):
            nxt = a.step(frontier, sym)
            if nxt:
                stack.append((nxt, prefix + (sym,)))
    return out


def exact_subset(b: AdfaCertificate, a: Nfa, *, limit: int = DEFAULT_MAX_WORDS) -> SubsetResult:
    """L(b) ⊆ L(a) перебором L(b); первое непринятое слово — контрпример."""
    checked = 0
    for w in enumerate_adfa(b, limit=limit):
        checked += 1
        if not a.accepts(w):
            return SubsetResult(holds=False, counterexample=w, checked=checked)
    return SubsetResult(holds=True, counterexample=None, checked=checked)


def intersection_count(
    ds: Sequence[Dfa], length: int, *, max_subsets: int = DEFAULT_MAX_SUBSETS,
) -> int:
    """|∩ L(dᵢ) ∩ Σ^ℓ| по произведению ДКА, послойно."""
    if not ds:
        raise InputError("intersection of an empty list of automata")
    s = ds[0].alphabet_size
    if any(d.alphabet_size != s for d in ds):
        raise InputError("mixed alphabet sizes")

    layer: dict[tuple[int, ...], int] = {tuple(d.start_state for d in ds): 1}
    for n in range(length):
        nxt: dict[tuple[int, ...], int] = defaultdict(int)
        for states, c in layer.items():
            for sym in range(s):
                targets = tuple(d.delta(q, sym) for d, q in zip(ds, states))
                if None not in targets:
                    nxt[targets] += c  # type: ignore[index]
        if len(nxt) > max_subsets:
            raise ResourceLimit(f"product construction exceeded {max_subsets} states at length {n + 1}")
        layer = nxt
    return sum(c for states, c in layer.items() if all(q in d.finals for d, q in zip(ds, states)))
