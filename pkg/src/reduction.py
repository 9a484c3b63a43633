"""PRAX-NFA — сведение универсальности двоичного блочного НКА к порогу δ.

По блочному b длины ℓ строится блочный a длины n = k+ℓ такой, что
|L(b)| = 2^ℓ  ⇔  |L(a)| ≥ 2ⁿ·δ.

a = F·L(b), где F — ровно 1+m_k слов длины k (гаджет), m_k — первые
k двоичных цифр δ. Гаджет строится за O(k²).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction

from src.automata import BlockCertificate, Nfa, Transition
from src.errors import InputError, PraxError, ResourceLimit

logger = logging.getLogger("prax.reduction")

DEFAULT_MAX_BITS = 4096
DEFAULT_MAX_LENGTH = 8192


@dataclass(frozen=True)
class DeltaBits:
    """Двоичные цифры рационального δ ∈ (0, 1): δ = 0.b₁b₂b₃…₂"""
    value: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", Fraction(self.value))
        if not 0 < self.value < 1:
            raise InputError(f"delta must lie in (0, 1), got {self.value}")

    @classmethod
    def parse(cls, text: str) -> DeltaBits:
        try:
            return cls(Fraction(text.strip()))
        except (ValueError, ZeroDivisionError):
            raise InputError(f"delta must be a rational P/Q, got {text!r}") from None

    def prefix(self, p: int) -> int:
        """m_p = b₁2^{p-1} + … + b_p = ⌊δ·2^p⌋."""
        return (self.value.numerator << p) // self.value.denominator

    def bit(self, p: int) -> int:
        if p < 1:
            raise InputError(f"bit positions start at 1, got {p}")
        return self.prefix(p) & 1

    @property
    def is_dyadic(self) -> bool:
        q = self.value.denominator
        return q & (q - 1) == 0


@dataclass(frozen=True)
class ThresholdInstance:
    nfa: Nfa
    n: int
    k: int
    m_k: int
    p1: int
    dyadic: bool


def first_one_position(delta: DeltaBits, *, max_bits: int = DEFAULT_MAX_BITS) -> int:
    for p in range(1, max_bits + 1):
        if delta.bit(p):
            return p
    raise InputError(f"delta {delta.value} has no 1-bit within the first {max_bits} positions")


# ─────────────────────────────────────────────────────────────────────────────
# Gadget
# ─────────────────────────────────────────────────────────────────────────────

def _branch_symbols(c: int | None, i: int) -> tuple[int, ...]:
    """Символы позиции i ветки Σ^c·0·1^{k-c-1}; c=None — ветка 1^k."""
    if c is None or i > c:
        return (1,)
    if i == c:
        return (0,)
    return (0, 1)


def _gadget(count: int, k: int, *, extra_word: bool) -> Nfa:
    """Блочный НКА длины k с одним стартом 0 и одним финалом (последнее состояние).

    Для каждой единицы c в двоичной записи count — прямая ветка
    Σ^c·0·1^{k-c-1} (2^c слов); последний 0 стоит в позиции c, поэтому
    ветки не пересекаются. extra_word добавляет ветку 1^k.
    """
    branches: list[int | None] = [c for c in range(k) if count >> c & 1]
    if extra_word:
        branches.append(None)

    inner = k - 1
    final = 1 + len(branches) * inner
    transitions: set[Transition] = set()
    for b, c in enumerate(branches):
        chain = [0, *range(1 + b * inner, 1 + (b + 1) * inner), final]
        for i in range(k):
            for sym in _branch_symbols(c, i):
                transitions.add((chain[i], sym, chain[i + 1]))
    return Nfa(2, final + 1, {0}, {final}, transitions)


def build_mk_bnfa(m_k: int, k: int) -> Nfa:
    """Ровно 1+m_k слов длины k, один финал."""
    if k < 1:
        raise InputError(f"gadget length must be >= 1, got {k}")
    if not 0 <= m_k < 2 ** k:
        raise InputError(f"need 1 <= 1+m_k <= 2^k, got m_k={m_k} k={k}")
    return _gadget(m_k, k, extra_word=True)


def build_count_bnfa(count: int, k: int) -> Nfa:
    """Ровно count слов длины k (ветвь для двоично-рационального δ)."""
    if k < 1 or not 1 <= count <= 2 ** k:
        raise InputError(f"need 1 <= count <= 2^k, got count={count} k={k}")
    if count == 2 ** k:
        return _gadget(count - 1, k, extra_word=True)
    return _gadget(count, k, extra_word=False)


def concatenate(gadget: Nfa, b: Nfa) -> Nfa:
    """Переходы гаджета в его финал перенаправляются во все старты b."""
    (final,) = gadget.finals
    offset = final
    transitions: set[Transition] = set()
    for p, sym, r in gadget.transitions:
        if r == final:
            transitions.update((p, sym, q + offset) for q in b.start)
        else:
            transitions.add((p, sym, r))
    transitions.update((p + offset, sym, r + offset) for p, sym, r in b.transitions)
    return Nfa(
        alphabet_size=2,
        num_states=offset + b.num_states,
        start=gadget.start,
        finals={q + offset for q in b.finals},
        transitions=transitions,
    )


# ─────────────────────────────────────────────────────────────────────────────
# Reduction
# ─────────────────────────────────────────────────────────────────────────────

def reduce_to_threshold(
    b: BlockCertificate,
    delta: DeltaBits | Fraction | str,
    *,
    dyadic: bool = False,
    max_bits: int = DEFAULT_MAX_BITS,
    max_length: int = DEFAULT_MAX_LENGTH,
) -> ThresholdInstance:
    """dyadic=True для δ = P/2^j берёт F из P слов длины j вместо гаджета 1+m_k."""
    if isinstance(delta, str):
        delta = DeltaBits.parse(delta)
    elif not isinstance(delta, DeltaBits):
        delta = DeltaBits(delta)
    if b.nfa.alphabet_size != 2:
        raise InputError(f"reduction needs a binary block NFA, got alphabet size {b.nfa.alphabet_size}")
    ell = b.word_length
    if ell < 1:
        raise InputError("reduction needs block length >= 1")

    if dyadic and delta.is_dyadic:
        j = delta.value.denominator.bit_length() - 1
        count = delta.value.numerator
        if j + ell > max_length:
            raise ResourceLimit(f"output length {j + ell} exceeds the configured bound {max_length}")
        nfa = concatenate(build_count_bnfa(count, j), b.nfa)
        logger.info("Reduced (dyadic): j=%d |F|=%d n=%d states=%d", j, count, j + ell, nfa.num_states)
        return ThresholdInstance(nfa=nfa, n=j + ell, k=j, m_k=count, p1=0, dyadic=True)

    p1 = first_one_position(delta, max_bits=max_bits)
    k = p1 + ell
    if k + ell > max_length:
        raise ResourceLimit(f"output length {k + ell} exceeds the configured bound {max_length}")
    m_k = delta.prefix(k)
    # δ ≥ 2^{-p₁} даёт m_k ≥ 2^ℓ, δ < 1 даёт m_k < 2^k
    if not 2 ** ell <= m_k < 2 ** k:
        raise PraxError(f"m_k={m_k} outside [2^{ell}, 2^{k})")

    nfa = concatenate(build_mk_bnfa(m_k, k), b.nfa)
    logger.info("Reduced: p1=%d k=%d m_k=%d n=%d states=%d", p1, k, m_k, k + ell, nfa.num_states)
    return ThresholdInstance(nfa=nfa, n=k + ell, k=k, m_k=m_k, p1=p1, dyadic=False)
