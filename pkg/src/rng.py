"""PRAX-NFA — детерминированный расщепляемый генератор случайных чисел.

Счётчиковый Philox поверх SeedSequence: одинаковый seed даёт одинаковую
последовательность, а spawn() даёт независимые дочерние потоки.
Один поток — одна последовательность вызовов; потоки между задачами не делят.
"""

from __future__ import annotations

import numpy as np

from src.automata import Word
from src.errors import InputError

SEED_BITS = 64
_SMALL_BOUND = 2 ** 62


def fresh_seed() -> int:
    """Случайный 64-битный seed (печатается в отчёте, чтобы прогон был воспроизводим)."""
    return int(np.random.SeedSequence().entropy) % (2 ** SEED_BITS)


class RngStream:
    def __init__(self, seed: int | None = None, *, _seq: np.random.SeedSequence | None = None) -> None:
        if _seq is None:
            if seed is None:
                seed = fresh_seed()
            if not 0 <= seed < 2 ** SEED_BITS:
                raise InputError(f"seed must be a {SEED_BITS}-bit non-negative integer, got {seed}")
            _seq = np.random.SeedSequence(seed)
        self._seq = _seq
        self._gen = np.random.Generator(np.random.Philox(_seq))

    def __repr__(self) -> str:
        return f"RngStream(seed={self.seed}, spawn_key={self.spawn_key})"

    @property
    def seed(self) -> int:
        return int(self._seq.entropy)

    @property
    def spawn_key(self) -> tuple[int, ...]:
        return tuple(self._seq.spawn_key)

    def spawn(self, n: int) -> list[RngStream]:
        return [RngStream(_seq=child) for child in self._seq.spawn(n)]

    # ── примитивы ───────────────────────────────────────────────────────────

    def random(self) -> float:
        """Равномерно в [0, 1)."""
        return float(self._gen.random())

    def integers(self, low: int, high: int) -> int:
        """Равномерно в [low, high)."""
        return int(self._gen.integers(low, high))

    def symbols(self, alphabet_size: int, length: int) -> Word:
        if length == 0:
            return ()
        return tuple(self._gen.integers(0, alphabet_size, size=length).tolist())

    def geometric(self, p: float) -> int:
        """k ≥ 1 с P(k) = (1-p)^{k-1} p."""
        return int(self._gen.geometric(p))

    def zipf(self, a: float) -> int:
        """k ≥ 1 с P(k) = k^{-a} / ζ(a)."""
        return int(self._gen.zipf(a))

    def getrandbits(self, k: int) -> int:
        if k <= 0:
            return 0
        chunks = -(-k // 32)
        value = 0
        for x in self._gen.integers(0, 2 ** 32, size=chunks, dtype=np.uint64).tolist():
            value = (value << 32) | int(x)
        return value >> (chunks * 32 - k)

    def randbelow(self, n: int) -> int:
        """Точно равномерное целое в [0, n) для сколь угодно большого n."""
        if n < 1:
            raise InputError(f"randbelow needs n >= 1, got {n}")
        if n <= _SMALL_BOUND:
            return int(self._gen.integers(0, n))
        k = n.bit_length()
        while True:
            r = self.getrandbits(k)
            if r < n:
                return r
