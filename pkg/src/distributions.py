"""PRAX-NFA — распределения длин и распределения слов.

Семейства длин:
  uniform:M      — равномерно на {0..M-1}
  lambert:s′,d   — (1-z)·z^{n-d} при n ≥ d, z = 1/s′
  dirichlet:t,d  — (n+1-d)^{-t} / ζ(t) при n ≥ d

Распределение слов по длине: W(w) = Λ(|w|)·s^{-|w|}.
Вся арифметика — IEEE double; допуски документированы у каждой формулы.
"""

from __future__ import annotations

import functools
import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass
from functools import cached_property
from typing import TYPE_CHECKING, ClassVar

import numpy as np

from src.automata import AdfaCertificate, Word, check_word, membership
from src.errors import InfiniteExpectation, InputError, ResourceLimit

if TYPE_CHECKING:
    from src.rng import RngStream
    from src.sampling import PathCountTable

logger = logging.getLogger("prax.distributions")

ZETA_MAX_TERMS = 2 * 10 ** 8
DIRICHLET_ZETA_TOL = 1e-12
EXPECTATION_ZETA_TOL = 1e-7
_CHUNK = 1 << 20


def _ceil(x: float) -> int:
    """ceil, терпимый к шуму округления: 4.000000000001 → 4."""
    c = math.ceil(x)
    if c - x > 1 - 1e-9:
        c -= 1
    return c


# ─────────────────────────────────────────────────────────────────────────────
# ζ(t)
# ─────────────────────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class ZetaValue:
    """Σ_{n≤terms} n^{-t}; |value − ζ(t)| ≤ error_bound."""
    t: float
    value: float
    error_bound: float
    terms: int


def remainder_bound(t: float, terms: int) -> float:
    """Интегральная оценка хвоста Σ_{n>N} n^{-t} ≤ 1/((t-1)·N^{t-1})."""
    return 1.0 / ((t - 1.0) * float(terms) ** (t - 1.0))


def partial_zeta(t: float, n: int) -> float:
    """Σ_{i=1}^{n} i^{-t}, суммирование кусками от малых слагаемых к большим."""
    if n <= 0:
        return 0.0
    parts: list[float] = []
    for hi in range(n, 0, -_CHUNK):
        lo = max(hi - _CHUNK, 0)
        parts.append(float(np.sum(np.arange(hi, lo, -1, dtype=np.float64) ** -t)))
    return math.fsum(parts)


def terms_for(t: float, tol: float) -> int:
    """Наименьшее N с remainder_bound(t, N) ≤ tol."""
    log_n = math.log(1.0 / ((t - 1.0) * tol)) / (t - 1.0)
    if log_n > math.log(ZETA_MAX_TERMS):
        raise ResourceLimit(
            f"zeta({t}) to tolerance {tol:g} needs more than {ZETA_MAX_TERMS} terms"
        )
    return max(1, math.ceil(math.exp(log_n)))


@functools.lru_cache(maxsize=64)
def zeta(t: float, tol: float) -> ZetaValue:
    if not t > 1:
        raise InputError(f"zeta needs t > 1, got {t}")
    if not tol > 0:
        raise InputError(f"zeta needs tol > 0, got {tol}")
    n = terms_for(t, tol)
    value = partial_zeta(t, n)
    logger.debug("zeta(%g) = %.15g with %d terms (bound %.3g)", t, value, n, remainder_bound(t, n))
    return ZetaValue(t=t, value=value, error_bound=remainder_bound(t, n), terms=n)


def zeta_relaxed(t: float, tol: float) -> ZetaValue:
    """ζ(t) с допуском tol, а если столько слагаемых не влезает в лимит — с лучшим достижимым."""
    try:
        return zeta(t, tol)
    except ResourceLimit:
        achievable = remainder_bound(t, ZETA_MAX_TERMS) * (1 + 1e-9)
        logger.warning("zeta(%g): tolerance %.3g out of reach, relaxed to %.3g", t, tol, achievable)
        return zeta(t, achievable)


# ─────────────────────────────────────────────────────────────────────────────
# Length distributions
# ─────────────────────────────────────────────────────────────────────────────

class LengthDistribution:
    family: ClassVar[str] = ""

    def mass(self, n: int) -> float:
        raise NotImplementedError

    def tail(self, n: int) -> float:
        """Λ(ℕ^{>n})."""
        raise NotImplementedError

    def expectation(self) -> float:
        raise NotImplementedError

    def bound(self, eps: float) -> int:
        """Достаточная граница M из замкнутой формулы семейства."""
        raise NotImplementedError

    def sample(self, rng: RngStream) -> int:
        raise NotImplementedError

    @property
    def descriptor(self) -> str:
        raise NotImplementedError

    def maxlen(self, eps: float) -> int:
        if not 0 < eps < 1:
            raise InputError(f"maxlen needs eps in (0, 1), got {eps}")
        m = self.bound(eps)
        # замкнутая граница точна до округления; добираем, если хвост ещё больше eps
        while self.tail(m) > eps:
            m += 1
        return m


def _check_displacement(d: object, family: str) -> None:
    if not isinstance(d, int) or isinstance(d, bool) or d < 0:
        raise InputError(f"{family}: field 'd' must be a non-negative integer, got {d!r}")


@dataclass(frozen=True)
class UniformLength(LengthDistribution):
    M: int
    family: ClassVar[str] = "uniform"

    def __post_init__(self) -> None:
        if not isinstance(self.M, int) or isinstance(self.M, bool) or self.M < 1:
            raise InputError(f"uniform: field 'M' must be an integer >= 1, got {self.M!r}")

    def mass(self, n: int) -> float:
        return 1.0 / self.M if 0 <= n < self.M else 0.0

    def tail(self, n: int) -> float:
        if n < 0:
            return 1.0
        return max(0, self.M - 1 - n) / self.M

    def expectation(self) -> float:
        return (self.M - 1) / 2

    def bound(self, eps: float) -> int:
        return self.M - 1

    def sample(self, rng: RngStream) -> int:
        return rng.integers(0, self.M)

    @property
    def descriptor(self) -> str:
        return f"uniform:M={self.M}"


@dataclass(frozen=True)
class LambertLength(LengthDistribution):
    base: float
    d: int = 0
    family: ClassVar[str] = "lambert"

    def __post_init__(self) -> None:
        if not (isinstance(self.base, (int, float)) and math.isfinite(self.base) and self.base > 1):
            raise InputError(f"lambert: field 'base' must be a real number > 1, got {self.base!r}")
        _check_displacement(self.d, "lambert")

    @property
    def z(self) -> float:
        return 1.0 / self.base

    def mass(self, n: int) -> float:
        if n < self.d:
            return 0.0
        return (1.0 - self.z) * self.z ** (n - self.d)

    def tail(self, n: int) -> float:
        if n < self.d:
            return 1.0
        return self.z ** (n + 1 - self.d)

    def expectation(self) -> float:
        return self.d + 1.0 / (self.base - 1.0)

    def bound(self, eps: float) -> int:
        return max(0, _ceil(math.log(1.0 / eps) / math.log(self.base)) + self.d - 1)

    def sample(self, rng: RngStream) -> int:
        return self.d + rng.geometric(1.0 - self.z) - 1

    @property
    def descriptor(self) -> str:
        return f"lambert:base={self.base:g},d={self.d}"


@dataclass(frozen=True)
class DirichletLength(LengthDistribution):
    t: float
    d: int = 0
    family: ClassVar[str] = "dirichlet"

    def __post_init__(self) -> None:
        if not (isinstance(self.t, (int, float)) and math.isfinite(self.t) and self.t > 1):
            raise InputError(f"dirichlet: field 't' must be a real number > 1, got {self.t!r}")
        _check_displacement(self.d, "dirichlet")

    @cached_property
    def normalizer(self) -> ZetaValue:
        return zeta_relaxed(float(self.t), DIRICHLET_ZETA_TOL)

    def mass(self, n: int) -> float:
        if n < self.d:
            return 0.0
        return float(n + 1 - self.d) ** -self.t / self.normalizer.value

    def tail(self, n: int) -> float:
        if n < self.d:
            return 1.0
        partial = partial_zeta(float(self.t), n + 1 - self.d)
        return max(0.0, 1.0 - partial / self.normalizer.value)

    def expectation(self) -> float:
        if self.t <= 2:
            raise InfiniteExpectation(f"dirichlet with t={self.t:g} <= 2 has infinite expected length")
        num = zeta_relaxed(float(self.t) - 1.0, EXPECTATION_ZETA_TOL)
        return self.d + num.value / self.normalizer.value - 1.0

    def bound(self, eps: float) -> int:
        root = math.exp(math.log(1.0 / eps) / (self.t - 1.0))
        return max(0, _ceil(root) + self.d - 1)

    def sample(self, rng: RngStream) -> int:
        return self.d + rng.zipf(float(self.t)) - 1

    @property
    def descriptor(self) -> str:
        return f"dirichlet:t={self.t:g},d={self.d}"


def length_mass(dist: LengthDistribution, n: int) -> float:
    return dist.mass(n)


def probd(dist: LengthDistribution, m: int) -> float:
    return dist.mass(m)


def length_tail(dist: LengthDistribution, n: int) -> float:
    return dist.tail(n)


def expected_length(dist: LengthDistribution) -> float:
    return dist.expectation()


def maxlen(dist: LengthDistribution, eps: float) -> int:
    return dist.maxlen(eps)


# ─────────────────────────────────────────────────────────────────────────────
# Word distributions
# ─────────────────────────────────────────────────────────────────────────────

class WordDistribution:
    alphabet_size: int

    def word_prob(self, w: Sequence[int]) -> float:
        raise NotImplementedError

    def sample(self, rng: RngStream) -> Word:
        raise NotImplementedError


@dataclass(frozen=True)
class LengthBased(WordDistribution):
    length: LengthDistribution
    alphabet_size: int

    def __post_init__(self) -> None:
        if self.alphabet_size < 1:
            raise InputError(f"alphabet size must be >= 1, got {self.alphabet_size}")

    def word_prob(self, w: Sequence[int]) -> float:
        check_word(w, self.alphabet_size)
        n = len(w)
        return self.length.mass(n) * float(self.alphabet_size) ** -n

    def sample(self, rng: RngStream) -> Word:
        return rng.symbols(self.alphabet_size, self.length.sample(rng))


@dataclass(frozen=True)
class UniformFinite(WordDistribution):
    """Равномерное распределение на конечном языке ациклического ДКА."""
    acceptor: AdfaCertificate
    table: PathCountTable

    @classmethod
    def of(cls, acceptor: AdfaCertificate) -> UniformFinite:
        from src.sampling import count_paths

        return cls(acceptor=acceptor, table=count_paths(acceptor))

    @property
    def alphabet_size(self) -> int:  # type: ignore[override]
        return self.acceptor.alphabet_size

    @property
    def total_count(self) -> int:
        return self.table.total

    def word_prob(self, w: Sequence[int]) -> float:
        if self.total_count == 0 or not membership(self.acceptor.dfa, w):
            return 0.0
        return 1.0 / self.total_count

    def sample(self, rng: RngStream) -> Word:
        from src.sampling import adfa_uselect

        return adfa_uselect(self.acceptor, self.table, rng)


def word_prob(dist: WordDistribution, w: Sequence[int]) -> float:
    return dist.word_prob(w)


# ── augmented ───────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class AugmentedTable:
    """Исходы 0..M и None (⊥) с вероятностями mass(0..M), tail(M)."""
    cutoff: int
    outcomes: tuple[int | None, ...]
    probs: tuple[float, ...]

    @property
    def none_mass(self) -> float:
        return self.probs[-1]


def augment(dist: WordDistribution | LengthDistribution, cutoff: int) -> AugmentedTable:
    if isinstance(dist, LengthBased):
        length = dist.length
    elif isinstance(dist, LengthDistribution):
        length = dist
    else:
        raise InputError("augmentation needs a length-based distribution")
    if cutoff < 0:
        raise InputError(f"cutoff must be >= 0, got {cutoff}")
    probs = [length.mass(n) for n in range(cutoff + 1)]
    probs.append(length.tail(cutoff))
    outcomes: tuple[int | None, ...] = (*range(cutoff + 1), None)
    return AugmentedTable(cutoff=cutoff, outcomes=outcomes, probs=tuple(probs))


# ─────────────────────────────────────────────────────────────────────────────
# Descriptors  (uniform:M=5, lambert:base=2,d=0, dirichlet:t=3,d=1)
# ─────────────────────────────────────────────────────────────────────────────

_FIELDS = {
    "uniform":   ({"M"}, {"M"}),
    "lambert":   ({"base", "d"}, {"base"}),
    "dirichlet": ({"t", "d"}, {"t"}),
}


def _field_int(family: str, name: str, raw: str) -> int:
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"{family}: field '{name}' must be an integer, got {raw!r}") from None


def _field_real(family: str, name: str, raw: str) -> float:
    try:
        value = float(raw)
    except ValueError:
        raise InputError(f"{family}: field '{name}' must be a real number, got {raw!r}") from None
    return value


def parse_descriptor(text: str) -> LengthDistribution:
    family, sep, rest = text.strip().partition(":")
    family = family.strip().lower()
    if family not in _FIELDS:
        raise InputError(f"unknown distribution family {family!r} (expected uniform, lambert or dirichlet)")
    allowed, required = _FIELDS[family]

    fields: dict[str, str] = {}
    parts = [p.strip() for p in rest.split(",") if p.strip()] if sep else []
    for part in parts:
        name, eq, value = part.partition("=")
        name = name.strip()
        if not eq or not value.strip():
            raise InputError(f"{family}: field {name!r} has no value")
        if name not in allowed:
            raise InputError(f"{family}: unknown field {name!r} (allowed: {', '.join(sorted(allowed))})")
        fields[name] = value.strip()
    missing = sorted(required - fields.keys())
    if missing:
        raise InputError(f"{family}: missing field {missing[0]!r}")

    d = _field_int(family, "d", fields["d"]) if "d" in fields else 0
    if family == "uniform":
        return UniformLength(_field_int(family, "M", fields["M"]))
    if family == "lambert":
        return LambertLength(_field_real(family, "base", fields["base"]), d)
    return DirichletLength(_field_real(family, "t", fields["t"]), d)
