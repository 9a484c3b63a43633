"""PRAX-NFA — оценки индекса универсальности и алгоритмы PRAX/PAX.

Все PRAX-алгоритмы выходят на первом отвергнутом слове и возвращают его
как свидетеля. Формы со счётчиком (count_accepted) логически эквивалентны
и используются тестами для проверки концентрации.

Число испытаний считается в точных дробях:
  ⌈1/ε²⌉                      — подмножество ADFA, блочный, maxlen
  ⌈x/((x-4)(ε′-xε′²)²)⌉, x=5  — усечённое распределение (= ⌈5/(ε′-5ε′²)²⌉)
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Any

from src.automata import (
    AdfaCertificate,
    Dfa,
    Nfa,
    Word,
    certify_block,
    complement_dfa,
    union_nfa,
)
from src.distributions import (
    AugmentedTable,
    LengthBased,
    LengthDistribution,
    WordDistribution,
    augment,
)
from src.errors import EmptyLanguage, InputError, PraxError, ResourceLimit
from src.rng import RngStream
from src.sampling import (
    adfa_uselect,
    coin_parameters,
    count_paths,
    select_by_coins,
    uselect,
)

logger = logging.getLogger("prax.estimators")

SCHEMA_VERSION = 1
DEFAULT_EPS_CAP = Fraction(1, 6)
DEFAULT_MARKOV_X = 5
DEFAULT_RESIDUAL_TOLERANCE = 1e-9
DEFAULT_MAX_CUTOFF = 1_000_000

Draw = Callable[[], "Word | None"]


# ─────────────────────────────────────────────────────────────────────────────
# Types
# ─────────────────────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class Tolerance:
    eps: float

    def __post_init__(self) -> None:
        if not 0 < self.eps < 1:
            raise InputError(f"tolerance must lie in (0, 1), got {self.eps}")

    @property
    def exact(self) -> Fraction:
        approx = Fraction(self.eps).limit_denominator(10 ** 12)
        # очень малые ε округляются в 0 — берём точное значение double
        return approx if approx else Fraction(self.eps)

    @classmethod
    def of(cls, value: Tolerance | float | Fraction | str) -> Tolerance:
        if isinstance(value, Tolerance):
            return value
        try:
            return cls(float(Fraction(value)) if isinstance(value, str) else float(value))
        except (ValueError, ZeroDivisionError):
            raise InputError(f"tolerance must be a number in (0, 1), got {value!r}") from None


@dataclass(frozen=True)
class EstimateReport:
    """Результат одного запуска. witness задан только при verdict = False."""
    verdict: bool | float
    trials: int
    cutoff: int | None = None
    seed: int | None = None
    witness: Word | None = None
    repetitions: int = 1
    algorithm: str = ""

    def to_dict(self) -> dict[str, Any]:
        return {
            "schema": SCHEMA_VERSION,
            "algorithm": self.algorithm,
            "verdict": self.verdict,
            "n": self.trials,
            "M": self.cutoff,
            "seed": self.seed,
            "witness": None if self.witness is None else list(self.witness),
            "repetitions": self.repetitions,
        }


# ─────────────────────────────────────────────────────────────────────────────
# Trial counts and bounds
# ─────────────────────────────────────────────────────────────────────────────

def trials_chebyshev(eps: Tolerance | float | Fraction) -> int:
    """⌈1/ε²⌉: при индексе < 1-ε вероятность ложного true ≤ 1/4."""
    e = Tolerance.of(eps).exact
    return math.ceil(1 / (e * e))


def trials_truncated(eps: Tolerance | float | Fraction, markov_x: int = DEFAULT_MARKOV_X) -> int:
    """Наименьшее n с 1/x + 1/(4n(ε-xε²)²) ≤ 1/4."""
    e = Tolerance.of(eps).exact
    gap = e - markov_x * e * e
    if markov_x <= 4 or gap <= 0:
        raise InputError(f"truncated trial count needs x > 4 and eps < 1/x, got x={markov_x} eps={e}")
    return math.ceil(Fraction(markov_x, markov_x - 4) / (gap * gap))


def chebyshev_tail_bound(n: int, p: float, g: float) -> float:
    """P(Cnt/n ≥ p) ≤ 1/(4n(p-g)²) при индексе < g < p."""
    if not g < p:
        raise InputError(f"bound needs g < p, got g={g} p={p}")
    return 1.0 / (4 * n * (p - g) ** 2)


def truncated_tail_bound(n: int, p: float, g: float, tail: float, x: float) -> float:
    """Та же оценка для усечённого распределения: 1/x + 1/(4n(p-g-x·tail)²)."""
    if not g < p:
        raise InputError(f"bound needs g < p, got g={g} p={p}")
    if tail > 0 and not 1 < x < (p - g) / tail:
        raise InputError(f"x must lie in (1, {(p - g) / tail:g}), got {x}")
    return 1.0 / x + 1.0 / (4 * n * (p - g - x * tail) ** 2)


def chernoff_bound(n: int, eps: float) -> float:
    """Двусторонняя оценка Чернова; только для сравнения с Чебышёвым."""
    return math.exp(-n * eps * eps / 2) + math.exp(-n * eps * eps / 3)


# ─────────────────────────────────────────────────────────────────────────────
# Sampling loops
# ─────────────────────────────────────────────────────────────────────────────

def _check_alphabet(a: Nfa, s: int) -> None:
    if a.alphabet_size != s:
        raise InputError(f"automaton alphabet size {a.alphabet_size} does not match sampler alphabet size {s}")


def count_accepted(a: Nfa, draw: Draw, n: int) -> int:
    """Cnt: сколько из n выборок приняты (None считается принятым)."""
    if n < 1:
        raise InputError(f"trial count must be >= 1, got {n}")
    cnt = 0
    for _ in range(n):
        w = draw()
        if w is None or a.accepts(w):
            cnt += 1
    return cnt


def first_rejection(a: Nfa, draw: Draw, n: int) -> Word | None:
    for _ in range(n):
        w = draw()
        if w is not None and not a.accepts(w):
            return w
    return None


def _augmented_draw(table: AugmentedTable, s: int, rng: RngStream) -> Draw:
    params = coin_parameters(table.probs)

    def draw() -> Word | None:
        length = select_by_coins(table.outcomes, params, rng)
        return None if length is None else uselect(s, length, rng)

    return draw


def _finish(
    name: str, witness: Word | None, n: int, rng: RngStream | None, cutoff: int | None = None,
) -> EstimateReport:
    report = EstimateReport(
        verdict=witness is None,
        trials=n,
        cutoff=cutoff,
        seed=None if rng is None else rng.seed,
        witness=witness,
        algorithm=name,
    )
    logger.info("%s: verdict=%s n=%d M=%s", name, report.verdict, n, cutoff)
    return report


# ─────────────────────────────────────────────────────────────────────────────
# Index estimates
# ─────────────────────────────────────────────────────────────────────────────

def ui_estim(dist: WordDistribution, a: Nfa, n: int, rng: RngStream) -> float:
    _check_alphabet(a, dist.alphabet_size)
    return count_accepted(a, lambda: dist.sample(rng), n) / n


def ui_estim_ml(dist: LengthBased, a: Nfa, n: int, cutoff: int, rng: RngStream) -> float:
    """Cnt/n по усечённому распределению: None и слова из L(a) ∩ Σ^{≤M}."""
    _check_alphabet(a, dist.alphabet_size)
    draw = _augmented_draw(augment(dist, cutoff), dist.alphabet_size, rng)
    return count_accepted(a, draw, n) / n


# ─────────────────────────────────────────────────────────────────────────────
# PRAX algorithms
# ─────────────────────────────────────────────────────────────────────────────

def prax_adfa_subset_nfa(
    a: Nfa, b: AdfaCertificate, eps: Tolerance | float, rng: RngStream,
) -> EstimateReport:
    """L(b) ⊆ L(a) приблизительно: равномерные слова из L(b)."""
    _check_alphabet(a, b.alphabet_size)
    table = count_paths(b)
    n = trials_chebyshev(eps)
    logger.debug("prax-subset: |L(b)|=%d n=%d", table.total, n)
    if table.total == 0:
        raise EmptyLanguage("acyclic DFA accepts no word")
    witness = first_rejection(a, lambda: adfa_uselect(b, table, rng), n)
    return _finish("prax-subset", witness, n, rng)


def prax_fixed_length(a: Nfa, length: int, eps: Tolerance | float, rng: RngStream) -> EstimateReport:
    """Σ^ℓ ⊆ L(a) приблизительно; блочность a не требуется."""
    if length < 0:
        raise InputError(f"length must be >= 0, got {length}")
    s = a.alphabet_size
    n = trials_chebyshev(eps)
    witness = first_rejection(a, lambda: uselect(s, length, rng), n)
    return _finish("prax-fixed-length", witness, n, rng, cutoff=length)


def prax_block_univ(a: Nfa, eps: Tolerance | float, rng: RngStream) -> EstimateReport:
    cert = certify_block(a)
    logger.debug("prax-block: block length %d", cert.word_length)
    report = prax_fixed_length(a, cert.word_length, eps, rng)
    return replace(report, algorithm="prax-block", cutoff=None)


def uniform_upto_lengths(alphabet_size: int, length: int) -> tuple[float, ...]:
    """(s⁰/t, …, s^ℓ/t), t = 1+s+…+s^ℓ, без больших целых."""
    s = float(alphabet_size)
    if alphabet_size == 1:
        return tuple(1.0 / (length + 1) for _ in range(length + 1))
    norm = 1.0 - s ** -(length + 1)
    return tuple((s - 1.0) * s ** (i - length - 1) / norm for i in range(length + 1))


def prax_maxlen_univ(
    a: Nfa,
    length: int,
    eps: Tolerance | float,
    rng: RngStream,
    *,
    max_length: int = 1_000_000,
) -> EstimateReport:
    """Σ^{≤ℓ} ⊆ L(a) приблизительно, равномерно на Σ^{≤ℓ}."""
    if length < 0:
        raise InputError(f"length must be >= 0, got {length}")
    if length > max_length:
        raise InputError(f"length {length} exceeds the configured bound {max_length}")
    s = a.alphabet_size
    n = trials_chebyshev(eps)

    # длинные слова вероятнее, поэтому монеты идут от ℓ вниз
    probs = uniform_upto_lengths(s, length)[::-1]
    lengths = tuple(range(length, -1, -1))
    params = coin_parameters(probs)

    def draw() -> Word:
        return uselect(s, select_by_coins(lengths, params, rng), rng)

    witness = first_rejection(a, draw, n)
    return _finish("prax-maxlen", witness, n, rng, cutoff=length)


def prax_univ(
    a: Nfa,
    eps: Tolerance | float,
    dist: LengthDistribution,
    rng: RngStream,
    *,
    eps_cap: Fraction = DEFAULT_EPS_CAP,
    markov_x: int = DEFAULT_MARKOV_X,
    residual_tolerance: float = DEFAULT_RESIDUAL_TOLERANCE,
    max_length: int = DEFAULT_MAX_CUTOFF,
) -> EstimateReport:
    """Универсальность относительно length-based распределения из сэмплов W^M."""
    e = min(Tolerance.of(eps).exact, eps_cap)
    if not 1 / e > markov_x:
        raise InputError(f"effective tolerance {e} must be below 1/{markov_x}")
    n = trials_truncated(e, markov_x)
    # bound() — замкнутая оценка снизу для maxlen, проверяем до перебора хвостов
    if dist.bound(float(e * e)) > max_length:
        raise ResourceLimit(
            f"cutoff for {dist.descriptor} at eps'={e} exceeds the configured bound {max_length}"
        )
    cutoff = dist.maxlen(float(e * e))
    if cutoff > max_length:
        raise ResourceLimit(f"cutoff {cutoff} exceeds the configured bound {max_length}")

    table = augment(dist, cutoff)
    residual = 1.0 - math.fsum(table.probs[:-1])
    if abs(residual - table.none_mass) > residual_tolerance:
        raise PraxError(
            f"tail {table.none_mass!r} and residual {residual!r} differ by more than {residual_tolerance:g}"
        )
    logger.debug("prax-univ: eps'=%s n=%d M=%d tail=%.3g (%s)",
                 e, n, cutoff, table.none_mass, dist.descriptor)

    witness = first_rejection(a, _augmented_draw(table, a.alphabet_size, rng), n)
    return _finish("prax-univ", witness, n, rng, cutoff=cutoff)


def pax_unary_univ(
    a: Nfa,
    eps: Tolerance | float,
    dist: LengthDistribution,
    *,
    max_length: int = 1_000_000,
) -> EstimateReport:
    """Детерминированно: Σ₁^{≤M} ⊆ L(a), M = maxlen(ε)."""
    if a.alphabet_size != 1:
        raise InputError(f"unary check needs alphabet size 1, got {a.alphabet_size}")
    cutoff = dist.maxlen(Tolerance.of(eps).eps)
    if cutoff > max_length:
        raise ResourceLimit(f"cutoff {cutoff} exceeds the configured bound {max_length}")

    frontier = a.start
    witness: Word | None = None
    checked = 0
    for length in range(cutoff + 1):
        checked += 1
        if frontier.isdisjoint(a.finals):
            witness = (0,) * length
            break
        frontier = a.step(frontier, 0)
    return _finish("pax-unary", witness, checked, None, cutoff=cutoff)


# ─────────────────────────────────────────────────────────────────────────────
# Amplification and emptiness
# ─────────────────────────────────────────────────────────────────────────────

def amplify(
    run: Callable[[RngStream], EstimateReport], k: int, rng: RngStream,
) -> EstimateReport:
    """k повторов на одном потоке; первое false завершает."""
    if k < 1:
        raise InputError(f"repetitions must be >= 1, got {k}")
    report: EstimateReport | None = None
    for i in range(1, k + 1):
        report = run(rng)
        if report.verdict is False:
            logger.info("amplify: false at repetition %d of %d", i, k)
            return replace(report, repetitions=i)
    assert report is not None
    return replace(report, repetitions=k)


def prax_emptiness(
    ds: Sequence[Dfa],
    eps: Tolerance | float,
    mode: int | LengthDistribution,
    rng: RngStream,
    **univ_options: Any,
) -> EstimateReport:
    """∩ L(dᵢ) ε-пусто ⇔ ∪ (Σ* \\ L(dᵢ)) (1-ε)-универсально.

    mode — длина блока ℓ (равномерно на Σ^ℓ) или распределение длин.
    Свидетель false лежит во всех L(dᵢ).
    """
    union = union_nfa([complement_dfa(d) for d in ds])
    logger.debug("emptiness: %d DFAs, union of complements has %d states", len(ds), union.num_states)
    if isinstance(mode, LengthDistribution):
        report = prax_univ(union, eps, mode, rng, **univ_options)
    else:
        report = prax_fixed_length(union, mode, eps, rng)
    return replace(report, algorithm="emptiness")
