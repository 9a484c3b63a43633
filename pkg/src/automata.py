"""PRAX-NFA — представление автоматов, проверка принадлежности и
линейные конструкции (дополнение ДКА, объединение в НКА).

Состояния — плотные целые 0..Q-1, символы — 0..s-1, ε-переходов нет.
Автоматы неизменяемы после построения, чтение потокобезопасно.
"""

from __future__ import annotations

import logging
from collections import deque
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

from src.errors import EmptyLanguage, InputError, NotAcyclic, NotBlock

logger = logging.getLogger("prax.automata")

Word = tuple[int, ...]
Transition = tuple[int, int, int]


# ─────────────────────────────────────────────────────────────────────────────
# Types
# ─────────────────────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class Nfa:
    """НКА с множеством стартовых состояний."""
    alphabet_size: int
    num_states: int
    start: frozenset[int]
    finals: frozenset[int]
    transitions: frozenset[Transition]
    # (state) → {symbol → цели}; строится в __post_init__
    _succ: tuple[dict[int, tuple[int, ...]], ...] = field(
        init=False, repr=False, compare=False,
    )

    def __post_init__(self) -> None:
        object.__setattr__(self, "start", frozenset(self.start))
        object.__setattr__(self, "finals", frozenset(self.finals))
        object.__setattr__(self, "transitions", frozenset(tuple(t) for t in self.transitions))

        if self.alphabet_size < 1:
            raise InputError(f"alphabet size must be >= 1, got {self.alphabet_size}")
        if self.num_states < 0:
            raise InputError(f"negative state count {self.num_states}")
        q = self.num_states
        for name, ids in (("start", self.start), ("final", self.finals)):
            bad = [i for i in ids if not 0 <= i < q]
            if bad:
                raise InputError(f"{name} state ids out of range: {sorted(bad)}")

        succ: list[dict[int, list[int]]] = [{} for _ in range(q)]
        for p, sym, r in self.transitions:
            if not (0 <= p < q and 0 <= r < q):
                raise InputError(f"transition ({p}, {sym}, {r}) has an endpoint outside 0..{q - 1}")
            if not 0 <= sym < self.alphabet_size:
                raise InputError(f"transition ({p}, {sym}, {r}) uses symbol outside 0..{self.alphabet_size - 1}")
            succ[p].setdefault(sym, []).append(r)
        frozen = tuple({sym: tuple(sorted(ts)) for sym, ts in sorted(d.items())} for d in succ)
        object.__setattr__(self, "_succ", frozen)

    @property
    def size(self) -> int:
        """‖A‖ = число состояний + число переходов."""
        return self.num_states + len(self.transitions)

    def successors(self, state: int, symbol: int) -> tuple[int, ...]:
        return self._succ[state].get(symbol, ())

    def out_edges(self, state: int) -> Iterable[tuple[int, int]]:
        """Пары (symbol, target) в детерминированном порядке."""
        for sym, targets in self._succ[state].items():
            for r in targets:
                yield sym, r

    def step(self, frontier: frozenset[int], symbol: int) -> frozenset[int]:
        nxt: set[int] = set()
        for p in frontier:
            nxt.update(self._succ[p].get(symbol, ()))
        return frozenset(nxt)

    def accepts(self, word: Sequence[int]) -> bool:
        return membership(self, word)


@dataclass(frozen=True)
class Dfa(Nfa):
    """ДКА: один старт, не более одного перехода на (state, symbol). Может быть неполным."""

    def __post_init__(self) -> None:
        super().__post_init__()
        if len(self.start) != 1:
            raise InputError(f"a DFA needs exactly one start state, got {len(self.start)}")
        for state, by_symbol in enumerate(self._succ):
            for sym, targets in by_symbol.items():
                if len(targets) > 1:
                    raise InputError(f"nondeterministic transitions from state {state} on symbol {sym}")

    @classmethod
    def from_nfa(cls, a: Nfa) -> Dfa:
        return cls(a.alphabet_size, a.num_states, a.start, a.finals, a.transitions)

    @property
    def start_state(self) -> int:
        return next(iter(self.start))

    def delta(self, state: int, symbol: int) -> int | None:
        targets = self._succ[state].get(symbol)
        return targets[0] if targets else None


@dataclass(frozen=True)
class AdfaCertificate:
    """ДКА + топологический порядок достижимых состояний (язык конечен)."""
    dfa: Dfa
    topo_order: tuple[int, ...]

    @property
    def alphabet_size(self) -> int:
        return self.dfa.alphabet_size


@dataclass(frozen=True)
class BlockCertificate:
    """Обрезанный блочный НКА: все принимаемые слова имеют длину word_length."""
    nfa: Nfa
    word_length: int
    level: dict[int, int] = field(compare=False)


# ─────────────────────────────────────────────────────────────────────────────
# Operations
# ─────────────────────────────────────────────────────────────────────────────

def check_word(word: Sequence[int], alphabet_size: int) -> None:
    for i, sym in enumerate(word):
        if not 0 <= sym < alphabet_size:
            raise InputError(f"symbol {sym} at position {i} is outside 0..{alphabet_size - 1}")


def membership(a: Nfa, word: Sequence[int]) -> bool:
    """w ∈ L(a) за O(|w|·‖a‖) моделированием фронта подмножеств."""
    check_word(word, a.alphabet_size)
    frontier = a.start
    for sym in word:
        frontier = a.step(frontier, sym)
        if not frontier:
            return False
    return not frontier.isdisjoint(a.finals)


def _reachable(a: Nfa, sources: Iterable[int]) -> set[int]:
    seen = set(sources)
    queue = deque(seen)
    while queue:
        p = queue.popleft()
        for _, r in a.out_edges(p):
            if r not in seen:
                seen.add(r)
                queue.append(r)
    return seen


def _coreachable(a: Nfa, targets: Iterable[int]) -> set[int]:
    pred: dict[int, list[int]] = {}
    for p, _, r in a.transitions:
        pred.setdefault(r, []).append(p)
    seen = set(targets)
    queue = deque(seen)
    while queue:
        r = queue.popleft()
        for p in pred.get(r, ()):
            if p not in seen:
                seen.add(p)
                queue.append(p)
    return seen


def certify_acyclic(d: Dfa) -> AdfaCertificate:
    """Топологическая сортировка достижимой части; недостижимые циклы не мешают."""
    reachable = _reachable(d, d.start)
    indegree = {q: 0 for q in reachable}
    for p, _, r in d.transitions:
        if p in reachable:
            indegree[r] += 1

    order: list[int] = []
    queue = deque(sorted(q for q, deg in indegree.items() if deg == 0))
    while queue:
        p = queue.popleft()
        order.append(p)
        for _, r in d.out_edges(p):
            indegree[r] -= 1
            if indegree[r] == 0:
                queue.append(r)

    if len(order) != len(reachable):
        cyclic = sorted(q for q, deg in indegree.items() if deg > 0)
        raise NotAcyclic(f"reachable cycle through states {cyclic}")
    return AdfaCertificate(dfa=d, topo_order=tuple(order))


def certify_block(a: Nfa) -> BlockCertificate:
    """Обрезать a и разметить уровни BFS; успех, если все слова одной длины."""
    useful = _reachable(a, a.start) & _coreachable(a, a.finals)
    if not useful:
        raise EmptyLanguage("automaton accepts no word")

    relabel = {q: i for i, q in enumerate(sorted(useful))}
    trimmed = Nfa(
        alphabet_size=a.alphabet_size,
        num_states=len(relabel),
        start={relabel[q] for q in a.start if q in useful},
        finals={relabel[q] for q in a.finals if q in useful},
        transitions={
            (relabel[p], sym, relabel[r])
            for p, sym, r in a.transitions
            if p in useful and r in useful
        },
    )

    level = {q: 0 for q in trimmed.start}
    queue = deque(sorted(trimmed.start))
    while queue:
        p = queue.popleft()
        for sym, r in trimmed.out_edges(p):
            if r not in level:
                level[r] = level[p] + 1
                queue.append(r)
            elif level[r] != level[p] + 1:
                raise NotBlock(
                    f"state reached at depths {level[r]} and {level[p] + 1} "
                    f"(transition on symbol {sym})"
                )

    lengths = {level[f] for f in trimmed.finals}
    if len(lengths) != 1:
        raise NotBlock(f"accepted words have lengths {sorted(lengths)}")
    return BlockCertificate(nfa=trimmed, word_length=lengths.pop(), level=level)


def complement_dfa(d: Dfa) -> Dfa:
    """ДКА для Σ* \\ L(d): дополнить стоком и инвертировать финальные."""
    s = d.alphabet_size
    sink = d.num_states
    transitions = set(d.transitions)
    missing = False
    for q in range(d.num_states):
        for sym in range(s):
            if d.delta(q, sym) is None:
                transitions.add((q, sym, sink))
                missing = True
    num_states = d.num_states
    if missing:
        num_states += 1
        transitions.update((sink, sym, sink) for sym in range(s))
    finals = set(range(num_states)) - set(d.finals)
    return Dfa(s, num_states, d.start, finals, transitions)


def union_nfa(ds: Sequence[Nfa]) -> Nfa:
    """Дизъюнктное объединение: L = ∪ L(dᵢ), линейное время, без ε-переходов."""
    if not ds:
        raise InputError("union of an empty list of automata")
    s = ds[0].alphabet_size
    mixed = sorted({d.alphabet_size for d in ds})
    if len(mixed) > 1:
        raise InputError(f"mixed alphabet sizes {mixed}")

    start: set[int] = set()
    finals: set[int] = set()
    transitions: set[Transition] = set()
    offset = 0
    for d in ds:
        start.update(q + offset for q in d.start)
        finals.update(q + offset for q in d.finals)
        transitions.update((p + offset, sym, r + offset) for p, sym, r in d.transitions)
        offset += d.num_states
    return Nfa(s, offset, start, finals, transitions)


# ─────────────────────────────────────────────────────────────────────────────
# Builders
# ─────────────────────────────────────────────────────────────────────────────

def universal_nfa(alphabet_size: int) -> Dfa:
    """Σ*: одно состояние, стартовое и финальное, с петлями."""
    loops = {(0, sym, 0) for sym in range(alphabet_size)}
    return Dfa(alphabet_size, 1, {0}, {0}, loops)


def empty_nfa(alphabet_size: int) -> Dfa:
    return Dfa(alphabet_size, 1, {0}, set(), set())


def fixed_length_nfa(alphabet_size: int, length: int) -> Dfa:
    """Σ^ℓ — цепочка из ℓ+1 состояний."""
    transitions = {(i, sym, i + 1) for i in range(length) for sym in range(alphabet_size)}
    return Dfa(alphabet_size, length + 1, {0}, {length}, transitions)


def upto_length_nfa(alphabet_size: int, length: int) -> Dfa:
    """Σ^{≤ℓ}."""
    transitions = {(i, sym, i + 1) for i in range(length) for sym in range(alphabet_size)}
    return Dfa(alphabet_size, length + 1, {0}, set(range(length + 1)), transitions)


def prefix_nfa(alphabet_size: int, prefix: Sequence[int]) -> Dfa:
    """prefix·Σ*."""
    check_word(prefix, alphabet_size)
    n = len(prefix)
    transitions = {(i, sym, i + 1) for i, sym in enumerate(prefix)}
    transitions.update((n, sym, n) for sym in range(alphabet_size))
    return Dfa(alphabet_size, n + 1, {0}, {n}, transitions)


def word_set_nfa(alphabet_size: int, words: Iterable[Sequence[int]]) -> Dfa:
    """Префиксное дерево конечного множества слов (ациклический ДКА)."""
    ids: dict[Word, int] = {(): 0}
    transitions: set[Transition] = set()
    finals: set[int] = set()
    for w in sorted({tuple(w) for w in words}):
        check_word(w, alphabet_size)
        for i in range(len(w)):
            head, nxt = w[:i], w[:i + 1]
            if nxt not in ids:
                ids[nxt] = len(ids)
            transitions.add((ids[head], w[i], ids[nxt]))
        finals.add(ids[w])
    return Dfa(alphabet_size, len(ids), {0}, finals, transitions)
