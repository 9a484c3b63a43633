"""PRAX-NFA — текстовый формат автоматов.

Формат (один автомат на файл):

    nfa s=<int> states=<int>
    start: <id ...>
    final: <id ...>
    <from> <symbol> <to>
    ...

`#` начинает комментарий. После заголовка порядок строк не важен.
"""

from __future__ import annotations

import logging
import re
from pathlib import Path

from src.automata import Dfa, Nfa, Transition
from src.errors import InputError

logger = logging.getLogger("prax.automata_io")

_RE_HEADER = re.compile(r"^nfa\s+s=(\d+)\s+states=(\d+)$")


def _int_list(text: str, where: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split()]
    except ValueError:
        raise InputError(f"{where}: expected state ids, got {text.strip()!r}") from None


def parse_automaton(text: str, *, source: str = "<string>") -> Nfa:
    header: tuple[int, int] | None = None
    start: set[int] = set()
    finals: set[int] = set()
    transitions: set[Transition] = set()

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        where = f"{source}:{lineno}"

        if header is None:
            m = _RE_HEADER.match(" ".join(line.split()))
            if m is None:
                raise InputError(f"{where}: expected header 'nfa s=<int> states=<int>', got {line!r}")
            header = (int(m.group(1)), int(m.group(2)))
            continue

        if line.startswith("start:"):
            start.update(_int_list(line[len("start:"):], where))
        elif line.startswith("final:"):
            finals.update(_int_list(line[len("final:"):], where))
        else:
            fields = _int_list(line, where)
            if len(fields) != 3:
                raise InputError(f"{where}: transition needs '<from> <symbol> <to>', got {line!r}")
            transitions.add((fields[0], fields[1], fields[2]))

    if header is None:
        raise InputError(f"{source}: missing 'nfa' header")
    s, q = header
    try:
        return Nfa(s, q, start, finals, transitions)
    except InputError as e:
        raise InputError(f"{source}: {e}") from None


def format_automaton(a: Nfa) -> str:
    lines = [
        f"nfa s={a.alphabet_size} states={a.num_states}",
        "start: " + " ".join(str(q) for q in sorted(a.start)),
        "final: " + " ".join(str(q) for q in sorted(a.finals)),
    ]
    lines.extend(f"{p} {sym} {r}" for p, sym, r in sorted(a.transitions))
    return "\n".join(line.rstrip() for line in lines) + "\n"


def _read(path: str | Path) -> str:
    p = Path(path)
    try:
        return p.read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"cannot read {p}: {e.strerror or e}") from None
    except UnicodeDecodeError as e:
        raise InputError(f"{p}: not UTF-8 text (byte {e.start})") from None


def load_nfa(path: str | Path) -> Nfa:
    a = parse_automaton(_read(path), source=str(path))
    logger.debug("Loaded %s: s=%d states=%d transitions=%d",
                 path, a.alphabet_size, a.num_states, len(a.transitions))
    return a


def load_dfa(path: str | Path) -> Dfa:
    a = load_nfa(path)
    try:
        return Dfa.from_nfa(a)
    except InputError as e:
        raise InputError(f"{path}: {e}") from None


def save_automaton(a: Nfa, path: str | Path) -> None:
    Path(path).write_text(format_automaton(a), encoding="utf-8")
