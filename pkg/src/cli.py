"""PRAX-NFA — точка входа командной строки.

  python -m src prax-block --nfa a.nfa --eps 0.02 --seed 7

stdout — один JSON-объект (или слова для `sample`), stderr — логи и ошибки.
Коды выхода: 0 — true, 1 — false, 2 — ошибка ввода.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, NoReturn

from src import __version__, oracle
from src.automata import AdfaCertificate, Word, certify_acyclic, certify_block
from src.automata_io import format_automaton, load_dfa, load_nfa, save_automaton
from src.config import AppConfig, apply_env_overrides, load_config
from src.distributions import LengthBased, LengthDistribution, augment, parse_descriptor
from src.errors import InputError, PraxError
from src.estimators import (
    SCHEMA_VERSION,
    EstimateReport,
    Tolerance,
    amplify,
    pax_unary_univ,
    prax_adfa_subset_nfa,
    prax_block_univ,
    prax_emptiness,
    prax_maxlen_univ,
    prax_univ,
)
from src.log import setup_logging
from src.reduction import DeltaBits, reduce_to_threshold
from src.rng import RngStream, fresh_seed
from src.sampling import sample_augmented

logger = logging.getLogger("prax.cli")

EXIT_TRUE = 0
EXIT_FALSE = 1
EXIT_ERROR = 2

NONE_WORD = "⊥"
EMPTY_WORD = "ε"


class _Parser(argparse.ArgumentParser):
    """Ошибки разбора превращаются в InputError, а не в sys.exit(2) с usage."""

    def error(self, message: str) -> NoReturn:
        raise InputError(message)


@dataclass
class RunConfig:
    command: str
    cfg: AppConfig
    seed: int
    eps: Tolerance | None = None
    dist: LengthDistribution | None = None
    amplify: int = 1
    args: argparse.Namespace | None = None

    @classmethod
    def from_args(cls, args: argparse.Namespace, cfg: AppConfig) -> RunConfig:
        seed = args.seed if getattr(args, "seed", None) is not None else fresh_seed()
        eps = Tolerance.of(args.eps) if getattr(args, "eps", None) is not None else None
        dist = parse_descriptor(args.dist) if getattr(args, "dist", None) else None
        k = getattr(args, "amplify", 1)
        if k < 1:
            raise InputError(f"--amplify must be >= 1, got {k}")
        return cls(command=args.command, cfg=cfg, seed=seed, eps=eps, dist=dist, amplify=k, args=args)

    def rng(self) -> RngStream:
        return RngStream(self.seed)

    def require_eps(self) -> Tolerance:
        if self.eps is None:
            raise InputError(f"{self.command}: --eps is required")
        return self.eps

    def require_dist(self) -> LengthDistribution:
        if self.dist is None:
            raise InputError(f"{self.command}: --dist is required")
        return self.dist


# ─────────────────────────────────────────────────────────────────────────────
# Output helpers
# ─────────────────────────────────────────────────────────────────────────────

def format_word(w: Word | None, alphabet_size: int) -> str:
    if w is None:
        return NONE_WORD
    if not w:
        return EMPTY_WORD
    sep = "" if alphabet_size <= 10 else " "
    return sep.join(str(sym) for sym in w)


def format_decimal(x: float | Fraction) -> str:
    """15 значащих цифр; целые — с «.0» (1 → "1.0")."""
    text = format(float(x), ".15g")
    if text.lstrip("-").isdigit():
        text += ".0"
    return text


def _emit(obj: dict[str, Any]) -> None:
    print(json.dumps(obj, ensure_ascii=False))


def _header(rc: RunConfig, *, seeded: bool = True) -> dict[str, Any]:
    head: dict[str, Any] = {"schema": SCHEMA_VERSION, "version": __version__, "command": rc.command}
    if seeded:
        head["seed"] = rc.seed
    return head


def _emit_report(rc: RunConfig, report: EstimateReport, **extra: Any) -> int:
    obj = _header(rc, seeded=report.seed is not None)
    obj.update(report.to_dict())
    obj.update(extra)
    _emit(obj)
    return EXIT_TRUE if report.verdict else EXIT_FALSE


def _emit_error(kind: str, message: str) -> None:
    print(json.dumps({"error": kind, "message": message}, ensure_ascii=False), file=sys.stderr)


def _run_prax(rc: RunConfig, algorithm: Callable[[RngStream], EstimateReport]) -> EstimateReport:
    rng = rc.rng()
    if rc.amplify == 1:
        return algorithm(rng)
    return amplify(algorithm, rc.amplify, rng)


def _univ_options(cfg: AppConfig) -> dict[str, Any]:
    return {
        "eps_cap": cfg.estimators.eps_cap_fraction(),
        "markov_x": cfg.estimators.markov_x,
        "residual_tolerance": cfg.estimators.residual_tolerance,
        "max_length": cfg.limits.max_cutoff,
    }


def _load_adfa(path: str) -> AdfaCertificate:
    return certify_acyclic(load_dfa(path))


# ─────────────────────────────────────────────────────────────────────────────
# Subcommands
# ─────────────────────────────────────────────────────────────────────────────

def cmd_sample(rc: RunConfig) -> int:
    args = rc.args
    dist = LengthBased(rc.require_dist(), args.alphabet)
    if args.n < 0:
        raise InputError(f"--n must be >= 0, got {args.n}")
    rng = rc.rng()
    logger.info("sample: %s s=%d cutoff=%s n=%d seed=%d",
                dist.length.descriptor, args.alphabet, args.cutoff, args.n, rc.seed)
    print(f"# seed={rc.seed}", file=sys.stderr)
    if args.cutoff is None:
        words = [dist.sample(rng) for _ in range(args.n)]
    else:
        table = augment(dist, args.cutoff)
        words = [sample_augmented(dist, args.cutoff, rng, table=table) for _ in range(args.n)]
    for w in words:
        print(format_word(w, args.alphabet))
    return EXIT_TRUE


def cmd_prax_subset(rc: RunConfig) -> int:
    a = load_nfa(rc.args.nfa)
    b = _load_adfa(rc.args.adfa)
    eps = rc.require_eps()
    return _emit_report(rc, _run_prax(rc, lambda rng: prax_adfa_subset_nfa(a, b, eps, rng)))


def cmd_prax_block(rc: RunConfig) -> int:
    a = load_nfa(rc.args.nfa)
    eps = rc.require_eps()
    return _emit_report(rc, _run_prax(rc, lambda rng: prax_block_univ(a, eps, rng)))


def cmd_prax_maxlen(rc: RunConfig) -> int:
    a = load_nfa(rc.args.nfa)
    eps = rc.require_eps()
    bound = rc.cfg.limits.max_unary_length
    length = rc.args.len
    return _emit_report(rc, _run_prax(
        rc, lambda rng: prax_maxlen_univ(a, length, eps, rng, max_length=bound),
    ))


def cmd_prax_univ(rc: RunConfig) -> int:
    a = load_nfa(rc.args.nfa)
    eps = rc.require_eps()
    dist = rc.require_dist()
    options = _univ_options(rc.cfg)
    report = _run_prax(rc, lambda rng: prax_univ(a, eps, dist, rng, **options))
    return _emit_report(rc, report, dist=dist.descriptor)


def cmd_pax_unary(rc: RunConfig) -> int:
    a = load_nfa(rc.args.nfa)
    dist = rc.require_dist()
    report = pax_unary_univ(a, rc.require_eps(), dist, max_length=rc.cfg.limits.max_unary_length)
    return _emit_report(rc, report, dist=dist.descriptor)


def cmd_emptiness(rc: RunConfig) -> int:
    paths = [p for p in rc.args.dfas.split(",") if p.strip()]
    if not paths:
        raise InputError("--dfas needs at least one file")
    ds = [load_dfa(p.strip()) for p in paths]
    eps = rc.require_eps()
    if (rc.dist is None) == (rc.args.len is None):
        raise InputError("emptiness: give exactly one of --dist or --len")
    mode: int | LengthDistribution = rc.dist if rc.dist is not None else rc.args.len
    options = _univ_options(rc.cfg) if rc.dist is not None else {}
    report = _run_prax(rc, lambda rng: prax_emptiness(ds, eps, mode, rng, **options))
    return _emit_report(rc, report)


def cmd_oracle(rc: RunConfig) -> int:
    args = rc.args
    a = load_nfa(args.nfa)
    limits = rc.cfg.limits
    obj = _header(rc, seeded=False)
    obj["mode"] = args.mode

    if args.mode == "block":
        obj["index"] = format_decimal(oracle.exact_index_block(a, max_subsets=limits.max_subset_states))
    elif args.mode == "upto":
        if args.len is None:
            raise InputError("oracle --mode upto needs --len")
        obj["index"] = format_decimal(
            oracle.exact_index_upto(a, args.len, max_subsets=limits.max_subset_states))
    elif args.mode == "truncated":
        dist = rc.require_dist()
        if args.cutoff is None:
            raise InputError("oracle --mode truncated needs --cutoff")
        interval = oracle.exact_index_truncated(a, dist, args.cutoff, max_subsets=limits.max_subset_states)
        obj.update(lower=format_decimal(interval.lower), upper=format_decimal(interval.upper),
                   M=interval.cutoff, dist=dist.descriptor)
    else:
        if args.adfa is None:
            raise InputError("oracle --mode subset needs --adfa")
        result = oracle.exact_subset(_load_adfa(args.adfa), a, limit=limits.max_enumerated_words)
        obj.update(verdict=result.holds, checked=result.checked,
                   witness=None if result.counterexample is None else list(result.counterexample))
        _emit(obj)
        return EXIT_TRUE if result.holds else EXIT_FALSE
    _emit(obj)
    return EXIT_TRUE


def cmd_reduce(rc: RunConfig) -> int:
    args = rc.args
    b = certify_block(load_nfa(args.bnfa))
    limits = rc.cfg.limits
    inst = reduce_to_threshold(
        b, DeltaBits.parse(args.delta),
        dyadic=args.dyadic,
        max_bits=limits.max_delta_bits,
        max_length=limits.max_reduction_length,
    )
    obj = _header(rc, seeded=False)
    obj.update(n=inst.n, k=inst.k, m_k=inst.m_k, p1=inst.p1, dyadic=inst.dyadic,
               states=inst.nfa.num_states, transitions=len(inst.nfa.transitions))
    if args.out:
        try:
            save_automaton(inst.nfa, args.out)
        except OSError as e:
            raise InputError(f"cannot write {args.out}: {e.strerror or e}") from None
        obj["out"] = args.out
    else:
        obj["nfa"] = format_automaton(inst.nfa)
    _emit(obj)
    return EXIT_TRUE


_COMMANDS: dict[str, Callable[[RunConfig], int]] = {
    "sample":      cmd_sample,
    "prax-subset": cmd_prax_subset,
    "prax-block":  cmd_prax_block,
    "prax-maxlen": cmd_prax_maxlen,
    "prax-univ":   cmd_prax_univ,
    "pax-unary":   cmd_pax_unary,
    "emptiness":   cmd_emptiness,
    "oracle":      cmd_oracle,
    "reduce":      cmd_reduce,
}


# ─────────────────────────────────────────────────────────────────────────────
# Parser
# ─────────────────────────────────────────────────────────────────────────────

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="prax", description=f"PRAX-NFA v{__version__}: approximate NFA universality")
    parser.add_argument("-c", "--config", default=None, help="Path to a YAML config (default: built-in defaults)")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def seeded(p: argparse.ArgumentParser) -> None:
        p.add_argument("--seed", type=int, default=None, help="64-bit seed (default: random, reported)")

    def prax(p: argparse.ArgumentParser) -> None:
        p.add_argument("--eps", required=True, help="tolerance in (0, 1), e.g. 0.02 or 1/6")
        p.add_argument("--amplify", type=int, default=1, help="repeat k times, false on first false")
        seeded(p)

    p = sub.add_parser("sample", help="draw words from a length-based distribution")
    p.add_argument("--dist", required=True, help="uniform:M=5 | lambert:base=2,d=0 | dirichlet:t=3,d=1")
    p.add_argument("--alphabet", type=int, default=2, help="alphabet size s (default 2)")
    p.add_argument("--cutoff", type=int, default=None, help="augmented cutoff M (omit for exact sampling)")
    p.add_argument("--n", type=int, default=10)
    seeded(p)

    p = sub.add_parser("prax-subset", help="L(adfa) ⊆ L(nfa), approximately")
    p.add_argument("--nfa", required=True)
    p.add_argument("--adfa", required=True)
    prax(p)

    p = sub.add_parser("prax-block", help="block NFA universality, approximately")
    p.add_argument("--nfa", required=True)
    prax(p)

    p = sub.add_parser("prax-maxlen", help="Σ^{≤len} ⊆ L(nfa), approximately")
    p.add_argument("--nfa", required=True)
    p.add_argument("--len", type=int, required=True)
    prax(p)

    p = sub.add_parser("prax-univ", help="universality relative to a length distribution")
    p.add_argument("--nfa", required=True)
    p.add_argument("--dist", required=True)
    prax(p)

    p = sub.add_parser("pax-unary", help="deterministic check for unary NFAs")
    p.add_argument("--nfa", required=True)
    p.add_argument("--dist", required=True)
    p.add_argument("--eps", required=True)

    p = sub.add_parser("emptiness", help="approximate emptiness of an intersection of DFAs")
    p.add_argument("--dfas", required=True, help="comma-separated DFA files")
    p.add_argument("--dist", default=None)
    p.add_argument("--len", type=int, default=None, help="block length (uniform on Σ^len)")
    prax(p)

    p = sub.add_parser("oracle", help="exact values on small instances")
    p.add_argument("--nfa", required=True)
    p.add_argument("--mode", choices=("block", "truncated", "upto", "subset"), default="block")
    p.add_argument("--dist", default=None)
    p.add_argument("--cutoff", type=int, default=None)
    p.add_argument("--len", type=int, default=None)
    p.add_argument("--adfa", default=None)

    p = sub.add_parser("reduce", help="threshold reduction of a binary block NFA")
    p.add_argument("--bnfa", required=True)
    p.add_argument("--delta", required=True, help="rational P/Q in (0, 1)")
    p.add_argument("--dyadic", action="store_true", help="use |F| = P words of length j for δ = P/2^j")
    p.add_argument("--out", default=None, help="write the NFA here instead of into the report")
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = apply_env_overrides(load_config(args.config))
        setup_logging(cfg.logging)
        rc = RunConfig.from_args(args, cfg)
        logger.debug("Running %s with seed %d", rc.command, rc.seed)
        return _COMMANDS[args.command](rc)
    except SystemExit as e:
        # --help и --version
        return e.code if isinstance(e.code, int) else EXIT_TRUE
    except PraxError as e:
        logger.info("%s: %s", e.kind, e)
        _emit_error(e.kind, str(e))
        return EXIT_ERROR


def main() -> None:
    sys.exit(run(sys.argv[1:]))
