"""PRAX-NFA — загрузка и валидация конфигурации из YAML."""

from __future__ import annotations

import dataclasses
import logging
import os
from collections.abc import Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any

import yaml

from src.errors import InputError

logger = logging.getLogger("prax.config")


# ─────────────────────────────────────────────────────────────────────────────
# Data-classes
# ─────────────────────────────────────────────────────────────────────────────

@dataclass
class LimitsCfg:
    """Лимиты ресурсов: оракул и CLI — настольные инструменты."""
    max_subset_states: int = 2 ** 20
    max_enumerated_words: int = 1_000_000
    max_unary_length: int = 1_000_000     # граница для «унарного» ℓ
    max_delta_bits: int = 4096            # поиск первой единицы δ
    max_reduction_length: int = 8192      # k + ℓ в редукции, гаджет O(k²)
    max_cutoff: int = 1_000_000           # M для prax-univ и emptiness --dist


@dataclass
class EstimatorCfg:
    # Значение 1/6 в min(ε, 1/6) можно заменить любым < 1/5.
    eps_cap: str = "1/6"
    markov_x: int = 5
    residual_tolerance: float = 1e-9

    def eps_cap_fraction(self) -> Fraction:
        return Fraction(self.eps_cap).limit_denominator(10 ** 12)


@dataclass
class LoggingCfg:
    level: str = "WARNING"
    log_file: str = ""
    json_logs: bool = False


@dataclass
class AppConfig:
    limits:     LimitsCfg    = field(default_factory=LimitsCfg)
    estimators: EstimatorCfg = field(default_factory=EstimatorCfg)
    logging:    LoggingCfg   = field(default_factory=LoggingCfg)


# ─────────────────────────────────────────────────────────────────────────────
# Parsing helpers
# ─────────────────────────────────────────────────────────────────────────────

def _merge(dc_class: type, raw: dict[str, Any] | None):
    """Создаёт dataclass из dict, игнорируя неизвестные ключи."""
    if raw is None:
        return dc_class()
    known = {f.name for f in dataclasses.fields(dc_class)}
    unknown = sorted(set(raw) - known)
    if unknown:
        logger.warning("Ignoring unknown %s keys: %s", dc_class.__name__, ", ".join(unknown))
    return dc_class(**{k: v for k, v in raw.items() if k in known})


def parse_config_dict(raw: dict[str, Any]) -> AppConfig:
    """Собрать AppConfig из сырого dict (результат yaml.safe_load)."""
    cfg = AppConfig(
        limits=_merge(LimitsCfg, raw.get("limits")),
        estimators=_merge(EstimatorCfg, raw.get("estimators")),
        logging=_merge(LoggingCfg, raw.get("logging")),
    )
    # YAML может отдать 0.1666 как float — храним строкой
    cfg.estimators.eps_cap = str(cfg.estimators.eps_cap)
    validate_config(cfg)
    return cfg


def validate_config(cfg: AppConfig) -> None:
    for f in dataclasses.fields(LimitsCfg):
        value = getattr(cfg.limits, f.name)
        if not isinstance(value, int) or value <= 0:
            raise InputError(f"limits.{f.name} must be a positive integer, got {value!r}")
    try:
        cap = cfg.estimators.eps_cap_fraction()
    except (ValueError, ZeroDivisionError) as e:
        raise InputError(f"estimators.eps_cap: {e}") from None
    x = cfg.estimators.markov_x
    if not isinstance(x, int) or x <= 4:
        raise InputError(f"estimators.markov_x must be an integer > 4, got {x!r}")
    if not 0 < cap < Fraction(1, x):
        raise InputError(f"estimators.eps_cap must lie in (0, 1/{x}), got {cfg.estimators.eps_cap}")


_ENV_LIMITS = {
    "PRAX_MAX_SUBSET_STATES":    "max_subset_states",
    "PRAX_MAX_ENUMERATED_WORDS": "max_enumerated_words",
    "PRAX_MAX_UNARY_LENGTH":     "max_unary_length",
    "PRAX_MAX_DELTA_BITS":       "max_delta_bits",
    "PRAX_MAX_REDUCTION_LENGTH": "max_reduction_length",
    "PRAX_MAX_CUTOFF":           "max_cutoff",
}


def apply_env_overrides(cfg: AppConfig, environ: Mapping[str, str] | None = None) -> AppConfig:
    """Переопределить лимиты и уровень логов из переменных окружения."""
    env = os.environ if environ is None else environ
    for var, attr in _ENV_LIMITS.items():
        if var not in env:
            continue
        try:
            setattr(cfg.limits, attr, int(env[var]))
        except ValueError:
            raise InputError(f"{var} must be an integer, got {env[var]!r}") from None
        logger.debug("Limit %s overridden from %s", attr, var)
    if "PRAX_LOG_LEVEL" in env:
        cfg.logging.level = env["PRAX_LOG_LEVEL"]
    validate_config(cfg)
    return cfg


def load_config(path: str | Path | None) -> AppConfig:
    """Загрузить конфигурацию из YAML файла; без пути — значения по умолчанию."""
    if path is None:
        return AppConfig()
    p = Path(path)
    if not p.exists():
        raise InputError(f"config file not found: {p}")

    with p.open("r", encoding="utf-8") as f:
        try:
            raw: dict[str, Any] = yaml.safe_load(f) or {}
        except yaml.YAMLError as e:
            raise InputError(f"bad YAML in {p}: {e}") from None
    if not isinstance(raw, dict):
        raise InputError(f"config {p} is not a mapping")

    cfg = parse_config_dict(raw)
    logger.info("Config loaded from %s", p)
    return cfg
