"""PRAX-NFA — исключения библиотеки.

Библиотека только бросает исключения; коды выхода назначает CLI.
"""

from __future__ import annotations


class PraxError(Exception):
    """Базовое исключение. ``kind`` попадает в однострочный JSON-ответ CLI."""

    kind = "error"


class InputError(PraxError, ValueError):
    kind = "input_error"


class NotAcyclic(PraxError):
    kind = "not_acyclic"


class NotBlock(PraxError):
    kind = "not_block"


class EmptyLanguage(PraxError):
    kind = "empty_language"


class InfiniteExpectation(PraxError):
    kind = "infinite_expectation"


class ResourceLimit(PraxError):
    """Превышен настраиваемый лимит (подмножества, перечисление, длины)."""

    kind = "resource_limit"
