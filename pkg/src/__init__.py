"""PRAX-NFA — приближённая проверка универсальности НКА."""

__version__ = "1.0.0"
