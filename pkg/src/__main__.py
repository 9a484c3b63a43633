"""Позволяет запускать: python -m src prax-block --nfa a.nfa --eps 0.02"""

from src.cli import main

main()
