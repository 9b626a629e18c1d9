"""Exhaustive enumeration of implicational linear-logic theorems."""

from lintaut.syntax import (
    App,
    Atom,
    Formula,
    Imp,
    Lam,
    Term,
    Var,
    parse_formula,
    parse_term,
    print_formula,
    print_term,
)

__all__ = [
    "App",
    "Atom",
    "Formula",
    "Imp",
    "Lam",
    "Term",
    "Var",
    "parse_formula",
    "parse_term",
    "print_formula",
    "print_term",
]

__version__ = "0.1.0"
