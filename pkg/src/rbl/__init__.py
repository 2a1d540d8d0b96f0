"""Residuated basic logic: syntax, models, algebras, calculi and a prover."""

from .syntax import ParseError, parse_formula, parse_sequent, parse_structure, print_formula, print_sequent

__version__ = "0.1.0"
__all__ = ["ParseError", "parse_formula", "parse_sequent", "parse_structure", "print_formula", "print_sequent"]
