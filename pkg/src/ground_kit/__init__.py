"""Decision procedures for propositional grounding claims."""

from .formula import (
    And, Atom, Bottom, BOTTOM, Formula, GroundingClaim, Imp, Or, ParseError,
    neg, parse, parse_claim, print_formula, subformulas,
)

__version__ = "0.1.0"
