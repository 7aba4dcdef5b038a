from closure_mc.logic.ast import (
    And,
    Atom,
    CollectiveAnd,
    CollectiveFormula,
    CollectiveNot,
    CollectiveTop,
    Group,
    IndividualFormula,
    Near,
    Not,
    Propagation,
    Share,
    Surrounded,
    Formula,
    Top,
    atoms,
    formula_size,
    intern_formula,
    pretty,
)
from closure_mc.logic.desugar import Layer, Macro, desugar
from closure_mc.logic.parser import parse_collective, parse_individual, parse_tree
from closure_mc.logic.program import parse_spec_program

__all__ = [
    "And",
    "Atom",
    "CollectiveAnd",
    "CollectiveFormula",
    "CollectiveNot",
    "CollectiveTop",
    "Formula",
    "Group",
    "IndividualFormula",
    "Layer",
    "Macro",
    "Near",
    "Not",
    "Propagation",
    "Share",
    "Surrounded",
    "Top",
    "atoms",
    "desugar",
    "formula_size",
    "intern_formula",
    "parse_collective",
    "parse_individual",
    "parse_spec_program",
    "parse_tree",
    "pretty",
]
