from typing import Mapping, Optional

from lark import Lark, Tree
from lark.exceptions import UnexpectedCharacters, UnexpectedEOF, UnexpectedInput, UnexpectedToken

from closure_mc.exceptions import FormulaSyntaxError
from closure_mc.logic.ast import CollectiveFormula, IndividualFormula
from closure_mc.logic.desugar import Layer, Macro, desugar

GRAMMAR = r"""
formula: expr

program: statement*

?statement: let_stmt
    | prop_stmt
    | paint_stmt
    | ask_stmt

let_stmt: "let" NAME params? "=" expr ";"
params: "(" NAME ("," NAME)* ")"
prop_stmt: "prop" NAME "=" colour ";"
paint_stmt: "paint" STRING colour ";"
ask_stmt: "ask" STRING [at_clause] ";"

?at_clause: "at" coord ("," coord)*    -> at_coords
    | "at" (INT | NAME)+               -> at_nodes
coord: "(" INT "," INT ")"
colour: COLOR | NAME

?expr: spatial
    | spatial "-<" expr                -> share

?spatial: disj
    | disj "S" disj                    -> surrounded
    | disj "P" disj                    -> propagation
    | disj "U" disj                    -> reach
    | disj "T" disj                    -> touch
    | disj "Pbar" disj                 -> avoid
    | disj "CS" disj                   -> collectively_surrounded
    | disj "PART" disj                 -> partitioned

?disj: conj
    | disj "|" conj                    -> or_

?conj: unary
    | conj "&" unary                   -> and_

?unary: primary
    | "!" unary                        -> not_
    | "N" unary                        -> near
    | "I" unary                        -> interior
    | "E" unary                        -> everywhere
    | "F" unary                        -> somewhere
    | "G" unary                        -> group
    | "boundary" unary                 -> boundary
    | "iboundary" unary                -> inner_boundary
    | "cboundary" unary                -> closure_boundary
    | "forall" unary                   -> forall
    | "exists" unary                   -> exists

?primary: "TT"                         -> top
    | "FF"                             -> bottom
    | "empty"                          -> empty
    | NAME                             -> name
    | NAME "(" expr ("," expr)* ")"    -> call
    | COLOR                            -> color
    | "(" expr ")"

NAME: /[A-Za-z_][A-Za-z0-9_]*/
COLOR: /#[0-9a-fA-F]{6}/
COMMENT: /\/\/[^\n]*/

%import common.ESCAPED_STRING -> STRING
%import common.INT
%import common.WS

%ignore WS
%ignore COMMENT
"""

KEYWORDS = frozenset(
    {
        "TT", "FF", "N", "I", "E", "F", "G", "S", "P", "U", "T", "Pbar", "CS", "PART",
        "boundary", "iboundary", "cboundary", "forall", "exists", "empty",
        "let", "prop", "paint", "ask", "at",
    },
)

SPATIAL_OPERATORS = frozenset({"S", "P", "U", "T", "Pbar", "CS", "PART"})

_parser = Lark(
    GRAMMAR,
    start=["formula", "program"],
    parser="lalr",
    lexer="basic",
    propagate_positions=True,
    maybe_placeholders=True,
)


def _syntax_error(err: UnexpectedInput, text: str) -> FormulaSyntaxError:
    line = err.line if err.line is not None and err.line > 0 else text.count("\n") + 1
    column = err.column if err.column is not None and err.column > 0 else len(text.rsplit("\n", 1)[-1]) + 1

    match err:
        case UnexpectedEOF():
            message = "unexpected end of input"
            found = None
        case UnexpectedToken(token=token) if token.type == "$END":
            message = "unexpected end of input"
            found = None
        case UnexpectedToken(token=token):
            found = str(token)
            # spatial operator right after a complete operand
            if found in SPATIAL_OPERATORS and "NAME" not in (err.expected or ()):
                message = f"binary spatial operators do not chain, parenthesize before {found!r}"
            elif found in KEYWORDS:
                message = f"unexpected keyword {found!r}"
            else:
                message = f"unexpected {found!r}"
        case UnexpectedCharacters(char=char):
            found = char
            message = f"unexpected character {char!r}"
        case _:
            found = None
            message = "invalid syntax"

    return FormulaSyntaxError(message, line=line, column=column, text=found)


def relocate(err: FormulaSyntaxError, line: int, column: int) -> FormulaSyntaxError:
    """
    Re-anchor an error raised on a formula that starts at (line, column) of a larger text
    """
    if err.line is None:
        return FormulaSyntaxError(err.message, line=line, column=column, text=err.text)

    inner_column = err.column + column - 1 if err.line == 1 else err.column
    return FormulaSyntaxError(err.message, line=err.line + line - 1, column=inner_column, text=err.text)


def parse_tree(text: str, start: str = "formula") -> Tree:
    """Parse text into a surface tree, derived operators still in place"""
    try:
        tree = _parser.parse(text, start=start)
    except UnexpectedInput as err:
        raise _syntax_error(err, text) from None
    except RecursionError:
        raise FormulaSyntaxError("formula is nested too deeply", line=1, column=1) from None

    if start == "formula":
        return tree.children[0]
    return tree


def parse_individual(text: str, macros: Optional[Mapping[str, Macro]] = None) -> IndividualFormula:
    """Parse an individual formula, desugared to the core connectives"""
    return desugar(parse_tree(text), Layer.Individual, macros)


def parse_collective(text: str, macros: Optional[Mapping[str, Macro]] = None) -> CollectiveFormula:
    """Parse a collective formula, desugared to the core connectives"""
    return desugar(parse_tree(text), Layer.Collective, macros)
