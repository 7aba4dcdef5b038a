from lark import Token, Tree
from pydantic import ValidationError

from closure_mc.exceptions import FormulaSyntaxError, SpecProgramError
from closure_mc.logic.desugar import Layer, Macro, desugar, referenced_names
from closure_mc.logic.parser import parse_tree, relocate
from closure_mc.query import (
    AskCommand,
    LetDeclaration,
    PaintCommand,
    PropDeclaration,
    SpecProgram,
)


def _pydantic_message(err: ValidationError) -> str:
    return "; ".join(e["msg"].removeprefix("Value error, ") for e in err.errors())


class _ProgramBuilder:
    def __init__(self, text: str):
        self.text = text
        self.macros: dict[str, Macro] = {}
        self.painted: dict[tuple[int, int, int], int] = {}
        self.declarations = []

    def build(self) -> SpecProgram:
        tree = parse_tree(self.text, start="program")
        for statement in tree.children:
            match statement.data:
                case "let_stmt":
                    self._let(statement)
                case "prop_stmt":
                    self._prop(statement)
                case "paint_stmt":
                    self._paint(statement)
                case "ask_stmt":
                    self._ask(statement)
        return SpecProgram(declarations=self.declarations)

    def _let(self, statement: Tree):
        name = statement.children[0]
        params = []
        if isinstance(statement.children[1], Tree) and statement.children[1].data == "params":
            params = [str(p) for p in statement.children[1].children]
        body = statement.children[-1]

        if str(name) in self.macros:
            raise FormulaSyntaxError(
                f"macro {str(name)!r} is already defined",
                line=name.line,
                column=name.column,
                text=str(name),
            )
        if len(set(params)) != len(params):
            raise FormulaSyntaxError(
                f"macro {str(name)!r} repeats a parameter name",
                line=name.line,
                column=name.column,
            )

        self._check_body(str(name), params, body)

        macro = Macro(str(name), tuple(params), body, line=name.line)
        self.macros[macro.name] = macro
        self.declarations.append(
            LetDeclaration(
                name=macro.name,
                params=macro.params,
                body=self.text[body.meta.start_pos : body.meta.end_pos],
                line=name.line,
            ),
        )

    def _check_body(self, name: str, params: list[str], body: Tree):
        for token in referenced_names(body):
            used = str(token)
            if used == name:
                raise FormulaSyntaxError(
                    f"macro {name!r} refers to itself, recursive macros are not supported",
                    line=token.line,
                    column=token.column,
                    text=used,
                )

        for subtree in body.iter_subtrees_topdown():
            if subtree.data != "call":
                continue
            token, arguments = subtree.children[0], subtree.children[1:]
            callee = self.macros.get(str(token))
            if str(token) in params:
                raise FormulaSyntaxError(
                    f"parameter {str(token)!r} cannot be called",
                    line=token.line,
                    column=token.column,
                )
            if callee is None:
                raise FormulaSyntaxError(
                    f"unknown macro {str(token)!r}",
                    line=token.line,
                    column=token.column,
                    text=str(token),
                )
            if len(arguments) != len(callee.params):
                raise FormulaSyntaxError(
                    f"macro {callee.name!r} takes {len(callee.params)} argument(s), {len(arguments)} given",
                    line=token.line,
                    column=token.column,
                )

    def _color_value(self, colour: Tree):
        token = colour.children[0]
        return token, str(token)

    def _prop(self, statement: Tree):
        name, colour = statement.children
        token, value = self._color_value(colour)
        try:
            declaration = PropDeclaration(name=str(name), color=value, line=name.line)
        except ValidationError as err:
            raise FormulaSyntaxError(_pydantic_message(err), line=token.line, column=token.column, text=value)
        self.declarations.append(declaration)

    def _formula(self, string: Token, layer: Layer):
        text = str(string)[1:-1]
        try:
            formula = desugar(parse_tree(text), layer, self.macros)
        except FormulaSyntaxError as err:
            raise relocate(err, string.line, string.column + 1) from None
        return text, formula

    def _paint(self, statement: Tree):
        string, colour = statement.children
        text, formula = self._formula(string, Layer.Individual)
        token, value = self._color_value(colour)
        try:
            command = PaintCommand(text=text, color=value, formula=formula, line=string.line)
        except ValidationError as err:
            raise FormulaSyntaxError(_pydantic_message(err), line=token.line, column=token.column, text=value)

        if command.color in self.painted:
            raise SpecProgramError(
                f"line {string.line}: colour {command.hex_color} is already painted on line "
                f"{self.painted[command.color]}",
            )
        self.painted[command.color] = string.line
        self.declarations.append(command)

    def _ask(self, statement: Tree):
        string, at = statement.children
        text, formula = self._formula(string, Layer.Collective)

        points = None
        if at is not None:
            match at.data:
                case "at_coords":
                    points = [(int(c.children[0]), int(c.children[1])) for c in at.children]
                case "at_nodes":
                    points = [int(token) if token.type == "INT" else str(token) for token in at.children]

        self.declarations.append(
            AskCommand(text=text, points=points, formula=formula, line=string.line),
        )


def parse_spec_program(text: str) -> SpecProgram:
    """
    Parse a spec program

    Macros are visible from the statement after their definition on; paint
    and ask formulas are desugared right away, so every command carries its
    core formula.
    """
    return _ProgramBuilder(text).build()
