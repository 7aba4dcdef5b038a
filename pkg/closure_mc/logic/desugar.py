"""
Derived operators and the translation of parsed surface terms to core formulas

Every derived operator is a plain function returning a core formula, so the
checkers only ever see the connectives of closure_mc.logic.ast.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Mapping, Optional

from lark import Token, Tree

from closure_mc.exceptions import FormulaSyntaxError
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
    Top,
    intern_formula,
)


class Layer(Enum):
    Individual = "individual"
    Collective = "collective"


# individual layer


def bottom() -> IndividualFormula:
    return Not(Top())


def or_(left: IndividualFormula, right: IndividualFormula) -> IndividualFormula:
    return Not(And(Not(left), Not(right)))


def interior(operand: IndividualFormula) -> IndividualFormula:
    return Not(Near(Not(operand)))


def boundary(operand: IndividualFormula) -> IndividualFormula:
    return And(Near(operand), Not(interior(operand)))


def inner_boundary(operand: IndividualFormula) -> IndividualFormula:
    return And(operand, Not(interior(operand)))


def closure_boundary(operand: IndividualFormula) -> IndividualFormula:
    return And(Near(operand), Not(operand))


def reach(left: IndividualFormula, right: IndividualFormula) -> IndividualFormula:
    """left U right: some path reaches right passing only through left"""
    return Not(Surrounded(Not(right), Not(left)))


def everywhere(operand: IndividualFormula) -> IndividualFormula:
    return Surrounded(operand, bottom())


def somewhere(operand: IndividualFormula) -> IndividualFormula:
    return Not(everywhere(Not(operand)))


def avoid(left: IndividualFormula, right: IndividualFormula) -> IndividualFormula:
    return Not(Propagation(left, Not(right)))


def touch(left: IndividualFormula, right: IndividualFormula) -> IndividualFormula:
    """left T right: a left point from which a left path touches right"""
    return And(left, reach(or_(left, right), right))


# collective layer


def collective_bottom() -> CollectiveFormula:
    return CollectiveNot(CollectiveTop())


def collective_or(left: CollectiveFormula, right: CollectiveFormula) -> CollectiveFormula:
    return CollectiveNot(CollectiveAnd(CollectiveNot(left), CollectiveNot(right)))


def forall(operand: IndividualFormula) -> CollectiveFormula:
    return Share(Not(operand), Group(bottom()))


def exists(operand: IndividualFormula) -> CollectiveFormula:
    return CollectiveNot(forall(Not(operand)))


def empty() -> CollectiveFormula:
    return forall(bottom())


def collectively_surrounded(
    inner: IndividualFormula,
    outer: IndividualFormula,
) -> CollectiveFormula:
    return Group(And(Not(outer), Surrounded(inner, outer)))


def partitioned(left: IndividualFormula, right: IndividualFormula) -> CollectiveFormula:
    exclusive = And(or_(left, right), Not(And(left, right)))
    return CollectiveAnd(
        forall(exclusive),
        CollectiveAnd(
            Share(left, collectively_surrounded(left, right)),
            Share(right, collectively_surrounded(right, left)),
        ),
    )


_INDIVIDUAL_UNARY = {
    "near": Near,
    "interior": interior,
    "everywhere": everywhere,
    "somewhere": somewhere,
    "boundary": boundary,
    "inner_boundary": inner_boundary,
    "closure_boundary": closure_boundary,
}

_INDIVIDUAL_BINARY = {
    "surrounded": Surrounded,
    "propagation": Propagation,
    "reach": reach,
    "touch": touch,
    "avoid": avoid,
}

_COLLECTIVE_FROM_INDIVIDUAL = {
    "group": Group,
    "forall": forall,
    "exists": exists,
}

_COLLECTIVE_FROM_TWO_INDIVIDUALS = {
    "collectively_surrounded": collectively_surrounded,
    "partitioned": partitioned,
}

_SURFACE_NAMES = {
    "near": "N",
    "interior": "I",
    "everywhere": "E",
    "somewhere": "F",
    "boundary": "boundary",
    "inner_boundary": "iboundary",
    "closure_boundary": "cboundary",
    "surrounded": "S",
    "propagation": "P",
    "reach": "U",
    "touch": "T",
    "avoid": "Pbar",
    "group": "G",
    "forall": "forall",
    "exists": "exists",
    "empty": "empty",
    "share": "-<",
    "collectively_surrounded": "CS",
    "partitioned": "PART",
    "name": "an atomic proposition",
    "color": "a colour proposition",
}


@dataclass(frozen=True)
class Macro:
    """A `let` binding: a surface term with formula parameters, typed at its use site"""

    name: str
    params: tuple[str, ...]
    body: Tree
    line: Optional[int] = None


def _position(node) -> tuple[Optional[int], Optional[int]]:
    if isinstance(node, Token):
        return node.line, node.column
    meta = getattr(node, "meta", None)
    if meta is None or getattr(meta, "empty", True):
        return None, None
    return meta.line, meta.column


def _error(message: str, node) -> FormulaSyntaxError:
    line, column = _position(node)
    return FormulaSyntaxError(message, line=line, column=column, text=str(node) if isinstance(node, Token) else None)


class _Translator:
    def __init__(self, macros: Mapping[str, Macro]):
        self.macros = macros
        self.expanding: list[str] = []
        # a parameterless macro expands the same way at every use
        self.expanded: dict[tuple[str, Layer], object] = {}

    def translate(self, node, layer: Layer, bindings: Mapping[str, tuple]):
        if isinstance(node, Token):
            raise _error(f"unexpected token {node!r}", node)

        kind = node.data
        children = node.children

        match kind:
            case "top":
                return Top() if layer is Layer.Individual else CollectiveTop()
            case "bottom":
                return bottom() if layer is Layer.Individual else collective_bottom()
            case "not_":
                operand = self.translate(children[0], layer, bindings)
                return Not(operand) if layer is Layer.Individual else CollectiveNot(operand)
            case "and_" | "or_":
                left = self.translate(children[0], layer, bindings)
                right = self.translate(children[1], layer, bindings)
                if layer is Layer.Individual:
                    return And(left, right) if kind == "and_" else or_(left, right)
                return CollectiveAnd(left, right) if kind == "and_" else collective_or(left, right)
            case "name":
                return self._name(children[0], layer, bindings)
            case "call":
                return self._call(children[0], children[1:], layer, bindings)
            case "color":
                self._require(layer, Layer.Individual, node, kind)
                return Atom(str(children[0]).lower())
            case "empty":
                self._require(layer, Layer.Collective, node, kind)
                return empty()
            case "share":
                self._require(layer, Layer.Collective, node, kind)
                return Share(
                    self.translate(children[0], Layer.Individual, bindings),
                    self.translate(children[1], Layer.Collective, bindings),
                )
            case _ if kind in _INDIVIDUAL_UNARY:
                self._require(layer, Layer.Individual, node, kind)
                return _INDIVIDUAL_UNARY[kind](self.translate(children[0], Layer.Individual, bindings))
            case _ if kind in _INDIVIDUAL_BINARY:
                self._require(layer, Layer.Individual, node, kind)
                return _INDIVIDUAL_BINARY[kind](
                    self.translate(children[0], Layer.Individual, bindings),
                    self.translate(children[1], Layer.Individual, bindings),
                )
            case _ if kind in _COLLECTIVE_FROM_INDIVIDUAL:
                self._require(layer, Layer.Collective, node, kind)
                return _COLLECTIVE_FROM_INDIVIDUAL[kind](
                    self.translate(children[0], Layer.Individual, bindings),
                )
            case _ if kind in _COLLECTIVE_FROM_TWO_INDIVIDUALS:
                self._require(layer, Layer.Collective, node, kind)
                return _COLLECTIVE_FROM_TWO_INDIVIDUALS[kind](
                    self.translate(children[0], Layer.Individual, bindings),
                    self.translate(children[1], Layer.Individual, bindings),
                )
            case _:
                raise _error(f"unknown construct {kind!r}", node)

    @staticmethod
    def _require(layer: Layer, wanted: Layer, node, kind: str):
        if layer is not wanted:
            raise _error(
                f"{_SURFACE_NAMES.get(kind, kind)} is {wanted.value} but is used where "
                f"{'an' if layer is Layer.Individual else 'a'} {layer.value} formula is expected",
                node,
            )

    def _name(self, token: Token, layer: Layer, bindings: Mapping[str, tuple]):
        name = str(token)
        if name in bindings:
            argument, outer_bindings = bindings[name]
            return self.translate(argument, layer, outer_bindings)

        macro = self.macros.get(name)
        if macro is not None:
            if macro.params:
                raise _error(
                    f"macro {name!r} takes {len(macro.params)} argument(s), none given",
                    token,
                )
            key = (name, layer)
            if key not in self.expanded:
                self.expanded[key] = self._expand(macro, token, layer, {})
            return self.expanded[key]

        self._require(layer, Layer.Individual, token, "name")
        return Atom(name)

    def _call(self, token: Token, arguments: list, layer: Layer, bindings: Mapping[str, tuple]):
        name = str(token)
        macro = self.macros.get(name)
        if macro is None:
            raise _error(f"unknown macro {name!r}", token)
        if len(arguments) != len(macro.params):
            raise _error(
                f"macro {name!r} takes {len(macro.params)} argument(s), {len(arguments)} given",
                token,
            )
        inner = {param: (argument, bindings) for param, argument in zip(macro.params, arguments)}
        return self._expand(macro, token, layer, inner)

    def _expand(self, macro: Macro, token: Token, layer: Layer, bindings: Mapping[str, tuple]):
        if macro.name in self.expanding:
            chain = " -> ".join([*self.expanding, macro.name])
            raise _error(f"recursive macro expansion {chain}", token)
        self.expanding.append(macro.name)
        try:
            return self.translate(macro.body, layer, bindings)
        except FormulaSyntaxError as err:
            # body positions belong to the let statement, report the call site instead
            raise _error(f"{err.message}, in the expansion of macro {macro.name!r}", token) from None
        finally:
            self.expanding.pop()


def desugar(
    tree: Tree,
    layer: Layer = Layer.Individual,
    macros: Optional[Mapping[str, Macro]] = None,
):
    """
    Translate a parsed surface term to a core formula of the given layer

    Derived operators are replaced by their definitions, macro calls by their
    bodies with the arguments substituted, and every connective is checked to
    sit in the layer it belongs to. The result is interned.
    """
    try:
        formula = _Translator(macros or {}).translate(tree, layer, {})
    except RecursionError:
        line, column = _position(tree)
        raise FormulaSyntaxError("formula is nested too deeply", line=line, column=column) from None
    return intern_formula(formula)


def referenced_names(tree: Tree) -> list[Token]:
    """NAME tokens used as atoms or call targets, in source order"""
    found = []
    for subtree in tree.iter_subtrees_topdown():
        if subtree.data in ("name", "call"):
            found.append(subtree.children[0])
    return found
