"""
Core abstract syntax of individual (point) and collective (point set) formulas

Only the core connectives live here; derived operators are built from them by
closure_mc.logic.desugar. Formulas are immutable and hashable, so structurally
equal subformulas share satisfaction sets in the checkers. Parsed formulas are
interned, which turns macro expansions into DAGs of shared nodes.
"""

import weakref
from dataclasses import dataclass, fields
from typing import Union


class Formula:
    """
    Base of the formula nodes

    A node hashes once, when it is built, from its type and the hashes of its
    fields, and compares by identity before structure. Interned formulas
    share every repeated subformula, so lookups stay constant time however
    large the formula is once unfolded.
    """

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash((type(self), *self._values())))

    def _values(self) -> tuple:
        return tuple(getattr(self, f.name) for f in fields(self))

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if type(other) is not type(self):
            return NotImplemented
        return self._hash == other._hash and self._values() == other._values()


@dataclass(frozen=True, eq=False)
class Atom(Formula):
    name: str


@dataclass(frozen=True, eq=False)
class Top(Formula):
    pass


@dataclass(frozen=True, eq=False)
class Not(Formula):
    operand: "IndividualFormula"


@dataclass(frozen=True, eq=False)
class And(Formula):
    left: "IndividualFormula"
    right: "IndividualFormula"


@dataclass(frozen=True, eq=False)
class Near(Formula):
    operand: "IndividualFormula"


@dataclass(frozen=True, eq=False)
class Surrounded(Formula):
    left: "IndividualFormula"
    right: "IndividualFormula"


@dataclass(frozen=True, eq=False)
class Propagation(Formula):
    left: "IndividualFormula"
    right: "IndividualFormula"


IndividualFormula = Union[Atom, Top, Not, And, Near, Surrounded, Propagation]


@dataclass(frozen=True, eq=False)
class CollectiveTop(Formula):
    pass


@dataclass(frozen=True, eq=False)
class CollectiveNot(Formula):
    operand: "CollectiveFormula"


@dataclass(frozen=True, eq=False)
class CollectiveAnd(Formula):
    left: "CollectiveFormula"
    right: "CollectiveFormula"


@dataclass(frozen=True, eq=False)
class Share(Formula):
    """Restrict the current point set to the points satisfying `individual`"""

    individual: IndividualFormula
    collective: "CollectiveFormula"


@dataclass(frozen=True, eq=False)
class Group(Formula):
    """The current point set lies in one path-connected set of points satisfying `individual`"""

    individual: IndividualFormula


CollectiveFormula = Union[CollectiveTop, CollectiveNot, CollectiveAnd, Share, Group]

_BINARY_SYMBOLS = {
    And: "&",
    Surrounded: "S",
    Propagation: "P",
    CollectiveAnd: "&",
    Share: "-<",
}

# canonical node of every (type, field ids) key; an entry lives as long as its node
_interned: "weakref.WeakValueDictionary[tuple, Formula]" = weakref.WeakValueDictionary()


def intern_formula(formula):
    """
    Canonical copy of a formula

    Structurally equal subformulas, here and in every formula interned
    before, become one object. The walk is iterative and visits each distinct
    node object once, so it is linear in the size of the formula as a DAG.
    """
    if not isinstance(formula, Formula):
        return formula

    canonical: dict[int, Formula] = {}
    stack = [formula]
    while stack:
        node = stack[-1]
        if id(node) in canonical:
            stack.pop()
            continue

        values = node._values()
        pending = [v for v in values if isinstance(v, Formula) and id(v) not in canonical]
        if pending:
            stack.extend(pending)
            continue
        stack.pop()

        shared = tuple(canonical[id(v)] if isinstance(v, Formula) else v for v in values)
        key = (type(node), *(id(v) if isinstance(v, Formula) else v for v in shared))
        found = _interned.get(key)
        if found is None:
            if all(a is b for a, b in zip(shared, values)):
                found = node
            else:
                found = type(node)(*shared)
            _interned[key] = found
        canonical[id(node)] = found

    return canonical[id(formula)]


def formula_size(formula) -> int:
    """Number of connectives and atoms, counting both layers of a Share"""
    match formula:
        case Atom() | Top() | CollectiveTop():
            return 1
        case Not(operand) | Near(operand) | CollectiveNot(operand) | Group(operand):
            return 1 + formula_size(operand)
        case And(left, right) | Surrounded(left, right) | Propagation(left, right) | CollectiveAnd(
            left,
            right,
        ):
            return 1 + formula_size(left) + formula_size(right)
        case Share(individual, collective):
            return 1 + formula_size(individual) + formula_size(collective)
        case _:
            raise TypeError(f"not a formula: {formula!r}")


def atoms(formula) -> set[str]:
    """Names of the atomic propositions occurring in the formula"""
    match formula:
        case Atom(name):
            return {name}
        case Top() | CollectiveTop():
            return set()
        case Not(operand) | Near(operand) | CollectiveNot(operand) | Group(operand):
            return atoms(operand)
        case And(left, right) | Surrounded(left, right) | Propagation(left, right) | CollectiveAnd(
            left,
            right,
        ):
            return atoms(left) | atoms(right)
        case Share(individual, collective):
            return atoms(individual) | atoms(collective)
        case _:
            raise TypeError(f"not a formula: {formula!r}")


def _operand(formula) -> str:
    text = pretty(formula)
    if type(formula) in _BINARY_SYMBOLS:
        return f"({text})"
    return text


def pretty(formula) -> str:
    """Render a core formula in the surface syntax accepted by the parser"""
    match formula:
        case Atom(name):
            return name
        case Top() | CollectiveTop():
            return "TT"
        case Not(operand) | CollectiveNot(operand):
            return f"!{_operand(operand)}"
        case Near(operand):
            return f"N {_operand(operand)}"
        case Group(operand):
            return f"G {_operand(operand)}"
        case Share(individual, collective):
            return f"{_operand(individual)} -< {_operand(collective)}"
        case And(left, right) | Surrounded(left, right) | Propagation(left, right) | CollectiveAnd(
            left,
            right,
        ):
            return f"{_operand(left)} {_BINARY_SYMBOLS[type(formula)]} {_operand(right)}"
        case _:
            raise TypeError(f"not a formula: {formula!r}")
