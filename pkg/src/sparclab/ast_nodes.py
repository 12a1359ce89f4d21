"""AST for SPARC programs, plus the canonical text rendering.

``str()`` of any node is its canonical SPARC syntax; parsing the printed form
of a program yields a structurally equal AST (positions are excluded from
equality). The canonical form is also what answer sets, query substitutions,
and the ground-program dump print, so it fixes the ordering used everywhere
determinism matters.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union


# --- Terms ------------------------------------------------------------------

@dataclass(frozen=True)
class Variable:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class SymbolicConstant:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class IntegerConstant:
    value: int

    def __str__(self) -> str:
        return str(self.value)


@dataclass(frozen=True)
class Arithmetic:
    op: str  # one of + - *
    left: "Term"
    right: "Term"

    def __str__(self) -> str:
        return _render_arith(self)


@dataclass(frozen=True)
class CommandTerm:
    """A functor with arguments; permitted only as a draw/animate command."""

    functor: str
    args: tuple["Term", ...]

    def __str__(self) -> str:
        inner = ", ".join(str(a) for a in self.args)
        return f"{self.functor}({inner})"


Term = Union[Variable, SymbolicConstant, IntegerConstant, Arithmetic, CommandTerm]
GroundTerm = Union[SymbolicConstant, IntegerConstant, CommandTerm]

_PRECEDENCE = {"+": 1, "-": 1, "*": 2}


def _render_arith(node: Arithmetic) -> str:
    # Parsing is left-associative, so a right operand at the same precedence
    # level needs parentheses to round-trip structurally.
    prec = _PRECEDENCE[node.op]
    left = str(node.left)
    right = str(node.right)
    if isinstance(node.left, Arithmetic) and _PRECEDENCE[node.left.op] < prec:
        left = f"({left})"
    if isinstance(node.right, Arithmetic) and _PRECEDENCE[node.right.op] <= prec:
        right = f"({right})"
    return f"{left} {node.op} {right}"


def is_ground(term: Term) -> bool:
    if isinstance(term, Variable):
        return False
    if isinstance(term, Arithmetic):
        return is_ground(term.left) and is_ground(term.right)
    if isinstance(term, CommandTerm):
        return all(is_ground(a) for a in term.args)
    return True


def term_variables(term: Term) -> set[str]:
    if isinstance(term, Variable):
        return {term.name}
    if isinstance(term, Arithmetic):
        return term_variables(term.left) | term_variables(term.right)
    if isinstance(term, CommandTerm):
        names: set[str] = set()
        for a in term.args:
            names |= term_variables(a)
        return names
    return set()


# --- Literals, comparisons, rules --------------------------------------------

@dataclass(frozen=True)
class Atom:
    name: str
    args: tuple[Term, ...] = ()

    def __str__(self) -> str:
        if not self.args:
            return self.name
        inner = ", ".join(str(a) for a in self.args)
        return f"{self.name}({inner})"


@dataclass(frozen=True)
class Literal:
    negated: bool  # classical negation, written '-'
    atom: Atom
    pos: tuple[int, int] = field(default=(0, 0), compare=False, repr=False)

    def __str__(self) -> str:
        return f"-{self.atom}" if self.negated else str(self.atom)

    @property
    def complement(self) -> "Literal":
        return Literal(not self.negated, self.atom)


@dataclass(frozen=True)
class NotLiteral:
    """Default negation applied to a literal (body position only)."""

    literal: Literal

    def __str__(self) -> str:
        return f"not {self.literal}"


@dataclass(frozen=True)
class Comparison:
    op: str  # one of = != < > <= >=
    left: Term
    right: Term
    pos: tuple[int, int] = field(default=(0, 0), compare=False, repr=False)

    def __str__(self) -> str:
        return f"{self.left} {self.op} {self.right}"


BodyElement = Union[Literal, NotLiteral, Comparison]


@dataclass(frozen=True)
class Rule:
    head: tuple[Literal, ...]  # disjunction; empty means constraint
    body: tuple[BodyElement, ...]
    pos: tuple[int, int] = field(default=(0, 0), compare=False, repr=False)

    def __str__(self) -> str:
        head = " | ".join(str(lit) for lit in self.head)
        body = ", ".join(str(el) for el in self.body)
        if not self.head:
            return f":- {body}."
        if not self.body:
            return f"{head}."
        return f"{head} :- {body}."


# --- Sort and predicate declarations -----------------------------------------

@dataclass(frozen=True)
class EnumSort:
    members: tuple[GroundTerm, ...]  # symbolic constants and/or integers

    def __str__(self) -> str:
        return "{" + ", ".join(str(m) for m in self.members) + "}"


@dataclass(frozen=True)
class RangeSort:
    lo: int
    hi: int

    def __str__(self) -> str:
        return f"{self.lo}..{self.hi}"


@dataclass(frozen=True)
class SortDefinition:
    name: str  # without the leading '#'
    body: Union[EnumSort, RangeSort]
    pos: tuple[int, int] = field(default=(0, 0), compare=False, repr=False)

    def __str__(self) -> str:
        return f"#{self.name} = {self.body}."


@dataclass(frozen=True)
class PredicateDeclaration:
    name: str
    arg_sorts: tuple[str, ...]  # sort names without '#'
    pos: tuple[int, int] = field(default=(0, 0), compare=False, repr=False)

    def __str__(self) -> str:
        if not self.arg_sorts:
            return f"{self.name}."
        inner = ", ".join(f"#{s}" for s in self.arg_sorts)
        return f"{self.name}({inner})."


@dataclass(frozen=True)
class Program:
    sorts: tuple[SortDefinition, ...]
    predicates: tuple[PredicateDeclaration, ...]
    rules: tuple[Rule, ...]

    def __str__(self) -> str:
        lines = ["sorts"]
        lines.extend(str(s) for s in self.sorts)
        lines.append("predicates")
        lines.extend(str(p) for p in self.predicates)
        lines.append("rules")
        lines.extend(str(r) for r in self.rules)
        return "\n".join(lines) + "\n"


def rule_variables(rule: Rule) -> set[str]:
    names: set[str] = set()
    for lit in rule.head:
        for arg in lit.atom.args:
            names |= term_variables(arg)
    for el in rule.body:
        if isinstance(el, Literal):
            for arg in el.atom.args:
                names |= term_variables(arg)
        elif isinstance(el, NotLiteral):
            for arg in el.literal.atom.args:
                names |= term_variables(arg)
        else:
            names |= term_variables(el.left) | term_variables(el.right)
    return names
