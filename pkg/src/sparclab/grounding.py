"""Grounding: instantiate rule variables over their sort domains and evaluate arithmetic."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .ast_nodes import (
    Arithmetic,
    Atom,
    CommandTerm,
    Comparison,
    GroundTerm,
    IntegerConstant,
    Literal,
    NotLiteral,
    Rule,
    Term,
    Variable,
)
from .errors import (
    ArithmeticTypeError,
    GroundingLimitExceededError,
    SortMismatchAtGroundingError,
    UnknownSortError,
)
from .sortcheck import CheckedProgram

DEFAULT_GROUND_CAP = 1_000_000


@dataclass(frozen=True)
class GroundRule:
    """A variable-free rule with the body split by default negation."""

    head: tuple[Literal, ...]
    positive: tuple[Literal, ...]
    negative: tuple[Literal, ...]  # literals L that appeared as `not L`

    def __str__(self) -> str:
        body = [str(lit) for lit in self.positive]
        body += [f"not {lit}" for lit in self.negative]
        head = " | ".join(str(lit) for lit in self.head)
        if not body:
            return f"{head}."
        if not head:
            return f":- {', '.join(body)}."
        return f"{head} :- {', '.join(body)}."


@dataclass(frozen=True)
class GroundProgram:
    rules: tuple[GroundRule, ...]
    universe: frozenset[Atom]


def sort_domain(checked: CheckedProgram, sort: str) -> set[GroundTerm]:
    """The set of ground terms a sort denotes. Accepts the name with or without '#'."""
    name = sort[1:] if sort.startswith("#") else sort
    domain = checked.domains.get(name)
    if domain is None:
        raise UnknownSortError(f"sort #{name} is not defined")
    return set(domain)


def evaluate_term(term: Term) -> GroundTerm:
    """Evaluate all arithmetic in a variable-free term, recursing into commands."""
    if isinstance(term, Arithmetic):
        left = evaluate_term(term.left)
        right = evaluate_term(term.right)
        if not isinstance(left, IntegerConstant) or not isinstance(right, IntegerConstant):
            bad = left if not isinstance(left, IntegerConstant) else right
            raise ArithmeticTypeError(f"arithmetic needs integer operands, got {bad}")
        if term.op == "+":
            value = left.value + right.value
        elif term.op == "-":
            value = left.value - right.value
        else:
            value = left.value * right.value
        return IntegerConstant(value)
    if isinstance(term, CommandTerm):
        return CommandTerm(term.functor, tuple(evaluate_term(a) for a in term.args))
    if isinstance(term, Variable):
        raise ValueError(f"cannot evaluate non-ground term containing {term}")
    return term


def ground(checked: CheckedProgram, cap: int | None = DEFAULT_GROUND_CAP) -> GroundProgram:
    """Instantiate every rule over the sort domains of its variables.

    Comparisons are evaluated and failing instances dropped; duplicate ground
    rules are emitted once. The cap bounds the total number of attempted
    instantiations across all rules and is checked before enumerating, so an
    oversized program fails fast.
    """
    rules: list[GroundRule] = []
    seen: set[GroundRule] = set()
    total = 0
    for rule, var_sorts in zip(checked.program.rules, checked.rule_variable_sorts):
        names = sorted(var_sorts)
        domains = [checked.domains[var_sorts[name]] for name in names]
        total += math.prod(len(domain) for domain in domains)
        if cap is not None and total > cap:
            raise GroundingLimitExceededError(
                f"grounding needs more than {cap} rule instances"
            )
        for values in itertools.product(*domains):
            assignment = dict(zip(names, values))
            ground_rule = _instantiate(rule, assignment, checked)
            if ground_rule is not None and ground_rule not in seen:
                seen.add(ground_rule)
                rules.append(ground_rule)
    universe = frozenset(
        literal.atom
        for ground_rule in rules
        for literal in ground_rule.head + ground_rule.positive + ground_rule.negative
    )
    return GroundProgram(tuple(rules), universe)


def render_ground_program(program: GroundProgram) -> str:
    """Debug dump: one rule per line in source syntax."""
    return "".join(f"{rule}\n" for rule in program.rules)


def _instantiate(
    rule: Rule, assignment: dict[str, GroundTerm], checked: CheckedProgram
) -> GroundRule | None:
    positive: list[Literal] = []
    negative: list[Literal] = []
    for element in rule.body:
        if isinstance(element, Comparison):
            if not _comparison_holds(element, assignment):
                return None
        elif isinstance(element, NotLiteral):
            negative.append(_ground_literal(element.literal, assignment, checked))
        else:
            positive.append(_ground_literal(element, assignment, checked))
    head = tuple(_ground_literal(lit, assignment, checked) for lit in rule.head)
    return GroundRule(head, tuple(positive), tuple(negative))


def _ground_literal(
    literal: Literal, assignment: dict[str, GroundTerm], checked: CheckedProgram
) -> Literal:
    atom = literal.atom
    declared = checked.predicate_sorts.get((atom.name, len(atom.args)))
    args: list[GroundTerm] = []
    for index, arg in enumerate(atom.args):
        value = evaluate_term(substitute_term(arg, assignment))
        # Constants were checked statically and substituted variables stay in
        # their own sort, so only evaluated arithmetic can land outside.
        if declared is not None and isinstance(arg, Arithmetic):
            domain = checked.domains.get(declared[index])
            if domain is not None and value not in domain:
                raise SortMismatchAtGroundingError(
                    f"argument {index + 1} of {atom.name}: {value} is outside sort"
                    f" #{declared[index]}"
                )
        args.append(value)
    return Literal(literal.negated, Atom(atom.name, tuple(args)), literal.pos)


def substitute_term(term: Term, assignment: dict[str, GroundTerm]) -> Term:
    if isinstance(term, Variable):
        return assignment[term.name]
    if isinstance(term, Arithmetic):
        return Arithmetic(term.op, substitute_term(term.left, assignment), substitute_term(term.right, assignment))
    if isinstance(term, CommandTerm):
        return CommandTerm(term.functor, tuple(substitute_term(a, assignment) for a in term.args))
    return term


def _comparison_holds(comparison: Comparison, assignment: dict[str, GroundTerm]) -> bool:
    left = evaluate_term(substitute_term(comparison.left, assignment))
    right = evaluate_term(substitute_term(comparison.right, assignment))
    if comparison.op == "=":
        return left == right
    if comparison.op == "!=":
        return left != right
    if not isinstance(left, IntegerConstant) or not isinstance(right, IntegerConstant):
        bad = left if not isinstance(left, IntegerConstant) else right
        raise ArithmeticTypeError(
            f"comparison {comparison.op} needs integer operands, got {bad}"
        )
    if comparison.op == "<":
        return left.value < right.value
    if comparison.op == ">":
        return left.value > right.value
    if comparison.op == "<=":
        return left.value <= right.value
    return left.value >= right.value
