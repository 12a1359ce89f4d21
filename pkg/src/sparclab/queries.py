"""Query answering over computed answer sets.

A ground query gets a yes/no/unknown verdict: yes when every query literal
is in every answer set, no when some query literal's complement is in every
answer set, unknown otherwise. An open query returns the substitutions whose
instantiation answers yes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .ast_nodes import Atom, GroundTerm, Literal, is_ground, term_variables
from .errors import NoAnswerSetsError, SortCheckError
from .grounding import evaluate_term, substitute_term
from .parser import parse_query_literals
from .sortcheck import CheckedProgram, check_query_literals
from .solver import AnswerSet


@dataclass(frozen=True)
class Query:
    literals: tuple[Literal, ...]

    @property
    def is_ground(self) -> bool:
        return all(
            is_ground(arg) for literal in self.literals for arg in literal.atom.args
        )

    def variables(self) -> set[str]:
        return {
            name
            for literal in self.literals
            for arg in literal.atom.args
            for name in term_variables(arg)
        }

    def __str__(self) -> str:
        return ", ".join(str(literal) for literal in self.literals) + "?"


@dataclass(frozen=True)
class QueryResult:
    """Either a verdict (ground query) or a substitution list (open query)."""

    verdict: str | None = None
    substitutions: tuple[dict[str, GroundTerm], ...] | None = None


def parse_query(text: str) -> Query:
    return Query(parse_query_literals(text))


def check_query(checked: CheckedProgram, query: Query) -> dict[str, str]:
    """Sort-check the query against the program; returns the variable sorts."""
    var_sorts, diagnostics = check_query_literals(checked, query.literals)
    if diagnostics:
        raise SortCheckError(diagnostics)
    return var_sorts


def answer_ground_query(answer_sets: Sequence[AnswerSet], query: Query) -> str:
    """Verdict for a ground query over at least one answer set."""
    if not answer_sets:
        raise NoAnswerSetsError("the program has no answer sets")
    literals = [_evaluated(literal) for literal in query.literals]
    return _verdict([aset.literals for aset in answer_sets], literals)


def answer_open_query(
    checked: CheckedProgram, answer_sets: Sequence[AnswerSet], query: Query
) -> tuple[dict[str, GroundTerm], ...]:
    """All sort-consistent substitutions whose instantiated query is yes."""
    if not answer_sets:
        raise NoAnswerSetsError("the program has no answer sets")
    var_sorts = check_query(checked, query)
    names = sorted(query.variables())
    domains = [checked.domains[var_sorts[name]] for name in names]
    literal_sets = [aset.literals for aset in answer_sets]
    matches = []
    for values in itertools.product(*domains):
        assignment = dict(zip(names, values))
        instantiated = [_evaluated(lit, assignment) for lit in query.literals]
        if _verdict(literal_sets, instantiated) == "yes":
            matches.append(assignment)
    matches.sort(key=lambda sub: tuple(str(sub[name]) for name in names))
    return tuple(matches)


def run_query(
    checked: CheckedProgram, answer_sets: Sequence[AnswerSet], query: Query
) -> QueryResult:
    """Dispatch to the ground or open route after sort checking."""
    check_query(checked, query)
    if query.is_ground:
        return QueryResult(verdict=answer_ground_query(answer_sets, query))
    return QueryResult(substitutions=answer_open_query(checked, answer_sets, query))


def render_query_result(result: QueryResult) -> str:
    """The text shown in the query result area."""
    if result.verdict is not None:
        return result.verdict + "\n"
    lines = []
    for substitution in result.substitutions or ():
        pairs = ", ".join(f"{name} = {term}" for name, term in sorted(substitution.items()))
        lines.append(pairs + "\n")
    return "".join(lines)


def _evaluated(literal: Literal, assignment: dict[str, GroundTerm] | None = None) -> Literal:
    args = []
    for arg in literal.atom.args:
        if assignment is not None:
            arg = substitute_term(arg, assignment)
        args.append(evaluate_term(arg))
    return Literal(literal.negated, Atom(literal.atom.name, tuple(args)), literal.pos)


def _verdict(literal_sets: list[frozenset[Literal]], literals: list[Literal]) -> str:
    if all(literal in aset for aset in literal_sets for literal in literals):
        return "yes"
    if any(
        all(literal.complement in aset for aset in literal_sets) for literal in literals
    ):
        return "no"
    return "unknown"
