"""Sort checking: validate declarations and annotate every rule variable with a sort."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .ast_nodes import (
    Arithmetic,
    CommandTerm,
    Comparison,
    EnumSort,
    GroundTerm,
    IntegerConstant,
    Literal,
    NotLiteral,
    Program,
    RangeSort,
    Rule,
    SymbolicConstant,
    Term,
    Variable,
    rule_variables,
)
from .commands import COMMANDS, INT, KEYWORD, SYMBOL
from .errors import Diagnostic, SortCheckError, sort_diagnostics

BUILTIN_PREDICATES = {("draw", 1), ("animate", 2)}


def _canonical_key(term: GroundTerm) -> tuple:
    if isinstance(term, IntegerConstant):
        return (0, term.value, "")
    return (1, 0, str(term))


class SortDomain:
    """The finite set of ground terms a sort denotes.

    Integer ranges are kept as bounds and expanded lazily, so membership
    tests and size queries on large sorts stay cheap.
    """

    __slots__ = ("_members", "_bounds")

    def __init__(
        self,
        members: tuple[GroundTerm, ...] | None = None,
        bounds: tuple[int, int] | None = None,
    ):
        self._members = members
        self._bounds = bounds

    @classmethod
    def of(cls, body: EnumSort | RangeSort) -> "SortDomain":
        if isinstance(body, RangeSort):
            return cls(bounds=(body.lo, body.hi))
        ordered = tuple(sorted(set(body.members), key=_canonical_key))
        return cls(members=ordered)

    def __contains__(self, term: object) -> bool:
        if self._bounds is not None:
            lo, hi = self._bounds
            return isinstance(term, IntegerConstant) and lo <= term.value <= hi
        return term in self._members  # type: ignore[operator]

    def __iter__(self) -> Iterator[GroundTerm]:
        if self._bounds is not None:
            lo, hi = self._bounds
            return (IntegerConstant(i) for i in range(lo, hi + 1))
        return iter(self._members)  # type: ignore[arg-type]

    def __len__(self) -> int:
        if self._bounds is not None:
            lo, hi = self._bounds
            return max(0, hi - lo + 1)
        return len(self._members)  # type: ignore[arg-type]

    @property
    def integer_only(self) -> bool:
        if self._bounds is not None:
            return True
        return all(isinstance(m, IntegerConstant) for m in self._members)  # type: ignore[union-attr]

    @property
    def contains_integers(self) -> bool:
        if self._bounds is not None:
            return True
        return any(isinstance(m, IntegerConstant) for m in self._members)  # type: ignore[union-attr]


@dataclass(frozen=True, eq=False)
class CheckedProgram:
    """A parsed program together with the results of sort checking."""

    program: Program
    domains: dict[str, SortDomain]
    predicate_sorts: dict[tuple[str, int], tuple[str, ...]]
    rule_variable_sorts: tuple[dict[str, str], ...]


def check_sorts(program: Program) -> CheckedProgram:
    """Check the program, raising SortCheckError when any diagnostic is found."""
    checker = _Checker(program)
    checked = checker.run()
    if checker.diagnostics:
        raise SortCheckError(sort_diagnostics(checker.diagnostics))
    return checked


def diagnose(program: Program) -> list[Diagnostic]:
    """Check the program and return the diagnostics instead of raising."""
    checker = _Checker(program)
    checker.run()
    return sort_diagnostics(checker.diagnostics)


def check_query_literals(
    checked: CheckedProgram, literals: tuple[Literal, ...]
) -> tuple[dict[str, str], list[Diagnostic]]:
    """Sort-check query literals against an already-checked program.

    Returns the inferred variable sorts and any diagnostics.
    """
    checker = _Checker(checked.program)
    checker.domains = checked.domains
    checker.predicate_sorts = checked.predicate_sorts
    pos = literals[0].pos if literals else (0, 0)
    var_sorts = checker.check_rule(Rule((), literals, pos))
    return var_sorts, sort_diagnostics(checker.diagnostics)


def _rule_literals(rule: Rule) -> Iterator[Literal]:
    yield from rule.head
    for element in rule.body:
        if isinstance(element, Literal):
            yield element
        elif isinstance(element, NotLiteral):
            yield element.literal


def _arithmetic_leaves(term: Term) -> Iterator[Term]:
    if isinstance(term, Arithmetic):
        yield from _arithmetic_leaves(term.left)
        yield from _arithmetic_leaves(term.right)
    else:
        yield term


class _Checker:
    def __init__(self, program: Program):
        self.program = program
        self.diagnostics: list[Diagnostic] = []
        self.domains: dict[str, SortDomain] = {}
        self.predicate_sorts: dict[tuple[str, int], tuple[str, ...]] = {}

    def error(self, code: str, pos: tuple[int, int], message: str) -> None:
        diagnostic = Diagnostic(code, pos[0], pos[1], message)
        if diagnostic not in self.diagnostics:
            self.diagnostics.append(diagnostic)

    def run(self) -> CheckedProgram:
        self._check_sort_definitions()
        self._check_predicate_declarations()
        rule_sorts = tuple(self.check_rule(rule) for rule in self.program.rules)
        return CheckedProgram(self.program, self.domains, self.predicate_sorts, rule_sorts)

    def _check_sort_definitions(self) -> None:
        for definition in self.program.sorts:
            if definition.name in self.domains:
                self.error(
                    "DuplicateSort",
                    definition.pos,
                    f"sort #{definition.name} is defined more than once",
                )
                continue
            body = definition.body
            if isinstance(body, EnumSort):
                if len(set(body.members)) != len(body.members):
                    self.error(
                        "DuplicateSortMember",
                        definition.pos,
                        f"sort #{definition.name} lists a member more than once",
                    )
            elif body.lo > body.hi:
                self.error(
                    "EmptyRange",
                    definition.pos,
                    f"sort #{definition.name} has an empty range {body.lo}..{body.hi}",
                )
            self.domains[definition.name] = SortDomain.of(body)

    def _check_predicate_declarations(self) -> None:
        for decl in self.program.predicates:
            if decl.name in ("draw", "animate"):
                self.error(
                    "ReservedPredicate",
                    decl.pos,
                    f"{decl.name} is a builtin display predicate and cannot be declared",
                )
                continue
            key = (decl.name, len(decl.arg_sorts))
            if key in self.predicate_sorts:
                self.error(
                    "DuplicatePredicate",
                    decl.pos,
                    f"{decl.name}/{len(decl.arg_sorts)} is declared more than once",
                )
                continue
            for sort_name in decl.arg_sorts:
                if sort_name not in self.domains:
                    self.error("UnknownSort", decl.pos, f"sort #{sort_name} is not defined")
            self.predicate_sorts[key] = decl.arg_sorts

    def check_rule(self, rule: Rule) -> dict[str, str]:
        var_sorts: dict[str, str] = {}
        literals = list(_rule_literals(rule))

        # First pass: infer variable sorts from declared argument positions.
        for literal in literals:
            key = (literal.atom.name, len(literal.atom.args))
            declared = self.predicate_sorts.get(key)
            if declared is None:
                continue
            for term, sort_name in zip(literal.atom.args, declared):
                if not isinstance(term, Variable) or sort_name not in self.domains:
                    continue
                existing = var_sorts.get(term.name)
                if existing is None:
                    var_sorts[term.name] = sort_name
                elif existing != sort_name:
                    self.error(
                        "AmbiguousVariableSort",
                        literal.pos,
                        f"variable {term.name} is used at sort #{existing} and at sort #{sort_name}",
                    )

        # Second pass: argument checks that need the inferred sorts.
        for literal in literals:
            self._check_literal(literal, var_sorts)
        for element in rule.body:
            if isinstance(element, Comparison):
                self._check_comparison(element, var_sorts)

        for name in sorted(rule_variables(rule)):
            if name not in var_sorts:
                self.error(
                    "UndeterminedVariableSort",
                    rule.pos,
                    f"cannot determine a sort for variable {name}",
                )
        return var_sorts

    def _check_literal(self, literal: Literal, var_sorts: dict[str, str]) -> None:
        atom = literal.atom
        key = (atom.name, len(atom.args))
        if key == ("draw", 1):
            self._check_command(atom.args[0], literal.pos, var_sorts)
            return
        if key == ("animate", 2):
            self._check_command(atom.args[0], literal.pos, var_sorts)
            self._check_integer_term(
                atom.args[1], literal.pos, var_sorts, "the frame index of animate"
            )
            return
        if atom.name == "draw" or atom.name == "animate":
            expected = 1 if atom.name == "draw" else 2
            self.error(
                "ArityMismatch",
                literal.pos,
                f"{atom.name} takes {expected} argument(s), got {len(atom.args)}",
            )
            return
        declared = self.predicate_sorts.get(key)
        if declared is None:
            arities = sorted(a for (n, a) in self.predicate_sorts if n == atom.name)
            if arities:
                expected = " or ".join(str(a) for a in arities)
                self.error(
                    "ArityMismatch",
                    literal.pos,
                    f"{atom.name} takes {expected} argument(s), got {len(atom.args)}",
                )
            else:
                self.error(
                    "UndeclaredPredicate",
                    literal.pos,
                    f"predicate {atom.name} is not declared",
                )
            return
        for index, (term, sort_name) in enumerate(zip(atom.args, declared)):
            domain = self.domains.get(sort_name)
            if domain is None:
                continue
            self._check_argument(term, domain, sort_name, atom.name, index, literal.pos, var_sorts)

    def _check_argument(
        self,
        term: Term,
        domain: SortDomain,
        sort_name: str,
        predicate: str,
        index: int,
        pos: tuple[int, int],
        var_sorts: dict[str, str],
    ) -> None:
        if isinstance(term, Variable):
            return  # sort inference handled in the first pass
        if isinstance(term, (SymbolicConstant, IntegerConstant)):
            if term not in domain:
                self.error(
                    "SortMismatch",
                    pos,
                    f"argument {index + 1} of {predicate}: {term} is not a member of #{sort_name}",
                )
            return
        if isinstance(term, Arithmetic):
            if not domain.contains_integers:
                self.error(
                    "SortMismatch",
                    pos,
                    f"argument {index + 1} of {predicate}: sort #{sort_name} has no integer members",
                )
            self._check_arithmetic(term, pos, var_sorts)
            return
        self.error(
            "SortMismatch",
            pos,
            f"argument {index + 1} of {predicate}: compound terms are not members of #{sort_name}",
        )

    def _check_arithmetic(self, term: Term, pos: tuple[int, int], var_sorts: dict[str, str]) -> None:
        for leaf in _arithmetic_leaves(term):
            if isinstance(leaf, IntegerConstant):
                continue
            if isinstance(leaf, Variable):
                sort_name = var_sorts.get(leaf.name)
                domain = self.domains.get(sort_name) if sort_name else None
                if domain is not None and not domain.integer_only:
                    self.error(
                        "SortMismatch",
                        pos,
                        f"variable {leaf.name} of sort #{sort_name} is used in arithmetic,"
                        " which needs integers",
                    )
                continue
            self.error(
                "SortMismatch",
                pos,
                f"{leaf} cannot appear in arithmetic, which needs integers",
            )

    def _check_integer_term(
        self, term: Term, pos: tuple[int, int], var_sorts: dict[str, str], what: str
    ) -> None:
        if isinstance(term, IntegerConstant):
            return
        if isinstance(term, Arithmetic):
            self._check_arithmetic(term, pos, var_sorts)
            return
        if isinstance(term, Variable):
            sort_name = var_sorts.get(term.name)
            domain = self.domains.get(sort_name) if sort_name else None
            if domain is not None and not domain.integer_only:
                self.error(
                    "SortMismatch",
                    pos,
                    f"{what} must be an integer; variable {term.name} has sort #{sort_name}",
                )
            return
        self.error("SortMismatch", pos, f"{what} must be an integer, got {term}")

    def _check_command(self, term: Term, pos: tuple[int, int], var_sorts: dict[str, str]) -> None:
        if not isinstance(term, CommandTerm):
            self.error(
                "SortMismatch",
                pos,
                f"the command argument of draw/animate must be a drawing command, got {term}",
            )
            return
        signature = COMMANDS.get(term.functor)
        if signature is None:
            self.error("UnknownCommand", pos, f"unknown drawing command {term.functor}")
            return
        expected = 1 + len(signature.params)
        if len(term.args) != expected:
            self.error(
                "BadCommandArity",
                pos,
                f"{term.functor} takes {expected} arguments, got {len(term.args)}",
            )
            return
        style_name = term.args[0]
        if not isinstance(style_name, (SymbolicConstant, Variable)):
            self.error(
                "SortMismatch",
                pos,
                f"the style name of {term.functor} must be a symbolic constant, got {style_name}",
            )
        for index, (param_kind, arg) in enumerate(zip(signature.params, term.args[1:]), start=2):
            if param_kind == INT:
                self._check_integer_term(
                    arg, pos, var_sorts, f"argument {index} of {term.functor}"
                )
            elif param_kind in (SYMBOL, KEYWORD):
                if not isinstance(arg, (SymbolicConstant, Variable)):
                    self.error(
                        "SortMismatch",
                        pos,
                        f"argument {index} of {term.functor} must be a symbolic constant,"
                        f" got {arg}",
                    )
                elif (
                    param_kind == KEYWORD
                    and isinstance(arg, SymbolicConstant)
                    and arg.name not in signature.keywords
                ):
                    allowed = ", ".join(signature.keywords)
                    self.error(
                        "SortMismatch",
                        pos,
                        f"argument {index} of {term.functor} must be one of {allowed},"
                        f" got {arg}",
                    )
            elif isinstance(arg, Arithmetic):
                self._check_arithmetic(arg, pos, var_sorts)

    def _check_comparison(self, comparison: Comparison, var_sorts: dict[str, str]) -> None:
        if comparison.op in ("<", ">", "<=", ">="):
            self._check_integer_term(
                comparison.left, comparison.pos, var_sorts,
                f"the left operand of {comparison.op}",
            )
            self._check_integer_term(
                comparison.right, comparison.pos, var_sorts,
                f"the right operand of {comparison.op}",
            )
            return
        for side in (comparison.left, comparison.right):
            if isinstance(side, Arithmetic):
                self._check_arithmetic(side, comparison.pos, var_sorts)
        left = self._operand_type(comparison.left, var_sorts)
        right = self._operand_type(comparison.right, var_sorts)
        if left is None or right is None or left == right:
            return
        if self._is_integer_type(left) and self._is_integer_type(right):
            return
        self.error(
            "SortMismatch",
            comparison.pos,
            f"operands of {comparison.op} have incompatible sorts"
            f" ({self._describe_type(left)} and {self._describe_type(right)})",
        )

    def _operand_type(self, term: Term, var_sorts: dict[str, str]) -> str | None:
        """'int' for integer-valued terms, a sort name for sorted variables, None if unknown."""
        if isinstance(term, (IntegerConstant, Arithmetic)):
            return "int"
        if isinstance(term, Variable):
            return var_sorts.get(term.name)
        return None

    def _is_integer_type(self, operand_type: str) -> bool:
        if operand_type == "int":
            return True
        domain = self.domains.get(operand_type)
        return domain is not None and domain.integer_only

    def _describe_type(self, operand_type: str) -> str:
        return "integer" if operand_type == "int" else f"#{operand_type}"
