"""Answer set enumeration for ground programs, plus a brute-force oracle.

The search path translates rules into propositional clauses over the
occurring literals and enumerates classical models with a small DPLL,
keeping those that survive a stability check (reduct + minimal model).
The oracle path enumerates every consistent subset of the occurring
literals and filters with the definitional is_stable_model, sharing no
search machinery with the fast path.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator

from .ast_nodes import Literal
from .errors import OracleTooLargeError, SearchBudgetExceededError
from .grounding import GroundProgram, GroundRule

ORACLE_LIMIT = 20


@dataclass(frozen=True)
class AnswerSet:
    """A consistent set of ground literals forming one stable model."""

    literals: frozenset[Literal]

    def sorted_literals(self) -> list[Literal]:
        return sorted(self.literals, key=str)

    def __str__(self) -> str:
        return "{" + ", ".join(str(lit) for lit in self.sorted_literals()) + "}"


@dataclass(frozen=True)
class SolveResult:
    answer_sets: tuple[AnswerSet, ...]
    truncated: bool = False


def reduct(program: GroundProgram, candidate: Iterable[Literal]) -> GroundProgram:
    """The Gelfond-Lifschitz reduct of the program relative to a candidate set."""
    candidate = frozenset(candidate)
    kept = []
    for rule in program.rules:
        if any(lit in candidate for lit in rule.negative):
            continue
        kept.append(GroundRule(rule.head, rule.positive, ()))
    return GroundProgram(tuple(kept), program.universe)


def satisfies(program: GroundProgram, candidate: Iterable[Literal]) -> bool:
    """Classical satisfaction: every firing rule has a true head literal."""
    return _satisfies_all(program.rules, frozenset(candidate))


def is_stable_model(program: GroundProgram, candidate: Iterable[Literal]) -> bool:
    """Definitional stability check: candidate is a minimal model of its reduct."""
    candidate = frozenset(candidate)
    red = reduct(program, candidate)
    if not _satisfies_all(red.rules, candidate):
        return False
    for smaller in _proper_subsets(candidate):
        if _satisfies_all(red.rules, smaller):
            return False
    return True


def answer_sets(
    program: GroundProgram,
    limit: int | None = None,
    budget: int | None = None,
) -> SolveResult:
    """Enumerate stable models, canonically ordered.

    limit bounds how many are returned (truncated is set when more exist);
    budget bounds the number of search nodes and raises when exhausted.
    """
    index = _Index(program)
    counter = _Budget(budget)
    clauses = []
    for head, positive, negative in index.rules:
        true_sat = head | negative
        if true_sat & positive:
            continue  # tautological clause, always satisfiable
        clauses.append((true_sat, positive))
    for pair in index.pairs:
        clauses.append((0, pair))
    # Literals that head no rule can never be derived, so no stable model
    # contains them; fix them false instead of branching on them.
    found: list[int] = []
    truncated = False
    for model in _dpll_models(clauses, index.size, index.head_union, counter):
        if not _stable_mask(index, model, counter):
            continue
        if limit is not None and len(found) >= limit:
            truncated = True
            break
        found.append(model)
    sets = [AnswerSet(index.to_literals(model)) for model in found]
    return SolveResult(_canonical(sets), truncated)


def brute_force_answer_sets(program: GroundProgram) -> SolveResult:
    """Oracle: test every consistent subset of the occurring literals."""
    literals = sorted(_occurring_literals(program), key=str)
    size = len(literals)
    if size > ORACLE_LIMIT:
        raise OracleTooLargeError(
            f"{size} literals occur in the program; the oracle handles at most {ORACLE_LIMIT}"
        )
    stable = []
    for bits in range(1 << size):
        candidate = frozenset(literals[i] for i in range(size) if bits >> i & 1)
        if any(lit.complement in candidate for lit in candidate):
            continue
        if is_stable_model(program, candidate):
            stable.append(AnswerSet(candidate))
    return SolveResult(_canonical(stable), False)


def render_answer_sets(result: SolveResult) -> str:
    """The text shown for a solve: one answer set per line in canonical order."""
    if not result.answer_sets:
        text = "no answer sets\n"
    else:
        text = "".join(f"{aset}\n" for aset in result.answer_sets)
    if result.truncated:
        text += "(model limit reached; more answer sets may exist)\n"
    return text


def _canonical(sets: list[AnswerSet]) -> tuple[AnswerSet, ...]:
    return tuple(sorted(sets, key=lambda aset: [str(lit) for lit in aset.sorted_literals()]))


def _occurring_literals(program: GroundProgram) -> set[Literal]:
    return {
        lit
        for rule in program.rules
        for lit in rule.head + rule.positive + rule.negative
    }


def _satisfies_all(rules: Iterable[GroundRule], candidate: frozenset[Literal]) -> bool:
    for rule in rules:
        if all(lit in candidate for lit in rule.positive) and not any(
            lit in candidate for lit in rule.negative
        ):
            if not any(lit in candidate for lit in rule.head):
                return False
    return True


def _proper_subsets(candidate: frozenset[Literal]) -> Iterator[frozenset[Literal]]:
    items = sorted(candidate, key=str)
    for size in range(len(items)):
        for combo in itertools.combinations(items, size):
            yield frozenset(combo)


class _Budget:
    __slots__ = ("remaining",)

    def __init__(self, limit: int | None):
        self.remaining = limit

    def tick(self) -> None:
        if self.remaining is None:
            return
        self.remaining -= 1
        if self.remaining < 0:
            raise SearchBudgetExceededError("search budget exhausted before all models were found")


class _Index:
    """Bit-indexed view of a ground program: literal i <-> bit 1 << i."""

    def __init__(self, program: GroundProgram):
        self.literals = sorted(_occurring_literals(program), key=str)
        self.size = len(self.literals)
        position = {lit: i for i, lit in enumerate(self.literals)}
        self.rules = []
        head_union = 0
        for rule in program.rules:
            head = _mask(rule.head, position)
            self.rules.append((head, _mask(rule.positive, position), _mask(rule.negative, position)))
            head_union |= head
        self.head_union = head_union
        self.pairs = []
        for lit, i in position.items():
            j = position.get(lit.complement)
            if j is not None and i < j:
                self.pairs.append((1 << i) | (1 << j))

    def to_literals(self, mask: int) -> frozenset[Literal]:
        return frozenset(lit for i, lit in enumerate(self.literals) if mask >> i & 1)


def _mask(literals: Iterable[Literal], position: dict[Literal, int]) -> int:
    mask = 0
    for lit in literals:
        mask |= 1 << position[lit]
    return mask


def _dpll_models(
    clauses: list[tuple[int, int]],
    size: int,
    var_mask: int,
    budget: _Budget,
    first_only: bool = False,
) -> Iterator[int]:
    """Enumerate assignments satisfying all clauses.

    A clause (true_sat, false_sat) is satisfied when some true_sat bit is
    true or some false_sat bit is false. Bits outside var_mask are fixed
    false. Yields the true-bit mask of each total assignment.
    """
    all_mask = (1 << size) - 1
    stack = [(0, all_mask & ~var_mask)]
    while stack:
        budget.tick()
        true, false = stack.pop()
        state = _propagate(clauses, true, false)
        if state is None:
            continue
        true, false = state
        unassigned = all_mask & ~(true | false)
        if not unassigned:
            yield true
            if first_only:
                return
            continue
        bit = unassigned & -unassigned
        stack.append((true, false | bit))
        stack.append((true | bit, false))


def _propagate(clauses: list[tuple[int, int]], true: int, false: int) -> tuple[int, int] | None:
    while True:
        changed = False
        for true_sat, false_sat in clauses:
            if true_sat & true or false_sat & false:
                continue
            undecided = (true_sat | false_sat) & ~(true | false)
            if not undecided:
                return None
            if undecided & (undecided - 1) == 0:
                if undecided & true_sat:
                    true |= undecided
                else:
                    false |= undecided
                changed = True
        if not changed:
            return true, false


def _stable_mask(index: _Index, model: int, budget: _Budget) -> bool:
    """Fast stability check in mask space for a model the DPLL produced."""
    red = [(h, p) for (h, p, ng) in index.rules if ng & model == 0]
    if all(h.bit_count() <= 1 for h, _ in red):
        # The reduct is Horn-like; its least model is unique, so the
        # candidate is minimal exactly when it equals the fixpoint.
        derived = 0
        changed = True
        while changed:
            changed = False
            for h, p in red:
                if not h & ~derived:
                    continue  # nothing new to derive (constraints never fire here)
                if not p & ~derived:
                    derived |= h
                    changed = True
        return derived == model
    # Disjunctive reduct: search for a satisfying proper subset of the model.
    sub_clauses = []
    for h, p in red:
        if p & ~model:
            continue  # body can never hold inside a subset of the model
        true_sat = h & model
        if true_sat & p:
            continue
        sub_clauses.append((true_sat, p))
    sub_clauses.append((0, model))  # require a proper subset
    for _ in _dpll_models(sub_clauses, model.bit_length(), model, budget, first_only=True):
        return False
    return True
