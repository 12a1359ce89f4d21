"""Recursive-descent parser for the three-section SPARC program syntax."""

from __future__ import annotations

from .ast_nodes import (
    Arithmetic,
    Atom,
    BodyElement,
    CommandTerm,
    Comparison,
    EnumSort,
    IntegerConstant,
    Literal,
    NotLiteral,
    PredicateDeclaration,
    Program,
    RangeSort,
    Rule,
    SortDefinition,
    SymbolicConstant,
    Term,
    Variable,
)
from .errors import MissingSectionError, ParseError
from .lexer import Token, TokenKind, tokenize

_COMPARISON_OPS = {
    TokenKind.EQ: "=",
    TokenKind.NEQ: "!=",
    TokenKind.LT: "<",
    TokenKind.GT: ">",
    TokenKind.LE: "<=",
    TokenKind.GE: ">=",
}

_SECTION_KINDS = (TokenKind.KW_SORTS, TokenKind.KW_PREDICATES, TokenKind.KW_RULES)


class _TokenStream:
    def __init__(self, tokens: list[Token]):
        self._tokens = tokens
        self._index = 0

    def peek(self, offset: int = 0) -> Token:
        j = min(self._index + offset, len(self._tokens) - 1)
        return self._tokens[j]

    def next(self) -> Token:
        tok = self.peek()
        if tok.kind is not TokenKind.EOF:
            self._index += 1
        return tok

    def at(self, kind: TokenKind) -> bool:
        return self.peek().kind is kind

    def accept(self, kind: TokenKind) -> Token | None:
        if self.at(kind):
            return self.next()
        return None

    def expect(self, kind: TokenKind) -> Token:
        tok = self.peek()
        if tok.kind is not kind:
            raise ParseError(tok.line, tok.column, kind.value, tok.describe())
        return self.next()


def parse(source: str) -> Program:
    """Parse SPARC source text into a Program AST."""
    stream = _TokenStream(tokenize(source))

    _expect_section(stream, TokenKind.KW_SORTS, "sorts")
    sorts = _parse_sort_definitions(stream)
    _expect_section(stream, TokenKind.KW_PREDICATES, "predicates")
    predicates = _parse_predicate_declarations(stream)
    _expect_section(stream, TokenKind.KW_RULES, "rules")
    rules = _parse_rules(stream)
    stream.expect(TokenKind.EOF)
    return Program(tuple(sorts), tuple(predicates), tuple(rules))


def parse_query_literals(source: str) -> tuple[Literal, ...]:
    """Parse a query: comma-separated literals with an optional trailing '?' or '.'.

    Default negation is not part of query syntax and is rejected here.
    """
    stream = _TokenStream(tokenize(source))
    literals = [_parse_query_literal(stream)]
    while stream.accept(TokenKind.COMMA):
        literals.append(_parse_query_literal(stream))
    if not stream.accept(TokenKind.QUESTION):
        stream.accept(TokenKind.PERIOD)
    stream.expect(TokenKind.EOF)
    return tuple(literals)


def _parse_query_literal(stream: _TokenStream) -> Literal:
    tok = stream.peek()
    if tok.kind is TokenKind.KW_NOT:
        raise ParseError(tok.line, tok.column, "a literal (queries cannot use not)", tok.describe())
    return _parse_literal(stream)


def _expect_section(stream: _TokenStream, kind: TokenKind, name: str) -> None:
    tok = stream.peek()
    if tok.kind is not kind:
        raise MissingSectionError(tok.line, tok.column, name, tok.describe())
    stream.next()


def _parse_sort_definitions(stream: _TokenStream) -> list[SortDefinition]:
    defs = []
    while stream.at(TokenKind.SORT_NAME):
        tok = stream.next()
        stream.expect(TokenKind.EQ)
        body = _parse_sort_body(stream)
        stream.expect(TokenKind.PERIOD)
        defs.append(SortDefinition(tok.lexeme[1:], body, (tok.line, tok.column)))
    return defs


def _parse_sort_body(stream: _TokenStream) -> EnumSort | RangeSort:
    if stream.accept(TokenKind.LBRACE):
        members = [_parse_ground_member(stream)]
        while stream.accept(TokenKind.COMMA):
            members.append(_parse_ground_member(stream))
        stream.expect(TokenKind.RBRACE)
        return EnumSort(tuple(members))
    lo = _parse_signed_integer(stream)
    stream.expect(TokenKind.DOTDOT)
    hi = _parse_signed_integer(stream)
    return RangeSort(lo, hi)


def _parse_ground_member(stream: _TokenStream):
    if stream.at(TokenKind.IDENT):
        return SymbolicConstant(stream.next().lexeme)
    return IntegerConstant(_parse_signed_integer(stream))


def _parse_signed_integer(stream: _TokenStream) -> int:
    negative = stream.accept(TokenKind.MINUS) is not None
    tok = stream.expect(TokenKind.INTEGER)
    value = int(tok.lexeme)
    return -value if negative else value


def _parse_predicate_declarations(stream: _TokenStream) -> list[PredicateDeclaration]:
    decls = []
    while stream.at(TokenKind.IDENT):
        tok = stream.next()
        arg_sorts: list[str] = []
        if stream.accept(TokenKind.LPAREN):
            arg_sorts.append(stream.expect(TokenKind.SORT_NAME).lexeme[1:])
            while stream.accept(TokenKind.COMMA):
                arg_sorts.append(stream.expect(TokenKind.SORT_NAME).lexeme[1:])
            stream.expect(TokenKind.RPAREN)
        stream.expect(TokenKind.PERIOD)
        decls.append(PredicateDeclaration(tok.lexeme, tuple(arg_sorts), (tok.line, tok.column)))
    return decls


def _parse_rules(stream: _TokenStream) -> list[Rule]:
    rules = []
    while not stream.at(TokenKind.EOF):
        rules.append(_parse_rule(stream))
    return rules


def _parse_rule(stream: _TokenStream) -> Rule:
    tok = stream.peek()
    head: list[Literal] = []
    if not stream.at(TokenKind.IF):
        head.append(_parse_literal(stream))
        while stream.accept(TokenKind.PIPE):
            head.append(_parse_literal(stream))
    body: list[BodyElement] = []
    if stream.accept(TokenKind.IF):
        body.append(_parse_body_element(stream))
        while stream.accept(TokenKind.COMMA):
            body.append(_parse_body_element(stream))
    stream.expect(TokenKind.PERIOD)
    return Rule(tuple(head), tuple(body), (tok.line, tok.column))


def _parse_body_element(stream: _TokenStream) -> BodyElement:
    if stream.accept(TokenKind.KW_NOT):
        return NotLiteral(_parse_literal(stream))
    # A leading '-' followed by an identifier is classical negation; any other
    # shape is the start of a term, which must continue as a comparison.
    tok = stream.peek()
    if tok.kind is TokenKind.IDENT or (
        tok.kind is TokenKind.MINUS and stream.peek(1).kind is TokenKind.IDENT
    ):
        literal = _parse_literal(stream)
        op = _COMPARISON_OPS.get(stream.peek().kind)
        if op is not None and not literal.negated:
            # 'c = t' compares the constant c; reinterpret the parsed atom
            # as a term on the left of the comparison.
            stream.next()
            right = _parse_term(stream)
            left: Term
            if literal.atom.args:
                left = CommandTerm(literal.atom.name, literal.atom.args)
            else:
                left = SymbolicConstant(literal.atom.name)
            return Comparison(op, left, right, (tok.line, tok.column))
        return literal
    left = _parse_term(stream)
    op_tok = stream.peek()
    op = _COMPARISON_OPS.get(op_tok.kind)
    if op is None:
        raise ParseError(op_tok.line, op_tok.column, "comparison operator", op_tok.describe())
    stream.next()
    right = _parse_term(stream)
    return Comparison(op, left, right, (tok.line, tok.column))


def _parse_literal(stream: _TokenStream) -> Literal:
    tok = stream.peek()
    negated = stream.accept(TokenKind.MINUS) is not None
    name = stream.expect(TokenKind.IDENT)
    args: list[Term] = []
    if stream.accept(TokenKind.LPAREN):
        args.append(_parse_term(stream))
        while stream.accept(TokenKind.COMMA):
            args.append(_parse_term(stream))
        stream.expect(TokenKind.RPAREN)
    return Literal(negated, Atom(name.lexeme, tuple(args)), (tok.line, tok.column))


def _parse_term(stream: _TokenStream) -> Term:
    return _parse_additive(stream)


def _parse_additive(stream: _TokenStream) -> Term:
    left = _parse_multiplicative(stream)
    while True:
        if stream.accept(TokenKind.PLUS):
            left = Arithmetic("+", left, _parse_multiplicative(stream))
        elif stream.accept(TokenKind.MINUS):
            left = Arithmetic("-", left, _parse_multiplicative(stream))
        else:
            return left


def _parse_multiplicative(stream: _TokenStream) -> Term:
    left = _parse_primary(stream)
    while stream.accept(TokenKind.STAR):
        left = Arithmetic("*", left, _parse_primary(stream))
    return left


def _parse_primary(stream: _TokenStream) -> Term:
    tok = stream.peek()
    if tok.kind is TokenKind.INTEGER:
        stream.next()
        return IntegerConstant(int(tok.lexeme))
    if tok.kind is TokenKind.MINUS:
        stream.next()
        num = stream.expect(TokenKind.INTEGER)
        return IntegerConstant(-int(num.lexeme))
    if tok.kind is TokenKind.VARIABLE:
        stream.next()
        return Variable(tok.lexeme)
    if tok.kind is TokenKind.IDENT:
        stream.next()
        if stream.accept(TokenKind.LPAREN):
            args = [_parse_term(stream)]
            while stream.accept(TokenKind.COMMA):
                args.append(_parse_term(stream))
            stream.expect(TokenKind.RPAREN)
            return CommandTerm(tok.lexeme, tuple(args))
        return SymbolicConstant(tok.lexeme)
    if tok.kind is TokenKind.LPAREN:
        stream.next()
        inner = _parse_term(stream)
        stream.expect(TokenKind.RPAREN)
        return inner
    raise ParseError(tok.line, tok.column, "a term", tok.describe())
