"""
    Recursive-descent parser for the model language.

    term    ::= disj
    disj    ::= conj { "|" conj }
    conj    ::= primary { "&" primary }
    primary ::= atom | "(" term ")" | inhibit | choose
    inhibit ::= "inhibit" "(" term "," term ")"
    choose  ::= "choose" [ atom ] "{" branch { "," branch } "}"
    branch  ::= [ atom ":" ] term
    atom    ::= IDENT | STRING

A chain `a & b & c` is one n-ary AND; a parenthesised operand stays a node of
its own, so `(a & b) & c` nests.
"""
import logging

from core.exceptions import DslError, EmptyInput, TermSyntaxError, UnbalancedParen
from dsl.lexer import Token, TokenType, tokenize
from models.term import And, Branch, Choose, Inhibit, Leaf, Or, Term

logger = logging.getLogger(__name__)

PRIMARY_START = (
    TokenType.IDENT,
    TokenType.STRING,
    TokenType.LPAREN,
    TokenType.INHIBIT,
    TokenType.CHOOSE,
)


class Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0
        self.depth = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def peek(self, offset: int = 1) -> Token:
        index = min(self.pos + offset, len(self.tokens) - 1)
        return self.tokens[index]

    def advance(self) -> Token:
        token = self.current
        if token.type is not TokenType.EOF:
            self.pos += 1
        return token

    def fail(self, *expected: TokenType) -> DslError:
        token = self.current
        names = [t.value for t in expected]
        if TokenType.RPAREN in expected and token.type is TokenType.EOF:
            return UnbalancedParen("missing ')'", token.line, token.column)
        if token.type is TokenType.RPAREN and self.depth == 0:
            return UnbalancedParen("unmatched ')'", token.line, token.column)
        return TermSyntaxError(token.describe(), names, token.line, token.column)

    def expect(self, *expected: TokenType) -> Token:
        if self.current.type in expected:
            return self.advance()
        raise self.fail(*expected)

    # --- Grammar rules ---
    def parse(self) -> Term:
        if self.current.type is TokenType.EOF:
            raise EmptyInput()
        term = self.parse_term()
        if self.current.type is not TokenType.EOF:
            raise self.fail(TokenType.AMP, TokenType.BAR, TokenType.EOF)
        return term

    def parse_term(self) -> Term:
        operands = [self.parse_conj()]
        while self.current.type is TokenType.BAR:
            self.advance()
            operands.append(self.parse_conj())
        return operands[0] if len(operands) == 1 else Or(operands=tuple(operands))

    def parse_conj(self) -> Term:
        operands = [self.parse_primary()]
        while self.current.type is TokenType.AMP:
            self.advance()
            operands.append(self.parse_primary())
        return operands[0] if len(operands) == 1 else And(operands=tuple(operands))

    def parse_primary(self) -> Term:
        token = self.current
        if token.type in (TokenType.IDENT, TokenType.STRING):
            self.advance()
            return Leaf(label=token.value)
        if token.type is TokenType.LPAREN:
            self.advance()
            self.depth += 1
            term = self.parse_term()
            self.expect(TokenType.RPAREN)
            self.depth -= 1
            return term
        if token.type is TokenType.INHIBIT:
            return self.parse_inhibit()
        if token.type is TokenType.CHOOSE:
            return self.parse_choose()
        raise self.fail(*PRIMARY_START)

    def parse_inhibit(self) -> Inhibit:
        self.expect(TokenType.INHIBIT)
        self.expect(TokenType.LPAREN)
        self.depth += 1
        cause = self.parse_term()
        self.expect(TokenType.COMMA)
        prevention = self.parse_term()
        self.expect(TokenType.RPAREN)
        self.depth -= 1
        return Inhibit(cause=cause, prevention=prevention)

    def parse_choose(self) -> Choose:
        self.expect(TokenType.CHOOSE)
        label = None
        if self.current.type in (TokenType.IDENT, TokenType.STRING):
            label = self.advance().value
        self.expect(TokenType.LBRACE)
        branches = [self.parse_branch(1)]
        while self.current.type is TokenType.COMMA:
            self.advance()
            branches.append(self.parse_branch(len(branches) + 1))
        self.expect(TokenType.RBRACE)
        if len(branches) < 2:
            token = self.tokens[self.pos - 1]
            raise TermSyntaxError(token.describe(), [TokenType.COMMA.value], token.line, token.column)
        return Choose(label=label, branches=tuple(branches))

    def parse_branch(self, position: int) -> Branch:
        tag = str(position)
        if (
            self.current.type in (TokenType.IDENT, TokenType.STRING)
            and self.peek().type is TokenType.COLON
        ):
            tag = self.advance().value
            self.advance()
        return Branch(tag=tag, term=self.parse_term())


def parse(src: str) -> Term:
    """Parse model-language source text into a term."""
    term = Parser(tokenize(src)).parse()
    logger.debug("Parsed term of kind %s", term.node)
    return term
