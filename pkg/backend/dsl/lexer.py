import re
from dataclasses import dataclass
from enum import Enum

from core.exceptions import DslError


class TokenType(Enum):
    AMP = "'&'"
    BAR = "'|'"
    LPAREN = "'('"
    RPAREN = "')'"
    LBRACE = "'{'"
    RBRACE = "'}'"
    COMMA = "','"
    COLON = "':'"
    IDENT = "identifier"
    STRING = "string"
    INHIBIT = "'inhibit'"
    CHOOSE = "'choose'"
    EOF = "end of input"


KEYWORDS = {"inhibit": TokenType.INHIBIT, "choose": TokenType.CHOOSE}

PUNCTUATION = {
    "&": TokenType.AMP,
    "|": TokenType.BAR,
    "(": TokenType.LPAREN,
    ")": TokenType.RPAREN,
    "{": TokenType.LBRACE,
    "}": TokenType.RBRACE,
    ",": TokenType.COMMA,
    ":": TokenType.COLON,
}

IDENT_RE = re.compile(r"[A-Za-z0-9_]+")


@dataclass(frozen=True)
class Token:
    type: TokenType
    value: str
    line: int
    column: int

    def describe(self) -> str:
        if self.type is TokenType.EOF:
            return "end of input"
        return f"'{self.value}'"


def tokenize(src: str) -> list[Token]:
    """
        Split source text into tokens; always ends with an EOF token.

    Whitespace and `#` comments are skipped. Strings are double-quoted with
    backslash escapes for `"` and `\\`.
    """
    tokens: list[Token] = []
    pos, line, column = 0, 1, 1
    length = len(src)

    while pos < length:
        ch = src[pos]

        if ch == "\n":
            pos, line, column = pos + 1, line + 1, 1
            continue
        if ch.isspace():
            pos, column = pos + 1, column + 1
            continue
        if ch == "#":
            while pos < length and src[pos] != "\n":
                pos += 1
            continue

        if ch in PUNCTUATION:
            tokens.append(Token(PUNCTUATION[ch], ch, line, column))
            pos, column = pos + 1, column + 1
            continue

        if ch == '"':
            start_line, start_column = line, column
            pos, column = pos + 1, column + 1
            chars: list[str] = []
            while True:
                if pos >= length or src[pos] == "\n":
                    raise DslError("unterminated string", start_line, start_column)
                current = src[pos]
                if current == "\\" and pos + 1 < length and src[pos + 1] in '"\\':
                    chars.append(src[pos + 1])
                    pos, column = pos + 2, column + 2
                    continue
                if current == '"':
                    pos, column = pos + 1, column + 1
                    break
                chars.append(current)
                pos, column = pos + 1, column + 1
            value = "".join(chars)
            if not value:
                raise DslError("empty label", start_line, start_column)
            tokens.append(Token(TokenType.STRING, value, start_line, start_column))
            continue

        match = IDENT_RE.match(src, pos)
        if match:
            word = match.group(0)
            tokens.append(Token(KEYWORDS.get(word, TokenType.IDENT), word, line, column))
            pos, column = match.end(), column + len(word)
            continue

        raise DslError(f"unexpected character {ch!r}", line, column)

    tokens.append(Token(TokenType.EOF, "", line, column))
    return tokens
