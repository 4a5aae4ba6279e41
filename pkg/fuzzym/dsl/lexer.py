from __future__ import annotations

import re
from enum import Enum
from typing import Iterator, List, NamedTuple, Optional

__all__ = ("ParseError", "SourceSpan", "Token", "TokenKind", "tokenize")


class SourceSpan(NamedTuple):
    """1-based position of a lexeme; `length` is 0 at end of input."""

    line: int
    column: int
    length: int

    def __str__(self) -> str:
        return f"line {self.line}, col {self.column}"


class TokenKind(str, Enum):
    NAME = "name"
    NUMBER = "number"
    SYMBOL = "symbol"
    LBRACE = "'{'"
    RBRACE = "'}'"
    LPAREN = "'('"
    RPAREN = "')'"
    COMMA = "','"
    SEMI = "';'"
    COLON = "':'"
    ARROW = "'->'"
    AT = "'@'"
    ATAT = "'@@'"
    EOF = "end of input"


class Token(NamedTuple):
    kind: TokenKind
    text: str
    span: SourceSpan

    def describe(self) -> str:
        """How the token reads in an error message."""
        return "end of input" if self.kind is TokenKind.EOF else repr(self.text)


class ParseError(Exception):
    """
    Lexical or syntactic error at a known position.

    `str(error)` reads `line L, col C: expected X, found Y`, followed by
    `; note` when a note is attached.
    """

    def __init__(self, span: SourceSpan, expected: str, found: str, note: Optional[str] = None) -> None:
        self.span = span
        self.expected = expected
        self.found = found
        self.note = note
        message = f"{span}: expected {expected}, found {found}"
        super().__init__(f"{message}; {note}" if note else message)


_PATTERNS = (
    ("SKIP", r"[ \t\r]+"),
    ("NEWLINE", r"\n"),
    ("COMMENT", r"#[^\n]*"),
    ("ARROW", r"->"),
    ("NUMBER", r"-?\d+(?:\.\d+)?(?:[eE][-+]?\d+)?"),
    ("NAME", r"[^\W\d]\w*'*"),
    ("ATAT", r"@@"),
    ("AT", r"@"),
    ("LBRACE", r"\{"),
    ("RBRACE", r"\}"),
    ("LPAREN", r"\("),
    ("RPAREN", r"\)"),
    ("COMMA", r","),
    ("SEMI", r";"),
    ("COLON", r":"),
    ("SYMBOL", r"[!$%&*+./<=>?^|~\-]"),
    ("ERROR", r"."),
)
_TOKEN_RE = re.compile("|".join(f"(?P<{name}>{pattern})" for name, pattern in _PATTERNS))


def _scan(text: str) -> Iterator[Token]:
    line, line_start = 1, 0
    for match in _TOKEN_RE.finditer(text):
        group = match.lastgroup
        lexeme = match.group()
        span = SourceSpan(line, match.start() - line_start + 1, len(lexeme))
        if group == "NEWLINE":
            line, line_start = line + 1, match.end()
        elif group == "ERROR":
            raise ParseError(span, "a token", repr(lexeme), "unexpected character")
        elif group not in ("SKIP", "COMMENT"):
            yield Token(TokenKind[group], lexeme, span)  # type: ignore[misc]
    yield Token(TokenKind.EOF, "", SourceSpan(line, len(text) - line_start + 1, 0))


def tokenize(text: str) -> List[Token]:
    """
    Split description text into tokens, ending with an EOF token.

    `#` starts a comment running to the end of the line.

    ```python
    [t.kind.name for t in tokenize("a:2@0.5")]
    # ['NAME', 'COLON', 'NUMBER', 'AT', 'NUMBER', 'EOF']
    ```

    Raises:
        ParseError: On a character that starts no token
    """
    return list(_scan(text))
